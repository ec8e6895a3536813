#include "isacsim/config.hpp"
#include "isacsim/da.hpp"
#include "isacsim/simulate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace isacsim;

namespace {

SimConfig load_or_default(const std::string& path, std::uint64_t seed_override, bool has_seed) {
    SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
    if (has_seed) cfg.seed = seed_override;
    return cfg;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + (dir / name).string());
    return out;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) values.push_back(std::stod(token));
    }
    if (values.empty()) throw std::runtime_error("--values: empty list");
    return values;
}

void write_summary(std::ostream& out, const sim::RunMetrics& metrics) {
    out << "mean_qoe=" << metrics.mean_qoe() << '\n'
        << "slots=" << metrics.slots.size() << '\n'
        << "conservation_violations=" << metrics.conservation_violations << '\n'
        << "solver_failures=" << metrics.solver_failures << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isacsim: experience-centric ISAC resource management simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string scheme_name = "proposed";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
            has_seed = true;
        });
        cmd->add_option("--scheme", scheme_name,
                        "allocation scheme: proposed | round-robin | greedy");
    };

    auto* cmd_train = app.add_subcommand("train", "train the proposed scheme");
    add_common(cmd_train);
    std::string checkpoint_in;
    cmd_train->add_option("--checkpoint", checkpoint_in, "warm-start agent checkpoint");

    auto* cmd_eval = app.add_subcommand("eval", "evaluate a scheme with a frozen policy");
    add_common(cmd_eval);
    std::string eval_checkpoint;
    cmd_eval->add_option("--checkpoint", eval_checkpoint, "trained agent checkpoint");
    int eval_episodes = 0;
    cmd_eval->add_option("--episodes", eval_episodes, "evaluation episodes (default from config)");

    auto* cmd_sweep = app.add_subcommand("sweep", "mean QoE per axis value per scheme");
    add_common(cmd_sweep);
    std::string axis_str;
    std::string values_str;
    cmd_sweep->add_option("--axis", axis_str,
                          "users | bandwidth | compute | alpha1 | alpha2 | alpha3 | nu1 | nu2 | nu3")
        ->required();
    cmd_sweep->add_option("--values", values_str, "comma-separated axis values")->required();

    auto* cmd_gen = app.add_subcommand("gen-scenario", "emit the generated scenario as CSV");
    add_common(cmd_gen);
    int gen_episode = 0;
    cmd_gen->add_option("--episode", gen_episode, "episode index to emit");

    CLI11_PARSE(app, argc, argv);

    try {
        const SimConfig cfg = load_or_default(config_path, seed, has_seed);
        const fs::path dir(out_dir);

        if (cmd_train->parsed()) {
            sim::Runner runner(cfg, cfg.seed);
            if (!checkpoint_in.empty()) {
                std::ifstream in(checkpoint_in);
                if (!in) throw std::runtime_error("cannot open " + checkpoint_in);
                runner.agent().load(in);
            }
            const sim::RunMetrics metrics = runner.train();
            {
                auto out = open_out(dir, "reward_curve.csv");
                sim::write_reward_curve_csv(out, metrics);
            }
            {
                auto out = open_out(dir, "qoe_per_slot.csv");
                sim::write_qoe_per_slot_csv(out, metrics, sim::Scheme::Proposed);
            }
            {
                auto out = open_out(dir, "checkpoint.txt");
                runner.agent().save(out);
            }
            {
                auto out = open_out(dir, "da_history.csv");
                const auto histories = runner.da_histories();
                agent::save_da_history(out, histories);
            }
            {
                auto out = open_out(dir, "summary.txt");
                write_summary(out, metrics);
            }
            std::cout << "train: mean reward " << metrics.mean_qoe() << ", outputs in "
                      << dir.string() << '\n';
            return 0;
        }

        if (cmd_eval->parsed()) {
            const sim::Scheme scheme = sim::parse_scheme(scheme_name);
            sim::Runner runner(cfg, cfg.seed);
            if (!eval_checkpoint.empty()) {
                std::ifstream in(eval_checkpoint);
                if (!in) throw std::runtime_error("cannot open " + eval_checkpoint);
                runner.agent().load(in);
            }
            const int episodes = eval_episodes > 0 ? eval_episodes : cfg.eval_episodes;
            const sim::RunMetrics metrics = runner.evaluate(scheme, episodes);
            {
                auto out = open_out(dir, "qoe_per_slot.csv");
                sim::write_qoe_per_slot_csv(out, metrics, scheme);
            }
            {
                auto out = open_out(dir, "qoe_cdf.csv");
                sim::write_qoe_cdf_csv(out, {{scheme, &metrics}});
            }
            {
                auto out = open_out(dir, "summary.txt");
                write_summary(out, metrics);
            }
            std::cout << "eval[" << sim::scheme_name(scheme) << "]: mean QoE "
                      << metrics.mean_qoe() << ", outputs in " << dir.string() << '\n';
            return 0;
        }

        if (cmd_sweep->parsed()) {
            const sim::SweepAxis axis = sim::parse_axis(axis_str);
            const std::vector<double> values = parse_values(values_str);
            const std::vector<sim::Scheme> schemes{
                sim::Scheme::Proposed, sim::Scheme::RoundRobin, sim::Scheme::Greedy};
            const auto rows = sim::run_sweep(cfg, axis, values, schemes);
            auto out = open_out(dir, "sweep.csv");
            sim::write_sweep_csv(out, rows);
            std::cout << "sweep[" << axis_str << "]: " << rows.size() << " rows in "
                      << (dir / "sweep.csv").string() << '\n';
            return 0;
        }

        if (cmd_gen->parsed()) {
            const auto users = scenario::generate_users(
                cfg, Rng(Rng::splitmix(cfg.seed ^ 0xA11CE5ULL)));
            const auto episode = scenario::generate_episode(cfg, users, cfg.seed, gen_episode);
            {
                auto out = open_out(dir, "scenario_users.csv");
                scenario::write_users_csv(out, users);
            }
            {
                auto out = open_out(dir, "scenario_slots.csv");
                scenario::write_slots_csv(out, episode);
            }
            std::cout << "gen-scenario: " << users.size() << " users, "
                      << episode.slots.size() << " slots in " << dir.string() << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
