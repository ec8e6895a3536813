#include "isacsim/config.hpp"

#include "isacsim/units.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace isacsim {

namespace {

struct Quantity {
    double value = 0.0;
    std::string unit;
};

Quantity split_quantity(const std::string& text) {
    std::istringstream in(text);
    Quantity q;
    if (!(in >> q.value)) throw std::runtime_error("config: expected a number in '" + text + "'");
    in >> q.unit;
    std::string extra;
    if (in >> extra) throw std::runtime_error("config: trailing tokens in '" + text + "'");
    return q;
}

double unit_multiplier(const std::string& unit) {
    static const std::map<std::string, double> table = {
        {"", 1.0},       {"Hz", 1.0},      {"kHz", 1.0e3},  {"MHz", 1.0e6},
        {"GHz", 1.0e9},  {"s", 1.0},       {"ms", 1.0e-3},  {"us", 1.0e-6},
        {"ns", 1.0e-9},  {"W", 1.0},       {"mW", 1.0e-3},  {"kW", 1.0e3},
        {"Cyc", 1.0},    {"MCyc", 1.0e6},  {"GCyc", 1.0e9}, {"kmh", 1.0},
        {"MB", 1.0},     {"bits", 1.0},    {"deg", units::deg_to_rad(1.0)},
        {"rad", 1.0},    {"m", 1.0},
    };
    const auto it = table.find(unit);
    if (it == table.end()) throw std::runtime_error("config: unknown unit '" + unit + "'");
    return it->second;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<int> parse_hidden(const std::string& text) {
    std::vector<int> widths;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, 'x')) {
        widths.push_back(std::stoi(token));
        if (widths.back() <= 0) throw std::runtime_error("config: nonpositive hidden width");
    }
    if (widths.empty()) throw std::runtime_error("config: empty hidden spec");
    return widths;
}

} // namespace

double parse_quantity(const std::string& text) {
    const Quantity q = split_quantity(trim(text));
    return q.value * unit_multiplier(q.unit);
}

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;

    using Setter = std::function<void(SimConfig&, const std::string&)>;
    auto qty = [](auto member_setter) {
        return Setter([member_setter](SimConfig& c, const std::string& v) {
            member_setter(c, parse_quantity(v));
        });
    };

    const std::map<std::string, Setter> setters = {
        {"scenario.users", qty([](SimConfig& c, double v) { c.users = static_cast<int>(v); })},
        {"scenario.episodes", qty([](SimConfig& c, double v) { c.episodes = static_cast<int>(v); })},
        {"scenario.slots_per_episode",
         qty([](SimConfig& c, double v) { c.slots_per_episode = static_cast<int>(v); })},
        {"scenario.slot_duration", qty([](SimConfig& c, double v) { c.slot_duration_s = v; })},
        {"scenario.bandwidth_total", qty([](SimConfig& c, double v) { c.bandwidth_total_hz = v; })},
        {"scenario.power_total", qty([](SimConfig& c, double v) { c.power_total_w = v; })},
        {"scenario.compute_total", qty([](SimConfig& c, double v) { c.compute_total_cps = v; })},
        {"scenario.carrier_a", qty([](SimConfig& c, double v) { c.carrier_hz[0] = v; })},
        {"scenario.carrier_b", qty([](SimConfig& c, double v) { c.carrier_hz[1] = v; })},
        {"scenario.bs_a_x", qty([](SimConfig& c, double v) { c.bs_a_m[0] = v; })},
        {"scenario.bs_a_y", qty([](SimConfig& c, double v) { c.bs_a_m[1] = v; })},
        {"scenario.bs_b_x", qty([](SimConfig& c, double v) { c.bs_b_m[0] = v; })},
        {"scenario.bs_b_y", qty([](SimConfig& c, double v) { c.bs_b_m[1] = v; })},
        {"scenario.area_half_extent",
         qty([](SimConfig& c, double v) { c.area_half_extent_m = v; })},
        {"scenario.velocity_min", qty([](SimConfig& c, double v) { c.velocity_min_kmh = v; })},
        {"scenario.velocity_max", qty([](SimConfig& c, double v) { c.velocity_max_kmh = v; })},
        {"scenario.velocity_cap", qty([](SimConfig& c, double v) { c.velocity_cap_kmh = v; })},
        {"scenario.noise_psd",
         Setter([](SimConfig& c, const std::string& v) {
             const Quantity q = split_quantity(trim(v));
             if (q.unit == "dBmHz") {
                 c.noise_psd_w_per_hz = units::dbm_per_hz_to_w_per_hz(q.value);
             } else if (q.unit.empty() || q.unit == "WHz") {
                 c.noise_psd_w_per_hz = q.value;
             } else {
                 throw std::runtime_error("config: noise_psd expects dBmHz or WHz");
             }
         })},
        {"scenario.file_size_min", qty([](SimConfig& c, double v) { c.file_size_min_mb = v; })},
        {"scenario.file_size_max", qty([](SimConfig& c, double v) { c.file_size_max_mb = v; })},
        {"scenario.compute_density",
         qty([](SimConfig& c, double v) { c.compute_density_cycles_per_mb = v; })},
        {"scenario.quality_shape", qty([](SimConfig& c, double v) { c.quality_shape = v; })},
        {"scenario.principle_weight_latency",
         qty([](SimConfig& c, double v) { c.principle_weights[0] = v; })},
        {"scenario.principle_weight_quality",
         qty([](SimConfig& c, double v) { c.principle_weights[1] = v; })},
        {"scenario.principle_weight_combined",
         qty([](SimConfig& c, double v) { c.principle_weights[2] = v; })},
        {"scenario.swipe_rate_min", qty([](SimConfig& c, double v) { c.swipe_rate_min_hz = v; })},
        {"scenario.swipe_rate_max", qty([](SimConfig& c, double v) { c.swipe_rate_max_hz = v; })},
        {"scenario.behavior_smoothing",
         qty([](SimConfig& c, double v) { c.behavior_smoothing = v; })},

        {"sensing.pulse_width", qty([](SimConfig& c, double v) { c.waveform.pulse_width_s = v; })},
        {"sensing.effective_time",
         qty([](SimConfig& c, double v) { c.waveform.effective_time_s = v; })},
        {"sensing.beamwidth", qty([](SimConfig& c, double v) { c.waveform.beamwidth_rad = v; })},
        {"sensing.alpha1", qty([](SimConfig& c, double v) { c.thresholds.alpha[0] = v; })},
        {"sensing.alpha2", qty([](SimConfig& c, double v) { c.thresholds.alpha[1] = v; })},
        {"sensing.alpha3", qty([](SimConfig& c, double v) { c.thresholds.alpha[2] = v; })},
        {"sensing.lambda1", qty([](SimConfig& c, double v) { c.thresholds.lambda[0] = v; })},
        {"sensing.lambda2", qty([](SimConfig& c, double v) { c.thresholds.lambda[1] = v; })},
        {"sensing.lambda3", qty([](SimConfig& c, double v) { c.thresholds.lambda[2] = v; })},
        {"sensing.rcs", qty([](SimConfig& c, double v) { c.rcs_m2 = v; })},
        {"sensing.array_gain", qty([](SimConfig& c, double v) { c.array_gain = v; })},
        {"sensing.tx_beam_gain", qty([](SimConfig& c, double v) { c.tx_beam_gain = v; })},
        {"sensing.rx_beam_gain", qty([](SimConfig& c, double v) { c.rx_beam_gain = v; })},
        {"sensing.rx_antennas",
         qty([](SimConfig& c, double v) { c.rx_antennas = static_cast<int>(v); })},

        {"collection.base_rate_behavior",
         qty([](SimConfig& c, double v) { c.da.collection.base_rate_hz[0] = v; })},
        {"collection.base_rate_performance",
         qty([](SimConfig& c, double v) { c.da.collection.base_rate_hz[1] = v; })},
        {"collection.base_rate_environment",
         qty([](SimConfig& c, double v) { c.da.collection.base_rate_hz[2] = v; })},
        {"collection.nu1", qty([](SimConfig& c, double v) { c.da.collection.attenuation[0] = v; })},
        {"collection.nu2", qty([](SimConfig& c, double v) { c.da.collection.attenuation[1] = v; })},
        {"collection.nu3", qty([](SimConfig& c, double v) { c.da.collection.attenuation[2] = v; })},
        {"collection.overhead_bits",
         qty([](SimConfig& c, double v) { c.da.collection.overhead_bits = v; })},
        {"collection.window_slots",
         qty([](SimConfig& c, double v) { c.da.window_slots = static_cast<int>(v); })},
        {"collection.min_fit_windows",
         qty([](SimConfig& c, double v) { c.da.min_fit_windows = static_cast<int>(v); })},
        {"collection.max_history_windows",
         qty([](SimConfig& c, double v) { c.da.max_history_windows = static_cast<int>(v); })},
        {"collection.factor_threshold",
         qty([](SimConfig& c, double v) { c.da.factor_threshold = v; })},
        {"collection.update_error_threshold",
         qty([](SimConfig& c, double v) { c.da.update_error_threshold = v; })},
        {"collection.mos_floor", qty([](SimConfig& c, double v) { c.da.mos_floor = v; })},
        {"collection.trigger_window",
         qty([](SimConfig& c, double v) { c.da.trigger_window = static_cast<int>(v); })},
        {"collection.arima_p",
         qty([](SimConfig& c, double v) { c.da.arima_orders.ar = static_cast<int>(v); })},
        {"collection.arima_w",
         qty([](SimConfig& c, double v) { c.da.arima_orders.diff = static_cast<int>(v); })},
        {"collection.arima_q",
         qty([](SimConfig& c, double v) { c.da.arima_orders.ma = static_cast<int>(v); })},
        {"collection.arima_min_series",
         qty([](SimConfig& c, double v) { c.da.arima_min_series = static_cast<int>(v); })},
        {"collection.arima_heldout",
         qty([](SimConfig& c, double v) { c.da.arima_heldout = static_cast<int>(v); })},
        {"collection.spectral_eff",
         qty([](SimConfig& c, double v) { c.collection_spectral_eff = v; })},

        {"rl.hidden",
         Setter([](SimConfig& c, const std::string& v) { c.agent.hidden = parse_hidden(trim(v)); })},
        {"rl.discount", qty([](SimConfig& c, double v) { c.agent.discount = v; })},
        {"rl.learning_rate", qty([](SimConfig& c, double v) { c.agent.learning_rate = v; })},
        {"rl.epsilon_start", qty([](SimConfig& c, double v) { c.agent.epsilon_start = v; })},
        {"rl.epsilon_final", qty([](SimConfig& c, double v) { c.agent.epsilon_final = v; })},
        {"rl.target_sync_period",
         qty([](SimConfig& c, double v) { c.agent.target_sync_period = static_cast<int>(v); })},
        {"rl.replay_capacity",
         qty([](SimConfig& c, double v) { c.agent.replay_capacity = static_cast<std::size_t>(v); })},
        {"rl.batch_size",
         qty([](SimConfig& c, double v) { c.agent.batch_size = static_cast<int>(v); })},
        {"rl.priority_exponent",
         qty([](SimConfig& c, double v) { c.agent.priority_exponent = v; })},
        {"rl.priority_floor", qty([](SimConfig& c, double v) { c.agent.priority_floor = v; })},
        {"rl.taylor_correction",
         qty([](SimConfig& c, double v) { c.agent.taylor_correction = v != 0.0; })},
        {"rl.momentum", qty([](SimConfig& c, double v) { c.agent.momentum = v != 0.0; })},
        {"rl.momentum_beta", qty([](SimConfig& c, double v) { c.agent.momentum_beta = v; })},
        {"rl.state_sensing_gain_max",
         qty([](SimConfig& c, double v) { c.state_ranges.sensing_gain_max = v; })},
        {"rl.state_comm_gain_max",
         qty([](SimConfig& c, double v) { c.state_ranges.comm_gain_max = v; })},
        {"rl.state_omega_max", qty([](SimConfig& c, double v) { c.state_ranges.omega_max = v; })},

        {"solver.tol_outer", qty([](SimConfig& c, double v) { c.solver.tol_outer = v; })},
        {"solver.max_outer",
         qty([](SimConfig& c, double v) { c.solver.max_outer = static_cast<int>(v); })},
        {"solver.mccormick",
         qty([](SimConfig& c, double v) { c.solver.mccormick_path = v != 0.0; })},
        {"solver.mccormick_box_spread",
         qty([](SimConfig& c, double v) { c.solver.mccormick_box_spread = v; })},
        {"solver.kkt_tolerance",
         qty([](SimConfig& c, double v) { c.solver.inner.kkt_tolerance = v; })},
        {"solver.max_inner_iterations",
         qty([](SimConfig& c, double v) { c.solver.inner.max_iterations = static_cast<int>(v); })},
        {"solver.interior_margin",
         qty([](SimConfig& c, double v) { c.solver.interior_margin = v; })},

        {"run.eval_episodes",
         qty([](SimConfig& c, double v) { c.eval_episodes = static_cast<int>(v); })},
        {"run.sweep_seeds",
         qty([](SimConfig& c, double v) { c.sweep_seeds = static_cast<int>(v); })},
        {"run.sweep_retrain", qty([](SimConfig& c, double v) { c.sweep_retrain = v != 0.0; })},
        {"run.greedy_quanta",
         qty([](SimConfig& c, double v) { c.greedy_quanta = static_cast<int>(v); })},
        {"run.checkpoint_interval",
         qty([](SimConfig& c, double v) { c.checkpoint_interval_episodes = static_cast<int>(v); })},
        {"run.seed",
         qty([](SimConfig& c, double v) { c.seed = static_cast<std::uint64_t>(v); })},
    };

    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = section + "." + trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
        try {
            it->second(cfg, value);
        } catch (const std::exception& e) {
            throw std::runtime_error("config: line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace isacsim
