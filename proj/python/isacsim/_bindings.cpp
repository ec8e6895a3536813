#include "isacsim/arima.hpp"
#include "isacsim/config.hpp"
#include "isacsim/da.hpp"
#include "isacsim/dcc.hpp"
#include "isacsim/qoe.hpp"
#include "isacsim/scenario.hpp"
#include "isacsim/sca.hpp"
#include "isacsim/sensing.hpp"
#include "isacsim/simulate.hpp"
#include "isacsim/units.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

namespace py = pybind11;
using namespace isacsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Experience-centric ISAC resource management simulator";

    // --- sensing -----------------------------------------------------------
    py::class_<sensing::WaveformParams>(m, "WaveformParams")
        .def(py::init<>())
        .def_readwrite("pulse_width_s", &sensing::WaveformParams::pulse_width_s)
        .def_readwrite("effective_time_s", &sensing::WaveformParams::effective_time_s)
        .def_readwrite("beamwidth_rad", &sensing::WaveformParams::beamwidth_rad);

    py::class_<sensing::SensingChannel>(m, "SensingChannel")
        .def(py::init<>())
        .def_readwrite("distance_m", &sensing::SensingChannel::distance_m)
        .def_readwrite("wavelength_m", &sensing::SensingChannel::wavelength_m)
        .def_readwrite("rcs_m2", &sensing::SensingChannel::rcs_m2)
        .def_readwrite("array_gain", &sensing::SensingChannel::array_gain)
        .def_readwrite("tx_beam_gain", &sensing::SensingChannel::tx_beam_gain)
        .def_readwrite("rx_beam_gain", &sensing::SensingChannel::rx_beam_gain)
        .def_readwrite("rx_antennas", &sensing::SensingChannel::rx_antennas)
        .def_readwrite("noise_power_w", &sensing::SensingChannel::noise_power_w)
        .def_readwrite("gain", &sensing::SensingChannel::gain);

    py::class_<sensing::CrbThresholds>(m, "CrbThresholds")
        .def(py::init<>())
        .def_readwrite("alpha", &sensing::CrbThresholds::alpha)
        .def_readwrite("lambda_", &sensing::CrbThresholds::lambda);

    py::class_<sensing::FeasibilityMinima>(m, "FeasibilityMinima")
        .def_readonly("power_min_w", &sensing::FeasibilityMinima::power_min_w)
        .def_readonly("power_bandwidth_min", &sensing::FeasibilityMinima::power_bandwidth_min);

    m.def("effective_bandwidth_sq", &sensing::effective_bandwidth_sq, py::arg("bandwidth_hz"),
          py::arg("pulse_width_s"));
    m.def("sensing_channel_gain", &sensing::channel_gain, py::arg("channel"));
    m.def("crb_distance", &sensing::crb_distance, py::arg("power_w"), py::arg("gain"),
          py::arg("eff_bandwidth_sq"), py::arg("lambda1"));
    m.def("crb_velocity", &sensing::crb_velocity, py::arg("power_w"), py::arg("gain"),
          py::arg("effective_time_s"), py::arg("lambda2"));
    m.def("crb_azimuth", &sensing::crb_azimuth, py::arg("power_w"), py::arg("gain"),
          py::arg("beamwidth_rad"), py::arg("lambda3"));
    m.def("sensing_feasibility", &sensing::feasibility_minima, py::arg("channel"),
          py::arg("thresholds"), py::arg("waveform"));

    // --- qoe -----------------------------------------------------------------
    py::enum_<qoe::QosStructure>(m, "QosStructure")
        .value("Linear", qoe::QosStructure::Linear)
        .value("Ratio", qoe::QosStructure::Ratio);

    py::class_<qoe::QoeModelSpec>(m, "QoeModelSpec")
        .def(py::init<>())
        .def_readwrite("structure", &qoe::QoeModelSpec::structure)
        .def_readwrite("omega", &qoe::QoeModelSpec::omega)
        .def_readwrite("quality_shape", &qoe::QoeModelSpec::quality_shape);

    py::class_<qoe::UserContext>(m, "UserContext")
        .def(py::init<>())
        .def_readwrite("behavior_dynamics", &qoe::UserContext::behavior_dynamics)
        .def_readwrite("env_complexity", &qoe::UserContext::env_complexity)
        .def_readwrite("behavior_max", &qoe::UserContext::behavior_max)
        .def_readwrite("env_max", &qoe::UserContext::env_max);

    py::class_<qoe::ServiceDemand>(m, "ServiceDemand")
        .def(py::init<>())
        .def_readwrite("file_size_bits", &qoe::ServiceDemand::file_size_bits)
        .def_readwrite("cycles_per_bit", &qoe::ServiceDemand::cycles_per_bit);

    py::class_<qoe::Allocation>(m, "Allocation")
        .def(py::init<>())
        .def(py::init([](double b, double p, double c) {
                 return qoe::Allocation{b, p, c};
             }),
             py::arg("bandwidth_hz"), py::arg("power_w"), py::arg("compute_cps"))
        .def_readwrite("bandwidth_hz", &qoe::Allocation::bandwidth_hz)
        .def_readwrite("power_w", &qoe::Allocation::power_w)
        .def_readwrite("compute_cps", &qoe::Allocation::compute_cps);

    m.def("transmission_rate", &qoe::transmission_rate, py::arg("bandwidth_hz"),
          py::arg("power_w"), py::arg("comm_gain"), py::arg("noise_psd"));
    m.def("content_quality", &qoe::content_quality, py::arg("file_size_mb"),
          py::arg("quality_shape"));
    m.def("service_latency", &qoe::service_latency, py::arg("demand"), py::arg("compute_cps"),
          py::arg("rate_bps"));
    m.def("impact", &qoe::impact, py::arg("context"));
    m.def("qos", &qoe::qos, py::arg("spec"), py::arg("demand"), py::arg("compute_cps"),
          py::arg("rate_bps"));
    m.def("qoe_value", &qoe::qoe_value, py::arg("spec"), py::arg("context"), py::arg("demand"),
          py::arg("allocation"), py::arg("comm_gain"), py::arg("noise_psd"));

    // --- digital agent -------------------------------------------------------
    m.def(
        "distance_correlation",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return agent::distance_correlation(x, y);
        },
        py::arg("x"), py::arg("y"));

    py::class_<agent::ArimaOrders>(m, "ArimaOrders")
        .def(py::init<>())
        .def(py::init([](int p, int w, int q) {
                 return agent::ArimaOrders{p, w, q};
             }),
             py::arg("ar"), py::arg("diff"), py::arg("ma"))
        .def_readwrite("ar", &agent::ArimaOrders::ar)
        .def_readwrite("diff", &agent::ArimaOrders::diff)
        .def_readwrite("ma", &agent::ArimaOrders::ma);

    py::class_<agent::ArimaModel>(m, "ArimaModel")
        .def_static(
            "fit",
            [](const std::vector<double>& series, const agent::ArimaOrders& orders) {
                return agent::ArimaModel::fit(series, orders);
            },
            py::arg("series"), py::arg("orders"))
        .def(
            "predict_next",
            [](const agent::ArimaModel& model, const std::vector<double>& series) {
                return model.predict_next(series);
            },
            py::arg("series"))
        .def_property_readonly("ar_coefficients", &agent::ArimaModel::ar_coefficients)
        .def_property_readonly("ma_coefficients", &agent::ArimaModel::ma_coefficients);

    m.def(
        "prediction_accuracy",
        [](const agent::ArimaModel& model, const std::vector<double>& series, int heldout) {
            return agent::prediction_accuracy(model, series, heldout);
        },
        py::arg("model"), py::arg("series"), py::arg("heldout"));

    // --- sca -------------------------------------------------------------------
    py::class_<sca::GroupBudget>(m, "GroupBudget")
        .def(py::init<>())
        .def(py::init([](double b, double p, double c) {
                 return sca::GroupBudget{b, p, c};
             }),
             py::arg("bandwidth_hz"), py::arg("power_w"), py::arg("compute_cps"))
        .def_readwrite("bandwidth_hz", &sca::GroupBudget::bandwidth_hz)
        .def_readwrite("power_w", &sca::GroupBudget::power_w)
        .def_readwrite("compute_cps", &sca::GroupBudget::compute_cps);

    py::class_<sca::UserInstance>(m, "UserInstance")
        .def(py::init<>())
        .def_readwrite("model", &sca::UserInstance::model)
        .def_readwrite("context", &sca::UserInstance::context)
        .def_readwrite("demand", &sca::UserInstance::demand)
        .def_readwrite("comm_gain", &sca::UserInstance::comm_gain)
        .def_readwrite("noise_psd", &sca::UserInstance::noise_psd)
        .def_readwrite("minima", &sca::UserInstance::minima);

    py::class_<sca::SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("tol_outer", &sca::SolverConfig::tol_outer)
        .def_readwrite("max_outer", &sca::SolverConfig::max_outer)
        .def_readwrite("mccormick_path", &sca::SolverConfig::mccormick_path);

    py::class_<sca::SolveResult>(m, "SolveResult")
        .def_readonly("allocations", &sca::SolveResult::allocations)
        .def_readonly("objective", &sca::SolveResult::objective)
        .def_readonly("outer_iterations", &sca::SolveResult::outer_iterations)
        .def_readonly("kkt_residual", &sca::SolveResult::kkt_residual)
        .def_readonly("feasible", &sca::SolveResult::feasible)
        .def_readonly("degraded", &sca::SolveResult::degraded)
        .def_readonly("objective_trace", &sca::SolveResult::objective_trace);

    m.def(
        "solve_group",
        [](const sca::GroupBudget& budget, const std::vector<sca::UserInstance>& users,
           const sca::SolverConfig& config) { return sca::solve_group(budget, users, config); },
        py::arg("budget"), py::arg("users"), py::arg("config") = sca::SolverConfig{});
    m.def("quadratic_transform_step",
          [](double numerator, double latency, double multiplier) {
              const auto step = sca::quadratic_transform_step(numerator, latency, multiplier);
              return py::make_tuple(step.surrogate, step.multiplier_next);
          },
          py::arg("ratio_numerator"), py::arg("latency_value"), py::arg("multiplier"));
    m.def("mccormick_envelope",
          [](double p_lo, double p_hi, double b_lo, double b_hi, double power,
             double bandwidth, double product) {
              return sca::mccormick_envelope({p_lo, p_hi, b_lo, b_hi}, power, bandwidth,
                                             product);
          },
          py::arg("power_lo"), py::arg("power_hi"), py::arg("bandwidth_lo"),
          py::arg("bandwidth_hi"), py::arg("power"), py::arg("bandwidth"), py::arg("product"));

    // --- scenario / harness ------------------------------------------------------
    m.def("environmental_complexity", &scenario::environmental_complexity,
          py::arg("velocity_kmh"), py::arg("velocity_cap_kmh"));
    m.def("comm_channel_gain", &scenario::comm_channel_gain, py::arg("distance_m"),
          py::arg("carrier_ghz"));
    m.def(
        "mos_oracle",
        [](int principle, double latency_s, double quality, std::uint64_t seed) {
            Rng rng(seed);
            return scenario::mos_oracle(static_cast<scenario::MosPrinciple>(principle),
                                        latency_s, quality, rng);
        },
        py::arg("principle"), py::arg("latency_s"), py::arg("quality"), py::arg("seed"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("users", &SimConfig::users)
        .def_readwrite("episodes", &SimConfig::episodes)
        .def_readwrite("slots_per_episode", &SimConfig::slots_per_episode)
        .def_readwrite("bandwidth_total_hz", &SimConfig::bandwidth_total_hz)
        .def_readwrite("power_total_w", &SimConfig::power_total_w)
        .def_readwrite("compute_total_cps", &SimConfig::compute_total_cps)
        .def_readwrite("eval_episodes", &SimConfig::eval_episodes)
        .def_readwrite("seed", &SimConfig::seed);
    m.def("load_config", &load_config, py::arg("path"));

    py::enum_<sim::Scheme>(m, "Scheme")
        .value("Proposed", sim::Scheme::Proposed)
        .value("RoundRobin", sim::Scheme::RoundRobin)
        .value("Greedy", sim::Scheme::Greedy);

    py::class_<sim::RunMetrics>(m, "RunMetrics")
        .def_property_readonly("mean_qoe", &sim::RunMetrics::mean_qoe)
        .def_readonly("conservation_violations", &sim::RunMetrics::conservation_violations)
        .def_readonly("solver_failures", &sim::RunMetrics::solver_failures);

    py::class_<sim::Runner>(m, "Runner")
        .def(py::init<const SimConfig&, std::uint64_t>(), py::arg("config"), py::arg("seed"))
        .def("train", &sim::Runner::train)
        .def("evaluate", &sim::Runner::evaluate, py::arg("scheme"), py::arg("episodes"));

    // --- units ----------------------------------------------------------------
    m.def("mb_to_bits", &units::mb_to_bits);
    m.def("bits_to_mb", &units::bits_to_mb);
    m.def("dbm_per_hz_to_w_per_hz", &units::dbm_per_hz_to_w_per_hz);
}
