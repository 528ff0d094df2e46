#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "holonomy/bounds.hpp"
#include "holonomy/evolution.hpp"
#include "holonomy/falsify.hpp"
#include "holonomy/io.hpp"
#include "holonomy/synthesis.hpp"

namespace py = pybind11;

namespace {

using holo::Matrix;

py::dict report_to_dict(const holo::evolution::TightnessReport& report) {
    py::dict d;
    d["target_gate"] = report.target_gate;
    d["realized_holonomy"] = report.realized_holonomy;
    d["holonomy_error"] = report.holonomy_error;
    d["bound"] = report.bound;
    d["realized_length"] = report.realized_length;
    d["length_gap"] = report.length_gap;
    d["qsl_bound_time"] = report.qsl_bound_time;
    d["tau"] = report.tau;
    d["qsl_slack"] = report.qsl_slack;
    d["max_pt_residual"] = report.max_pt_residual;
    d["closure_residual"] = report.closure_residual;
    d["unitarity_drift"] = report.unitarity_drift;
    d["steps"] = report.steps;
    d["length_projector_route"] = report.length_projector_route;
    d["length_split_error"] = report.length_split_error;
    d["holonomy_split_error"] = report.holonomy_split_error;
    return d;
}

holo::synthesis::TightPlan synthesize(const Matrix& gate, double tau, int ambient_dim) {
    const Eigen::Index n = gate.rows();
    if (ambient_dim == 0) ambient_dim = static_cast<int>(2 * n);
    if (ambient_dim <= n) {
        throw holo::InvalidInput("ambient dimension must exceed the gate dimension");
    }
    Matrix embedding = Matrix::Zero(ambient_dim, n);
    for (Eigen::Index k = 0; k < n; ++k) embedding(k, k) = 1.0;
    return holo::synthesis::plan_gate(gate, holo::geometry::Frame(embedding),
                                      Matrix::Identity(ambient_dim, ambient_dim), tau);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Isoholonomic bounds and tight holonomic gate synthesis";
    m.attr("__version__") = holo::io::kToolVersion;

    py::register_exception<holo::NotUnitary>(m, "NotUnitaryError");
    py::register_exception<holo::NotHermitian>(m, "NotHermitianError");
    py::register_exception<holo::InsufficientComplement>(m, "InsufficientComplementError");
    py::register_exception<holo::NotClosed>(m, "NotClosedError");
    py::register_exception<holo::InvalidInput>(m, "InvalidInputError");

    m.def(
        "bound",
        [](const Matrix& gate) {
            return holo::bounds::isoholonomic_bound(holo::bounds::phases_of_gate(gate));
        },
        py::arg("gate"), "Isoholonomic bound sqrt(sum theta (2pi - theta)) of a gate");

    m.def(
        "projective_bound",
        [](const Matrix& gate) {
            return holo::bounds::projective_isoholonomic_bound(
                holo::bounds::phases_of_gate(gate));
        },
        py::arg("gate"),
        "Bound of the projective gate class; returns (bound, argmin shift index)");

    m.def(
        "phases_of_gate",
        [](const Matrix& gate) {
            return holo::bounds::phases_of_gate(gate).phases;
        },
        py::arg("gate"), "Eigenvalue phases in [0, 2pi), sorted ascending");

    m.def("state_bound", &holo::bounds::state_bound, py::arg("theta"));
    m.def("gate", &holo::synthesis::gate_library, py::arg("name"),
          "Named gate matrix: t_gate, t_prime, hadamard, cnot");

    py::class_<holo::synthesis::TightPlan>(m, "Plan")
        .def_property_readonly("tau", [](const holo::synthesis::TightPlan& p) { return p.tau; })
        .def_property_readonly("ambient_dim",
                               [](const holo::synthesis::TightPlan& p) {
                                   return static_cast<int>(p.ambient_dim());
                               })
        .def_property_readonly("num_channels",
                               [](const holo::synthesis::TightPlan& p) {
                                   return static_cast<int>(p.channels.size());
                               })
        .def_property_readonly("phases",
                               [](const holo::synthesis::TightPlan& p) {
                                   return p.phases.phases;
                               })
        .def_property_readonly("gate",
                               [](const holo::synthesis::TightPlan& p) { return p.gate; })
        .def_property_readonly("computational_frame",
                               [](const holo::synthesis::TightPlan& p) {
                                   return p.computational_frame.matrix();
                               })
        .def("hamiltonian", &holo::synthesis::plan_hamiltonian_at, py::arg("t"))
        .def("propagator", &holo::synthesis::plan_propagator, py::arg("t"))
        .def("channel_operators",
             [](const holo::synthesis::TightPlan& p, int k) {
                 const auto& c = p.channels.at(static_cast<std::size_t>(k));
                 return py::make_tuple(c.A, c.H);
             },
             py::arg("channel"), "The (A, H) pair of one channel")
        .def("to_json",
             [](const holo::synthesis::TightPlan& p) {
                 return holo::io::plan_to_json(p).dump(2);
             })
        .def_static("from_json", [](const std::string& text) {
            return holo::io::plan_from_json(nlohmann::json::parse(text));
        });

    m.def("synthesize", &synthesize, py::arg("gate"), py::arg("tau") = 1.0,
          py::arg("ambient_dim") = 0,
          "Tight plan for a gate embedded in the first n ambient directions");

    m.def(
        "verify",
        [](const holo::synthesis::TightPlan& plan, int steps, const std::string& mode_name) {
            const auto mode = holo::evolution::mode_from_string(mode_name);
            const auto traj = holo::evolution::simulate_plan(plan, steps, mode);
            const auto report = holo::evolution::verify_tightness(traj, plan.gate);
            const auto thresholds =
                holo::evolution::VerifyThresholds::for_mode(mode, steps, plan.tau);
            py::dict d = report_to_dict(report);
            d["failures"] = holo::evolution::tightness_failures(report, thresholds);
            return d;
        },
        py::arg("plan"), py::arg("steps") = 10000, py::arg("mode") = "closed",
        "Simulate a plan and report tightness quantities");

    m.def(
        "bloch_trajectory",
        [](const holo::synthesis::TightPlan& plan, int channel, int steps) {
            const auto& c = plan.channels.at(static_cast<std::size_t>(channel));
            const auto samples = holo::synthesis::bloch_trajectory(c, steps);
            Eigen::MatrixXd rows(samples.size(), 7);
            for (std::size_t k = 0; k < samples.size(); ++k) {
                const auto idx = static_cast<Eigen::Index>(k);
                rows(idx, 0) = samples[k].t;
                rows.block<1, 3>(idx, 1) = samples[k].r.transpose();
                rows.block<1, 3>(idx, 4) = samples[k].omega.transpose();
            }
            return rows;
        },
        py::arg("plan"), py::arg("channel") = 0, py::arg("steps") = 400,
        "Rows of (t, r1, r2, r3, w1, w2, w3) for one channel");

    m.def(
        "falsify",
        [](int dim, int rank, int loops, std::uint64_t seed, int samples) {
            holo::falsify::FalsifyConfig config;
            config.dim = dim;
            config.rank = rank;
            config.loops = loops;
            config.seed = seed;
            config.samples = samples;
            const auto report = holo::falsify::run_falsification(config);
            py::dict d;
            d["min_margin"] = report.min_margin;
            d["violations"] = report.violations;
            d["loops"] = static_cast<int>(report.records.size());
            return d;
        },
        py::arg("dim") = 4, py::arg("rank") = 2, py::arg("loops") = 100,
        py::arg("seed") = 0, py::arg("samples") = 2000,
        "Random-loop sweep of the isoholonomic inequality");
}
