#include "holonomy/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "holonomy/bounds.hpp"

namespace holo::evolution {

using numkernel::max_norm;

SimulationMode mode_from_string(const std::string& name) {
    if (name == "closed" || name == "closed_form") return SimulationMode::closed_form;
    if (name == "numeric") return SimulationMode::numeric;
    throw InvalidInput("unknown simulation mode '" + name + "'");
}

std::vector<Matrix> integrate_propagator(const HamiltonianSchedule& schedule,
                                         double tau, int steps,
                                         const ToleranceConfig& tol) {
    if (steps < 2) throw InvalidInput("integrate_propagator: steps >= 2 required");
    if (!(tau > 0)) throw InvalidInput("integrate_propagator: tau must be positive");
    const double h = tau / steps;
    std::vector<Matrix> props;
    props.reserve(static_cast<std::size_t>(steps) + 1);
    const Matrix first = schedule(0.5 * h);
    props.push_back(Matrix::Identity(first.rows(), first.rows()));
    props.push_back(numkernel::expm_i(first, h, tol));
    for (int k = 1; k < steps; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * h;
        props.push_back(numkernel::expm_i(schedule(mid), h, tol) * props.back());
    }
    return props;
}

geometry::SampledCurve Trajectory::curve() const {
    return geometry::SampledCurve(times, projectors);
}

Trajectory simulate_plan(const synthesis::TightPlan& p, int steps, SimulationMode mode) {
    if (steps < 2) throw InvalidInput("simulate_plan: steps >= 2 required");
    Trajectory traj;
    traj.times.resize(static_cast<std::size_t>(steps) + 1);

    if (mode == SimulationMode::numeric) {
        traj.propagators = integrate_propagator(
            [&p](double t) { return synthesis::plan_hamiltonian_at(p, t); }, p.tau, steps);
    } else {
        traj.propagators.reserve(static_cast<std::size_t>(steps) + 1);
        for (int k = 0; k <= steps; ++k) {
            traj.propagators.push_back(
                synthesis::plan_propagator(p, p.tau * static_cast<double>(k) / steps));
        }
    }

    const Matrix& v0 = p.computational_frame.matrix();
    const Eigen::Index d = p.ambient_dim();
    traj.frames.reserve(traj.propagators.size());
    traj.projectors.reserve(traj.propagators.size());
    traj.skewness_samples.resize(traj.propagators.size());
    traj.pt_residuals.resize(traj.propagators.size());

    for (std::size_t k = 0; k < traj.propagators.size(); ++k) {
        const double t = p.tau * static_cast<double>(k) / steps;
        traj.times[k] = t;
        const Matrix& u = traj.propagators[k];
        traj.unitarity_drift = std::max(
            traj.unitarity_drift, max_norm(u.adjoint() * u - Matrix::Identity(d, d)));
        traj.frames.emplace_back(u * v0);
        traj.projectors.emplace_back(traj.frames.back().matrix() *
                                     traj.frames.back().matrix().adjoint());
        const Matrix h = synthesis::plan_hamiltonian_at(p, t);
        traj.skewness_samples[k] = geometry::skewness(h, traj.projectors.back());
        traj.pt_residuals[k] = geometry::parallel_transport_residual(h, traj.frames.back());
    }

    // Trapezoidal quadrature of sqrt(skewness); exact for the constant
    // integrand of a tight plan.
    const double h_step = p.tau / steps;
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < traj.skewness_samples.size(); ++k) {
        length += 0.5 * h_step * (std::sqrt(std::max(traj.skewness_samples[k], 0.0)) +
                                  std::sqrt(std::max(traj.skewness_samples[k + 1], 0.0)));
    }
    traj.length_accumulated = length;
    return traj;
}

TightnessReport verify_tightness(const Trajectory& traj, const Matrix& target,
                                 const ToleranceConfig& tol) {
    if (traj.times.size() < 2) {
        throw InvalidInput("verify_tightness: trajectory too short");
    }
    TightnessReport report;
    report.target_gate = target;
    report.steps = static_cast<int>(traj.times.size()) - 1;
    report.tau = traj.tau();
    report.unitarity_drift = traj.unitarity_drift;

    report.closure_residual = max_norm(traj.projectors.back().matrix() -
                                       traj.projectors.front().matrix());
    if (report.closure_residual > 1e-3) {
        throw NotClosed("verify_tightness: closure residual " +
                        std::to_string(report.closure_residual));
    }

    const Matrix& v0 = traj.frames.front().matrix();
    report.realized_holonomy = v0.adjoint() * traj.frames.back().matrix();

    const bounds::PhaseSpectrum spectrum = bounds::phases_of_gate(target, tol);
    report.bound = bounds::isoholonomic_bound(spectrum);

    // The trajectory starts at an eigenframe ordered by ascending phase, so
    // the target holonomy is diagonal in the V_0 basis. Degenerate blocks
    // contribute the same diagonal regardless of the basis chosen in them.
    Matrix expected = Matrix::Zero(target.rows(), target.cols());
    for (Eigen::Index k = 0; k < target.rows(); ++k) {
        expected(k, k) = std::exp(Complex(0.0, spectrum.phases[static_cast<std::size_t>(k)]));
    }
    report.holonomy_error = max_norm(report.realized_holonomy - expected);

    const geometry::SampledCurve curve = traj.curve();
    const geometry::HolonomyResult rediscovered =
        geometry::holonomy(curve, traj.frames.front(), false, tol);
    report.holonomy_split_error =
        max_norm(rediscovered.gate_matrix - report.realized_holonomy);

    report.realized_length = traj.length_accumulated;
    report.length_projector_route = geometry::curve_length(curve);
    report.length_split_error =
        std::abs(report.realized_length - report.length_projector_route);
    report.length_gap = report.realized_length - report.bound;

    const double mean_sqrt_skewness = report.realized_length / report.tau;
    report.qsl_bound_time =
        mean_sqrt_skewness > 1e-15 ? report.bound / mean_sqrt_skewness
                                   : (report.bound > 0 ? std::numeric_limits<double>::infinity()
                                                       : 0.0);
    report.qsl_slack = report.tau - report.qsl_bound_time;

    report.max_pt_residual =
        *std::max_element(traj.pt_residuals.begin(), traj.pt_residuals.end());
    return report;
}

VerifyThresholds VerifyThresholds::for_mode(SimulationMode mode, int steps, double tau) {
    (void)steps;
    if (mode == SimulationMode::closed_form) {
        return {1e-9, 1e-9, 1e-10, 1e-9 * std::max(1.0, tau), 1e-9, 1e-12, 1e-6, 1e-8};
    }
    return {1e-6, 1e-6, 1e-6, 1e-6 * std::max(1.0, tau), 1e-6, 1e-10, 1e-6, 1e-8};
}

std::vector<std::string> tightness_failures(const TightnessReport& report,
                                            const VerifyThresholds& thresholds) {
    std::vector<std::string> failures;
    const auto check = [&failures](const char* name, double value, double limit) {
        if (!(std::abs(value) <= limit)) failures.emplace_back(name);
    };
    // The two redundant routes are second-order discretizations of each
    // other's target; on coarse meshes the comparison is widened by the
    // leading defect terms (chord deficit ~ L (L h / tau)^2 / 6 per route,
    // lift phase defect ~ 10 h^2).
    const double h = report.tau / std::max(report.steps, 1);
    const double speed = report.realized_length / std::max(report.tau, 1e-300);
    const double chord_deficit = report.realized_length * speed * speed * h * h / 6.0;
    const double len_split_limit =
        std::max(thresholds.length_split_error, 3.0 * chord_deficit);
    const double hol_split_limit =
        std::max(thresholds.holonomy_split_error, 10.0 * h * h);

    check("length_gap", report.length_gap, thresholds.length_gap);
    check("holonomy_error", report.holonomy_error, thresholds.holonomy_error);
    check("max_pt_residual", report.max_pt_residual, thresholds.max_pt_residual);
    check("qsl_slack", report.qsl_slack, thresholds.qsl_slack);
    check("closure_residual", report.closure_residual, thresholds.closure_residual);
    check("unitarity_drift", report.unitarity_drift, thresholds.unitarity_drift);
    check("length_split_error", report.length_split_error, len_split_limit);
    check("holonomy_split_error", report.holonomy_split_error, hol_split_limit);
    return failures;
}

}  // namespace holo::evolution
