#pragma once

#include <string>
#include <vector>

#include "holonomy/geometry.hpp"
#include "holonomy/synthesis.hpp"

namespace holo::evolution {

using geometry::HamiltonianSchedule;
using numkernel::ToleranceConfig;

enum class SimulationMode { closed_form, numeric };

SimulationMode mode_from_string(const std::string& name);

/// Midpoint-exponential stepping: U_{k+1} = e^{-ih H(t_k + h/2)} U_k.
/// Returns the steps+1 propagators on the uniform grid, each a product of
/// exact exponentials and hence unitary to roundoff.
std::vector<Matrix> integrate_propagator(const HamiltonianSchedule& schedule,
                                         double tau, int steps,
                                         const ToleranceConfig& tol = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> propagators;
    std::vector<geometry::Frame> frames;
    std::vector<geometry::Projector> projectors;
    std::vector<double> skewness_samples;
    std::vector<double> pt_residuals;
    double length_accumulated = 0.0;  // quadrature of sqrt(skewness)
    double unitarity_drift = 0.0;     // max ||U'U - I||_max over samples

    double tau() const { return times.back(); }
    geometry::SampledCurve curve() const;
};

/// Samples the transported frames, projectors, skewness and transport
/// residuals of a plan on a uniform grid. closed_form uses the exact
/// channel propagators; numeric integrates the schedule.
Trajectory simulate_plan(const synthesis::TightPlan& p, int steps, SimulationMode mode);

struct TightnessReport {
    Matrix target_gate;
    Matrix realized_holonomy;       // lift-endpoint V_0† V_N in the V_0 basis
    double holonomy_error = 0.0;    // max-norm vs the target spectrum diagonal
    double bound = 0.0;             // L(target)
    double realized_length = 0.0;   // skewness-quadrature route
    double length_gap = 0.0;        // realized_length - bound
    double qsl_bound_time = 0.0;
    double tau = 0.0;
    double qsl_slack = 0.0;         // tau - qsl_bound_time
    double max_pt_residual = 0.0;
    double closure_residual = 0.0;
    double unitarity_drift = 0.0;
    int steps = 0;

    // Redundant second routes; disagreement is a verification failure.
    double length_projector_route = 0.0;   // finite-difference projector length
    double length_split_error = 0.0;       // |skewness route - projector route|
    double holonomy_split_error = 0.0;     // lift endpoint vs discrete lift
};

/// Fills the report from a simulated trajectory. The holonomy is computed
/// both as the lift endpoint and through the discrete horizontal lift of
/// the projector samples; the length both through the projector finite
/// differences and the skewness quadrature.
TightnessReport verify_tightness(const Trajectory& traj, const Matrix& target,
                                 const ToleranceConfig& tol = {});

struct VerifyThresholds {
    double length_gap;
    double holonomy_error;
    double max_pt_residual;
    double qsl_slack;
    double closure_residual;
    double unitarity_drift;
    double length_split_error;
    double holonomy_split_error;

    static VerifyThresholds for_mode(SimulationMode mode, int steps, double tau);
};

/// Names of the report quantities exceeding the thresholds, in the order
/// they are checked; empty means the implementation is tight. The two
/// split-route comparisons are widened by their second-order mesh defect
/// on coarse grids.
std::vector<std::string> tightness_failures(const TightnessReport& report,
                                            const VerifyThresholds& thresholds);

}  // namespace holo::evolution
