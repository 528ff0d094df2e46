#pragma once

#include <utility>
#include <vector>

#include "holonomy/numkernel.hpp"

namespace holo::bounds {

using numkernel::ToleranceConfig;

/// Maps an angle to [0, 2pi); values within wrap_tol of 2pi collapse to 0.
double wrap_phase(double phi, double wrap_tol = 1e-9);

/// Eigenvalue phases of a gate, sorted ascending in [0, 2pi).
struct PhaseSpectrum {
    std::vector<double> phases;
    double wrap_tol = 1e-9;

    explicit PhaseSpectrum(std::vector<double> raw, double wrap = 1e-9);

    std::size_t size() const { return phases.size(); }
};

PhaseSpectrum phases_of_gate(const Matrix& gate, const ToleranceConfig& tol = {});

/// L = sqrt(sum_j theta_j (2pi - theta_j)).
double isoholonomic_bound(const PhaseSpectrum& spectrum);

/// Rank-1 case: sqrt(theta (2pi - theta)) for theta in [0, 2pi).
double state_bound(double theta);

/// Minimum of the bound over global-phase representatives. The candidate
/// shifts are theta_0 = 0 and every spectrum phase; returns the bound and
/// the index of the smallest minimizing shift.
std::pair<double, int> projective_isoholonomic_bound(const PhaseSpectrum& spectrum);

/// Quantum-speed-limit time L(G)/<<sqrt I>>.
double qsl_time(const Matrix& gate, double mean_sqrt_skewness,
                const ToleranceConfig& tol = {});

}  // namespace holo::bounds
