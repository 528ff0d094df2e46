#include "holonomy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace holo::bounds {

double wrap_phase(double phi, double wrap_tol) {
    double x = std::fmod(phi, 2.0 * M_PI);
    if (x < 0) x += 2.0 * M_PI;
    if (x >= 2.0 * M_PI - wrap_tol) x = 0.0;
    return x;
}

PhaseSpectrum::PhaseSpectrum(std::vector<double> raw, double wrap)
    : phases(std::move(raw)), wrap_tol(wrap) {
    if (wrap_tol <= 0) throw InvalidInput("PhaseSpectrum: wrap_tol must be positive");
    for (double& phi : phases) {
        if (!std::isfinite(phi)) throw InvalidInput("PhaseSpectrum: non-finite phase");
        if (phi < 0 || phi >= 2.0 * M_PI) {
            throw InvalidInput("PhaseSpectrum: phase " + std::to_string(phi) +
                               " outside [0, 2pi)");
        }
        if (phi >= 2.0 * M_PI - wrap_tol) phi = 0.0;
    }
    std::sort(phases.begin(), phases.end());
}

PhaseSpectrum phases_of_gate(const Matrix& gate, const ToleranceConfig& tol) {
    auto [values, vectors] = numkernel::unitary_eig(gate, tol);
    std::vector<double> phases(static_cast<std::size_t>(values.size()));
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        phases[static_cast<std::size_t>(k)] = wrap_phase(std::arg(values(k)));
    }
    return PhaseSpectrum(std::move(phases));
}

double isoholonomic_bound(const PhaseSpectrum& spectrum) {
    double sum = 0.0;
    for (double theta : spectrum.phases) sum += theta * (2.0 * M_PI - theta);
    return std::sqrt(std::max(sum, 0.0));
}

double state_bound(double theta) {
    if (!(theta >= 0 && theta < 2.0 * M_PI)) {
        throw InvalidInput("state_bound: theta outside [0, 2pi)");
    }
    return std::sqrt(theta * (2.0 * M_PI - theta));
}

std::pair<double, int> projective_isoholonomic_bound(const PhaseSpectrum& spectrum) {
    // Candidate k = 0 is the unshifted gate; candidate k >= 1 shifts by the
    // k-th spectrum phase, i.e. evaluates the representative e^{-i theta_k} G.
    std::vector<double> shifts;
    shifts.reserve(spectrum.size() + 1);
    shifts.push_back(0.0);
    for (double theta : spectrum.phases) shifts.push_back(theta);

    double best = std::numeric_limits<double>::infinity();
    int best_index = 0;
    for (std::size_t k = 0; k < shifts.size(); ++k) {
        double sum = 0.0;
        for (double theta : spectrum.phases) {
            const double phi = wrap_phase(theta - shifts[k], spectrum.wrap_tol);
            sum += phi * (2.0 * M_PI - phi);
        }
        const double candidate = std::sqrt(std::max(sum, 0.0));
        if (candidate < best - 1e-12) {
            best = candidate;
            best_index = static_cast<int>(k);
        }
    }
    return {best, best_index};
}

double qsl_time(const Matrix& gate, double mean_sqrt_skewness, const ToleranceConfig& tol) {
    if (!(mean_sqrt_skewness > 0)) {
        throw InvalidInput("qsl_time: mean sqrt skewness must be positive");
    }
    return isoholonomic_bound(phases_of_gate(gate, tol)) / mean_sqrt_skewness;
}

}  // namespace holo::bounds
