#include "holonomy/falsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holonomy/bounds.hpp"

namespace holo::falsify {

void FalsifyConfig::validate() const {
    if (rank < 1 || rank >= dim) throw InvalidInput("falsify: need 1 <= rank < dim");
    if (loops < 1) throw InvalidInput("falsify: loops >= 1 required");
    if (samples < 4 || samples % 2 != 0) {
        throw InvalidInput("falsify: samples must be even and >= 4");
    }
    if (generators < 1) throw InvalidInput("falsify: generators >= 1 required");
    if (!(tau > 0)) throw InvalidInput("falsify: tau must be positive");
}

LoopRecord evaluate_loop(int dim, int rank, int generators, std::uint64_t seed,
                         int samples, double tau) {
    const geometry::SampledCurve curve =
        geometry::random_closed_loop(dim, rank, generators, seed, samples, tau);
    const double length = geometry::curve_length(curve);
    const double coarse = geometry::curve_length(curve.decimated(2));
    const double mesh_error = std::abs(length - coarse);

    Matrix v0 = Matrix::Zero(dim, rank);
    for (int k = 0; k < rank; ++k) v0(k, k) = Complex(1.0, 0.0);
    const geometry::HolonomyResult hol = geometry::holonomy(curve, geometry::Frame(v0));
    const double bound =
        bounds::isoholonomic_bound(bounds::phases_of_gate(hol.gate_matrix));

    return {seed,   dim,  rank, length, mesh_error,
            bound,  length + 5.0 * mesh_error - bound, hol.closure_residual};
}

FalsifyReport run_falsification(const FalsifyConfig& config) {
    config.validate();
    FalsifyReport report;
    report.config = config;
    report.records.reserve(static_cast<std::size_t>(config.loops));
    report.min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < config.loops; ++i) {
        LoopRecord record = evaluate_loop(config.dim, config.rank, config.generators,
                                          config.seed + static_cast<std::uint64_t>(i),
                                          config.samples, config.tau);
        report.min_margin = std::min(report.min_margin, record.margin);
        if (record.margin < 0) ++report.violations;
        report.records.push_back(record);
    }
    return report;
}

}  // namespace holo::falsify
