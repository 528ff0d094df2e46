#pragma once

#include <cstdint>
#include <vector>

#include "holonomy/geometry.hpp"

namespace holo::falsify {

struct FalsifyConfig {
    int dim = 4;
    int rank = 2;
    int loops = 1000;
    int samples = 2000;
    int generators = 3;
    std::uint64_t seed = 0;
    double tau = 1.0;

    void validate() const;
};

struct LoopRecord {
    std::uint64_t seed;
    int dim;
    int rank;
    double length;        // at the full sample count
    double mesh_error;    // |length(N) - length(N/2)| Richardson estimate
    double bound;         // L of the discrete-lift holonomy
    double margin;        // length + 5 mesh_error - bound
    double closure_residual;
};

struct FalsifyReport {
    FalsifyConfig config;
    std::vector<LoopRecord> records;
    double min_margin = 0.0;
    int violations = 0;
};

/// Evaluates one random closed loop against the length bound.
LoopRecord evaluate_loop(int dim, int rank, int generators, std::uint64_t seed,
                         int samples, double tau);

/// Seed sweep: loop i uses seed config.seed + i. A negative margin on any
/// loop is a violation (and would indicate an implementation bug).
FalsifyReport run_falsification(const FalsifyConfig& config);

}  // namespace holo::falsify
