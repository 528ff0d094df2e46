#pragma once

#include <string>
#include <vector>

#include "holonomy/bounds.hpp"
#include "holonomy/geometry.hpp"
#include "holonomy/numkernel.hpp"

namespace holo::synthesis {

using numkernel::ToleranceConfig;

/// One two-dimensional synthesis unit: the span of a target eigenvector |v>
/// and an ancilla |w>, carrying the epsilon basis, the Pauli triple on that
/// span, and the (A, H) operator pair that imprints the phase theta on |v>
/// over one loop of duration tau.
struct PhaseChannel {
    Vector v;
    Vector w;
    double theta = 0.0;
    double tau = 1.0;
    Vector eps0;
    Vector eps1;
    Matrix sigma1, sigma2, sigma3;   // d x d, supported on span{eps0, eps1}
    Eigen::Vector3d r;               // Bloch vector of |v><v|
    Eigen::Vector3d a;               // (0, 0, pi/tau)
    Eigen::Vector3d omega;           // a - (a.r) r
    Matrix A;                        // a . sigma
    Matrix H;                        // omega . sigma

    // Two-by-two representations in the (eps0, eps1) basis, used by the
    // closed-form evaluators.
    Matrix basis;                    // d x 2
    Eigen::Matrix2cd a2, h2;

    Eigen::Index dim() const { return v.size(); }

    /// Recomputes the cached basis blocks and checks the channel invariants
    /// (used directly after construction and after deserialization).
    void refresh_cache_and_validate();
};

struct BlochSample {
    double t;
    Eigen::Vector3d r;
    Eigen::Vector3d omega;
};

/// A full tight synthesis: target gate, its embedded eigenframe, the phase
/// spectrum, the assigned ancillas and one channel per nonzero phase.
struct TightPlan {
    Matrix gate;                          // n x n target
    geometry::Frame computational_frame;  // d x n embedded eigenvectors
    bounds::PhaseSpectrum phases;         // sorted ascending, one per column
    std::vector<Vector> ancillas;         // aligned with channels
    std::vector<PhaseChannel> channels;   // one per nonzero phase, ascending
    double tau = 1.0;

    Eigen::Index ambient_dim() const { return computational_frame.dim(); }
    Eigen::Index gate_dim() const { return gate.rows(); }

    void validate(const ToleranceConfig& tol = {}) const;
};

PhaseChannel build_channel(const Vector& v, const Vector& w, double theta, double tau);

/// H_t = e^{-itA} H e^{itA}.
Matrix channel_hamiltonian_at(const PhaseChannel& c, double t);

/// U_t = e^{-itA} e^{-it(H-A)}; identity on the complement of the channel span.
Matrix channel_propagator(const PhaseChannel& c, double t);

/// Builds the full plan: eigendecomposes the gate, embeds the eigenframe,
/// assigns one ancilla per nonzero phase from the pool, and constructs the
/// channels. Eigenvectors with phase zero get no channel.
TightPlan plan_gate(const Matrix& gate, const geometry::Frame& embedding_frame,
                    const Matrix& ancilla_pool, double tau,
                    const ToleranceConfig& tol = {});

/// Sum of the channel Hamiltonians at time t (zero matrix for a plan with
/// no channels).
Matrix plan_hamiltonian_at(const TightPlan& p, double t);

/// Product of the commuting channel propagators.
Matrix plan_propagator(const TightPlan& p, double t);

/// Named gates: "t_gate", "t_prime", "hadamard", "cnot".
Matrix gate_library(const std::string& name);

/// Bloch and Rabi vectors of the evolving state and Hamiltonian in the
/// channel's sigma basis, sampled on a uniform grid of `steps` intervals.
std::vector<BlochSample> bloch_trajectory(const PhaseChannel& c, int steps);

}  // namespace holo::synthesis
