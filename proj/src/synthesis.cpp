#include "holonomy/synthesis.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <utility>

namespace holo::synthesis {

using numkernel::max_norm;
using numkernel::require_finite;

namespace {

constexpr double kChannelTol = 1e-12;

/// e^{-itM} for a Hermitian 2x2 block.
Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
    Eigen::Vector2cd diag;
    diag(0) = std::exp(Complex(0.0, -t * solver.eigenvalues()(0)));
    diag(1) = std::exp(Complex(0.0, -t * solver.eigenvalues()(1)));
    return solver.eigenvectors() * diag.asDiagonal() * solver.eigenvectors().adjoint();
}

double real_expectation(const Vector& v, const Matrix& op) {
    return v.dot(op * v).real();
}

}  // namespace

void PhaseChannel::refresh_cache_and_validate() {
    const Eigen::Index d = v.size();
    require_finite(v, "PhaseChannel v");
    require_finite(w, "PhaseChannel w");
    if (w.size() != d || eps0.size() != d || eps1.size() != d) {
        throw InvalidInput("PhaseChannel: inconsistent vector dimensions");
    }
    if (!(tau > 0)) throw InvalidInput("PhaseChannel: tau must be positive");
    if (!(theta >= 0 && theta < 2.0 * M_PI)) {
        throw InvalidInput("PhaseChannel: theta outside [0, 2pi)");
    }
    if (std::abs(v.norm() - 1.0) > 1e-10 || std::abs(w.norm() - 1.0) > 1e-10) {
        throw InvalidInput("PhaseChannel: v and w must be unit vectors");
    }
    if (std::abs(v.dot(w)) > kChannelTol) {
        throw NotOrthogonal("PhaseChannel: <v|w> = " + std::to_string(std::abs(v.dot(w))));
    }

    basis.resize(d, 2);
    basis.col(0) = eps0;
    basis.col(1) = eps1;
    const Matrix gram = basis.adjoint() * basis;
    if (max_norm(gram - Matrix::Identity(2, 2)) > 1e-10) {
        throw InvalidInput("PhaseChannel: epsilon basis not orthonormal");
    }
    const double overlap = 2.0 * M_PI * std::norm(eps1.dot(v));
    if (std::abs(overlap - theta) > 1e-10) {
        throw InvalidInput("PhaseChannel: 2pi|<eps1|v>|^2 = " + std::to_string(overlap) +
                           " does not reproduce theta = " + std::to_string(theta));
    }
    if (std::abs(r.norm() - 1.0) > 1e-10) {
        throw InvalidInput("PhaseChannel: Bloch vector not unit length");
    }
    if (std::abs(omega.dot(r)) > kChannelTol * std::max(1.0, omega.norm())) {
        throw InvalidInput("PhaseChannel: Rabi vector not perpendicular to Bloch vector");
    }

    const Matrix p_span = basis * basis.adjoint();
    const Matrix off = Matrix::Identity(d, d) - p_span;
    if (max_norm(off * A) > kChannelTol * std::max(1.0, max_norm(A)) ||
        max_norm(off * H) > kChannelTol * std::max(1.0, max_norm(H))) {
        throw InvalidInput("PhaseChannel: A or H leaks outside span{eps0, eps1}");
    }

    a2 = (basis.adjoint() * A * basis).eval();
    h2 = (basis.adjoint() * H * basis).eval();
    a2 = 0.5 * (a2 + a2.adjoint()).eval();
    h2 = 0.5 * (h2 + h2.adjoint()).eval();
}

PhaseChannel build_channel(const Vector& v, const Vector& w, double theta, double tau) {
    if (!(theta >= 0 && theta < 2.0 * M_PI)) {
        throw InvalidInput("build_channel: theta outside [0, 2pi)");
    }
    if (!(tau > 0)) throw InvalidInput("build_channel: tau must be positive");
    require_finite(v, "build_channel v");
    require_finite(w, "build_channel w");
    if (v.size() != w.size()) throw InvalidInput("build_channel: dimension mismatch");
    if (std::abs(v.norm() - 1.0) > 1e-10 || std::abs(w.norm() - 1.0) > 1e-10) {
        throw InvalidInput("build_channel: v and w must be unit vectors");
    }
    if (std::abs(v.dot(w)) > kChannelTol) {
        throw NotOrthogonal("build_channel: <v|w> = " + std::to_string(std::abs(v.dot(w))));
    }

    PhaseChannel c;
    c.v = v;
    c.w = w;
    c.theta = theta;
    c.tau = tau;

    const double s = std::sqrt(theta / (2.0 * M_PI));
    const double q = std::sqrt(1.0 - theta / (2.0 * M_PI));
    c.eps0 = q * v - s * w;
    c.eps1 = s * v + q * w;

    c.sigma1 = c.eps0 * c.eps1.adjoint() + c.eps1 * c.eps0.adjoint();
    c.sigma2 = Complex(0.0, 1.0) * (c.eps0 * c.eps1.adjoint() - c.eps1 * c.eps0.adjoint());
    c.sigma3 = c.eps1 * c.eps1.adjoint() - c.eps0 * c.eps0.adjoint();

    c.r = Eigen::Vector3d(real_expectation(v, c.sigma1), real_expectation(v, c.sigma2),
                          real_expectation(v, c.sigma3));
    c.a = Eigen::Vector3d(0.0, 0.0, M_PI / tau);
    c.omega = c.a - c.a.dot(c.r) * c.r;

    c.A = c.a(0) * c.sigma1 + c.a(1) * c.sigma2 + c.a(2) * c.sigma3;
    c.H = c.omega(0) * c.sigma1 + c.omega(1) * c.sigma2 + c.omega(2) * c.sigma3;

    c.refresh_cache_and_validate();
    return c;
}

Matrix channel_hamiltonian_at(const PhaseChannel& c, double t) {
    const Eigen::Matrix2cd u = expm2(c.a2, t);
    return c.basis * (u * c.h2 * u.adjoint()) * c.basis.adjoint();
}

Matrix channel_propagator(const PhaseChannel& c, double t) {
    const Eigen::Matrix2cd u = expm2(c.a2, t) * expm2((c.h2 - c.a2).eval(), t);
    Matrix full = Matrix::Identity(c.dim(), c.dim());
    full.noalias() += c.basis * (u - Eigen::Matrix2cd::Identity()) * c.basis.adjoint();
    return full;
}

void TightPlan::validate(const ToleranceConfig& tol) const {
    const Eigen::Index n = gate.rows();
    numkernel::require_unitary(gate, tol.unitarity_tol, "TightPlan gate");
    if (computational_frame.rank() != n) {
        throw InvalidInput("TightPlan: frame rank does not match gate dimension");
    }
    if (phases.size() != static_cast<std::size_t>(n)) {
        throw InvalidInput("TightPlan: phase count does not match gate dimension");
    }
    if (ancillas.size() != channels.size()) {
        throw InvalidInput("TightPlan: ancilla/channel count mismatch");
    }
    if (!(tau > 0)) throw InvalidInput("TightPlan: tau must be positive");

    // The stored spectrum must be the spectrum of the stored gate; the
    // frame columns are eigenvectors in the embedded picture by
    // construction, which simulation cross-checks through the holonomy.
    const bounds::PhaseSpectrum recomputed = bounds::phases_of_gate(gate, tol);
    for (std::size_t k = 0; k < recomputed.size(); ++k) {
        if (std::abs(recomputed.phases[k] - phases.phases[k]) > 1e-9) {
            throw InvalidInput("TightPlan: stored phases disagree with the gate spectrum");
        }
    }

    const Matrix v = computational_frame.matrix();
    std::size_t channel_index = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double theta = phases.phases[static_cast<std::size_t>(k)];
        const Vector vk = v.col(k);
        if (theta > 0) {
            if (channel_index >= channels.size()) {
                throw InvalidInput("TightPlan: missing channel for a nonzero phase");
            }
            const PhaseChannel& c = channels[channel_index];
            if (std::abs(c.theta - theta) > 1e-9 ||
                (c.v - vk).cwiseAbs().maxCoeff() > 1e-9) {
                throw InvalidInput("TightPlan: channel " + std::to_string(channel_index) +
                                   " does not match its eigenvector/phase");
            }
            ++channel_index;
        }
    }
    if (channel_index != channels.size()) {
        throw InvalidInput("TightPlan: extra channels beyond nonzero phases");
    }

    for (std::size_t i = 0; i < channels.size(); ++i) {
        const Vector& w = ancillas[i];
        if (max_norm(v.adjoint() * w) > 1e-10) {
            throw InvalidInput("TightPlan: ancilla " + std::to_string(i) +
                               " not orthogonal to the computational space");
        }
        for (std::size_t j = i + 1; j < channels.size(); ++j) {
            const Matrix overlap = channels[i].basis.adjoint() * channels[j].basis;
            if (max_norm(overlap) > kChannelTol) {
                throw InvalidInput("TightPlan: channel subspaces " + std::to_string(i) +
                                   " and " + std::to_string(j) + " overlap");
            }
        }
    }
}

TightPlan plan_gate(const Matrix& gate, const geometry::Frame& embedding_frame,
                    const Matrix& ancilla_pool, double tau, const ToleranceConfig& tol) {
    if (!(tau > 0)) throw InvalidInput("plan_gate: tau must be positive");
    numkernel::require_unitary(gate, tol.unitarity_tol, "plan_gate");
    const Eigen::Index n = gate.rows();
    if (embedding_frame.rank() != n) {
        throw InvalidInput("plan_gate: embedding frame rank must equal gate dimension");
    }
    if (ancilla_pool.rows() != embedding_frame.dim()) {
        throw InvalidInput("plan_gate: ancilla pool dimension mismatch");
    }

    auto [values, vectors] = numkernel::unitary_eig(gate, tol);
    std::vector<double> raw_phases(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        raw_phases[static_cast<std::size_t>(k)] = bounds::wrap_phase(std::arg(values(k)));
    }
    // unitary_eig already sorts by wrapped phase, so columns line up with
    // the ascending spectrum.
    bounds::PhaseSpectrum spectrum(raw_phases);

    Matrix embedded_frame = embedding_frame.matrix() * vectors;
    numkernel::fix_column_phases(embedded_frame);
    geometry::Frame computational(embedded_frame, tol);

    int nonzero = 0;
    for (double theta : spectrum.phases) {
        if (theta > 0) ++nonzero;
    }

    std::vector<Vector> ancillas =
        numkernel::orthonormal_extension(embedded_frame, ancilla_pool, nonzero, tol);

    std::vector<PhaseChannel> channels;
    channels.reserve(static_cast<std::size_t>(nonzero));
    std::size_t next_ancilla = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double theta = spectrum.phases[static_cast<std::size_t>(k)];
        if (theta <= 0) continue;
        channels.push_back(
            build_channel(embedded_frame.col(k), ancillas[next_ancilla], theta, tau));
        ++next_ancilla;
    }

    TightPlan plan{gate, std::move(computational), std::move(spectrum),
                   std::move(ancillas), std::move(channels), tau};
    plan.validate(tol);
    return plan;
}

Matrix plan_hamiltonian_at(const TightPlan& p, double t) {
    Matrix h = Matrix::Zero(p.ambient_dim(), p.ambient_dim());
    for (const PhaseChannel& c : p.channels) {
        h += channel_hamiltonian_at(c, t);
    }
    return h;
}

Matrix plan_propagator(const TightPlan& p, double t) {
    // The channel propagators act on mutually orthogonal subspaces, so the
    // product collapses to identity plus the sum of the block corrections.
    Matrix u = Matrix::Identity(p.ambient_dim(), p.ambient_dim());
    for (const PhaseChannel& c : p.channels) {
        const Eigen::Matrix2cd block = expm2(c.a2, t) * expm2((c.h2 - c.a2).eval(), t);
        u.noalias() += c.basis * (block - Eigen::Matrix2cd::Identity()) * c.basis.adjoint();
    }
    return u;
}

Matrix gate_library(const std::string& name) {
    if (name == "t_gate") {
        Matrix g = Matrix::Identity(2, 2);
        g(1, 1) = std::exp(Complex(0.0, M_PI / 4.0));
        return g;
    }
    if (name == "t_prime") {
        Matrix g = Matrix::Zero(2, 2);
        g(0, 0) = std::exp(Complex(0.0, -M_PI / 8.0));
        g(1, 1) = std::exp(Complex(0.0, M_PI / 8.0));
        return g;
    }
    if (name == "hadamard") {
        Matrix g(2, 2);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        g << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
        return g;
    }
    if (name == "cnot") {
        Matrix g = Matrix::Zero(4, 4);
        g(0, 0) = 1.0;
        g(1, 1) = 1.0;
        g(2, 3) = 1.0;
        g(3, 2) = 1.0;
        return g;
    }
    throw InvalidInput("gate_library: unknown gate '" + name + "'");
}

std::vector<BlochSample> bloch_trajectory(const PhaseChannel& c, int steps) {
    if (steps < 2) throw InvalidInput("bloch_trajectory: steps >= 2 required");
    // Both vectors precess about the a axis (the sigma-basis z axis) with
    // angular speed 2|a|.
    std::vector<BlochSample> samples;
    samples.reserve(static_cast<std::size_t>(steps) + 1);
    const double rate = 2.0 * c.a(2);
    for (int k = 0; k <= steps; ++k) {
        const double t = c.tau * static_cast<double>(k) / steps;
        const double phi = rate * t;
        const double cp = std::cos(phi);
        const double sp = std::sin(phi);
        const auto rotate = [cp, sp](const Eigen::Vector3d& x) {
            return Eigen::Vector3d(cp * x(0) - sp * x(1), sp * x(0) + cp * x(1), x(2));
        };
        samples.push_back({t, rotate(c.r), rotate(c.omega)});
    }
    return samples;
}

}  // namespace holo::synthesis
