#include "holonomy/geometry.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "holonomy/evolution.hpp"

namespace holo::geometry {

using numkernel::max_norm;
using numkernel::require_finite;
using numkernel::require_hermitian;

Frame::Frame(Matrix columns, const ToleranceConfig& tol) : columns_(std::move(columns)) {
    tol.validate();
    require_finite(columns_, "Frame");
    const Eigen::Index d = columns_.rows();
    const Eigen::Index n = columns_.cols();
    if (n < 1 || n >= d) {
        throw InvalidInput("Frame: need 1 <= n < d, got " + std::to_string(n) + " x " +
                           std::to_string(d));
    }
    const Matrix gram = columns_.adjoint() * columns_;
    const double dev = max_norm(gram - Matrix::Identity(n, n));
    if (dev > tol.unitarity_tol) {
        throw InvalidInput("Frame: columns not orthonormal, ||V'V - I|| = " +
                           std::to_string(dev));
    }
}

Projector::Projector(Matrix p, const ToleranceConfig& tol) : p_(std::move(p)) {
    tol.validate();
    require_hermitian(p_, tol.hermiticity_tol, "Projector");
    const double idem = max_norm(p_ * p_ - p_);
    if (idem > 1e-9) {
        throw InvalidInput("Projector: not idempotent, ||P^2 - P|| = " + std::to_string(idem));
    }
    const double tr = p_.trace().real();
    rank_ = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank_) > 1e-9 || rank_ < 0) {
        throw InvalidInput("Projector: trace " + std::to_string(tr) + " is not integral");
    }
}

SampledCurve::SampledCurve(std::vector<double> t, std::vector<Projector> p)
    : times(std::move(t)), projectors(std::move(p)) {
    if (times.size() != projectors.size() || times.size() < 1) {
        throw InvalidInput("SampledCurve: times and projectors must align");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw InvalidInput("SampledCurve: times must be strictly increasing");
        }
        if (projectors[k].dim() != projectors[0].dim() ||
            projectors[k].rank() != projectors[0].rank()) {
            throw InvalidInput("SampledCurve: inhomogeneous projectors");
        }
    }
}

SampledCurve SampledCurve::decimated(int stride) const {
    if (stride < 1 || (times.size() - 1) % static_cast<std::size_t>(stride) != 0) {
        throw InvalidInput("SampledCurve::decimated: stride does not divide the mesh");
    }
    std::vector<double> t;
    std::vector<Projector> p;
    for (std::size_t k = 0; k < times.size(); k += static_cast<std::size_t>(stride)) {
        t.push_back(times[k]);
        p.push_back(projectors[k]);
    }
    return SampledCurve(std::move(t), std::move(p));
}

Projector projector_from_frame(const Frame& v) {
    return Projector(v.matrix() * v.matrix().adjoint());
}

double horizontality_residual(const Frame& v, const Matrix& vdot) {
    if (vdot.rows() != v.dim() || vdot.cols() != v.rank()) {
        throw InvalidInput("horizontality_residual: shape mismatch");
    }
    require_finite(vdot, "horizontality_residual");
    return max_norm(v.matrix().adjoint() * vdot);
}

double parallel_transport_residual(const Matrix& h, const Frame& v,
                                   const ToleranceConfig& tol) {
    require_hermitian(h, tol.hermiticity_tol, "parallel_transport_residual");
    if (h.rows() != v.dim()) {
        throw InvalidInput("parallel_transport_residual: shape mismatch");
    }
    return max_norm(v.matrix().adjoint() * h * v.matrix());
}

std::pair<double, double> projective_pt_residual(const Matrix& h, const Frame& v,
                                                 const ToleranceConfig& tol) {
    require_hermitian(h, tol.hermiticity_tol, "projective_pt_residual");
    if (h.rows() != v.dim()) {
        throw InvalidInput("projective_pt_residual: shape mismatch");
    }
    const Matrix compressed = v.matrix().adjoint() * h * v.matrix();
    const double eps = compressed.trace().real() / static_cast<double>(v.rank());
    const double residual =
        max_norm(compressed - eps * Matrix::Identity(v.rank(), v.rank()));
    return {residual, eps};
}

std::vector<Frame> discrete_horizontal_lift(const SampledCurve& curve, const Frame& v0,
                                            const ToleranceConfig& tol) {
    if (curve.projectors[0].dim() != v0.dim() ||
        curve.projectors[0].rank() != v0.rank()) {
        throw InvalidInput("discrete_horizontal_lift: frame/projector mismatch");
    }
    const double span_dev = max_norm(curve.projectors[0].matrix() * v0.matrix() - v0.matrix());
    if (span_dev > 1e-8) {
        throw InvalidInput("discrete_horizontal_lift: V0 does not span range(P_0), defect " +
                           std::to_string(span_dev));
    }
    std::vector<Frame> lift;
    lift.reserve(curve.size());
    lift.push_back(v0);
    for (std::size_t k = 1; k < curve.size(); ++k) {
        const double gap =
            (curve.projectors[k].matrix() - curve.projectors[k - 1].matrix()).norm();
        if (gap >= 0.5) {
            throw MeshTooCoarse("discrete_horizontal_lift: consecutive projector gap " +
                                std::to_string(gap));
        }
        try {
            lift.emplace_back(numkernel::polar_orthonormalize(
                curve.projectors[k].matrix() * lift.back().matrix(), tol));
        } catch (const RankDeficient&) {
            throw MeshTooCoarse("discrete_horizontal_lift: rank-deficient projection at sample " +
                                std::to_string(k));
        }
    }
    return lift;
}

HolonomyResult holonomy(const SampledCurve& curve, const Frame& v0, bool keep_frames,
                        const ToleranceConfig& tol) {
    const double closure =
        max_norm(curve.projectors.back().matrix() - curve.projectors.front().matrix());
    if (closure > 1e-3) {
        throw NotClosed("holonomy: closure residual " + std::to_string(closure));
    }
    std::vector<Frame> lift = discrete_horizontal_lift(curve, v0, tol);
    HolonomyResult result{v0.matrix().adjoint() * lift.back().matrix(), closure, std::nullopt};
    if (keep_frames) result.lift_frames = std::move(lift);
    return result;
}

double curve_length(const SampledCurve& curve) {
    if (curve.size() < 2) {
        throw InvalidInput("curve_length: need at least two samples");
    }
    double length = 0.0;
    for (std::size_t k = 1; k < curve.size(); ++k) {
        const Matrix dp = curve.projectors[k].matrix() - curve.projectors[k - 1].matrix();
        length += std::sqrt(0.5) * dp.norm();
    }
    return length;
}

double skewness(const Matrix& h, const Projector& p, const ToleranceConfig& tol) {
    require_hermitian(h, tol.hermiticity_tol, "skewness");
    if (h.rows() != p.dim()) {
        throw InvalidInput("skewness: shape mismatch");
    }
    const Matrix commutator = h * p.matrix() - p.matrix() * h;
    return 0.5 * commutator.squaredNorm();
}

SampledCurve generated_curve(const HamiltonianSchedule& schedule, const Frame& v0,
                             double tau, int steps) {
    if (steps < 2) throw InvalidInput("generated_curve: steps >= 2 required");
    if (!(tau > 0)) throw InvalidInput("generated_curve: tau must be positive");
    const std::vector<Matrix> props = evolution::integrate_propagator(schedule, tau, steps);
    const Matrix p0 = v0.matrix() * v0.matrix().adjoint();
    std::vector<double> times(props.size());
    std::vector<Projector> projectors;
    projectors.reserve(props.size());
    for (std::size_t k = 0; k < props.size(); ++k) {
        times[k] = tau * static_cast<double>(k) / steps;
        projectors.emplace_back(props[k] * p0 * props[k].adjoint());
    }
    return SampledCurve(std::move(times), std::move(projectors));
}

SampledCurve random_closed_loop(int dim, int rank, int generator_count,
                                std::uint64_t seed, int samples, double tau) {
    if (rank < 1 || rank >= dim) {
        throw InvalidInput("random_closed_loop: need 1 <= rank < dim");
    }
    if (generator_count < 1) {
        throw InvalidInput("random_closed_loop: need at least one generator");
    }
    if (samples < 2) throw InvalidInput("random_closed_loop: samples >= 2 required");
    if (!(tau > 0)) throw InvalidInput("random_closed_loop: tau must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    struct Generator {
        Matrix k;
        double amplitude;
        int winding;
        double phase;
    };
    std::vector<Generator> gens;
    gens.reserve(static_cast<std::size_t>(generator_count));
    for (int j = 0; j < generator_count; ++j) {
        Matrix g(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                g(r, c) = Complex(gauss(rng), gauss(rng));
            }
        }
        Matrix k = 0.5 * (g + g.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
        const double spectral = solver.eigenvalues().cwiseAbs().maxCoeff();
        if (spectral > 1.5) k *= 1.5 / spectral;
        const double amplitude = 0.8 + 0.8 * uni(rng);
        const int winding = 1 + static_cast<int>(3.0 * uni(rng));
        const double phase = 2.0 * M_PI * uni(rng);
        gens.push_back({std::move(k), amplitude, winding, phase});
    }

    // Distinct sin^2-windowed profiles; the window zeroes s_j at both
    // endpoints, so the loop closes exactly.
    const auto profile = [tau](const Generator& g, double t) {
        const double window = std::sin(M_PI * t / tau);
        return g.amplitude * window * window *
               std::sin(g.winding * M_PI * t / tau + g.phase);
    };

    Matrix p0 = Matrix::Zero(dim, dim);
    for (int r = 0; r < rank; ++r) p0(r, r) = Complex(1.0, 0.0);

    std::vector<double> times(static_cast<std::size_t>(samples) + 1);
    std::vector<Projector> projectors;
    projectors.reserve(times.size());
    for (int s = 0; s <= samples; ++s) {
        const double t = tau * static_cast<double>(s) / samples;
        times[static_cast<std::size_t>(s)] = t;
        Matrix u = Matrix::Identity(dim, dim);
        for (const Generator& g : gens) {
            u = numkernel::expm_i(g.k, profile(g, t)) * u;
        }
        projectors.emplace_back(u * p0 * u.adjoint());
    }
    return SampledCurve(std::move(times), std::move(projectors));
}

}  // namespace holo::geometry
