#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "holonomy/numkernel.hpp"

namespace holo::geometry {

using numkernel::ToleranceConfig;

/// Time-indexed Hermitian generator, defined on [0, tau].
using HamiltonianSchedule = std::function<Matrix(double)>;

/// A point of the Stiefel manifold: d x n matrix with orthonormal columns.
class Frame {
public:
    explicit Frame(Matrix columns, const ToleranceConfig& tol = {});

    const Matrix& matrix() const { return columns_; }
    Eigen::Index dim() const { return columns_.rows(); }
    Eigen::Index rank() const { return columns_.cols(); }

private:
    Matrix columns_;
};

/// A point of the Grassmann manifold: rank-n orthogonal projector.
class Projector {
public:
    explicit Projector(Matrix p, const ToleranceConfig& tol = {});

    const Matrix& matrix() const { return p_; }
    Eigen::Index dim() const { return p_.rows(); }
    int rank() const { return rank_; }

private:
    Matrix p_;
    int rank_;
};

/// A sampled curve of equal-rank projectors at strictly increasing times.
struct SampledCurve {
    std::vector<double> times;
    std::vector<Projector> projectors;

    SampledCurve(std::vector<double> t, std::vector<Projector> p);

    std::size_t size() const { return times.size(); }
    double tau() const { return times.back(); }

    /// Keeps every stride-th sample (requires (size-1) divisible by stride).
    SampledCurve decimated(int stride) const;
};

struct HolonomyResult {
    Matrix gate_matrix;        // n x n, expressed in the V0 basis
    double closure_residual;   // ||P_N - P_0||_max
    std::optional<std::vector<Frame>> lift_frames;
};

Projector projector_from_frame(const Frame& v);

/// ||V† Vdot||_max; zero iff the tangent is horizontal.
double horizontality_residual(const Frame& v, const Matrix& vdot);

/// ||V† H V||_max, the Eq.-style parallel transport defect of H on span V.
double parallel_transport_residual(const Matrix& h, const Frame& v,
                                   const ToleranceConfig& tol = {});

/// Projective transport defect: residual ||V†HV - eps I||_max together with
/// the best scalar eps = Re tr(V†HV)/n.
std::pair<double, double> projective_pt_residual(const Matrix& h, const Frame& v,
                                                 const ToleranceConfig& tol = {});

/// Discrete horizontal lift by project-then-polar: V_{k+1} = polar(P_{k+1} V_k).
std::vector<Frame> discrete_horizontal_lift(const SampledCurve& curve, const Frame& v0,
                                            const ToleranceConfig& tol = {});

HolonomyResult holonomy(const SampledCurve& curve, const Frame& v0,
                        bool keep_frames = false, const ToleranceConfig& tol = {});

/// Length of the sampled curve: sum over intervals of sqrt(1/2 tr dP^2)
/// evaluated from the interval difference quotient (midpoint rule,
/// second order in the mesh).
double curve_length(const SampledCurve& curve);

/// Skewness I(H;P) = -1/2 tr([H,P]^2) = 1/2 ||[H,P]||_F^2.
double skewness(const Matrix& h, const Projector& p, const ToleranceConfig& tol = {});

/// Samples the curve t -> U_t P_0 U_t† on a uniform grid, with U_t obtained
/// from the midpoint-exponential integrator.
SampledCurve generated_curve(const HamiltonianSchedule& schedule, const Frame& v0,
                             double tau, int steps);

/// Seeded family of smooth closed loops U_t P U_t† with
/// U_t = prod_j exp(-i s_j(t) K_j), random Hermitian generators K_j and
/// windowed profiles s_j vanishing at both endpoints.
SampledCurve random_closed_loop(int dim, int rank, int generator_count,
                                std::uint64_t seed, int samples = 2000,
                                double tau = 1.0);

}  // namespace holo::geometry
