#pragma once

#include "symeof/symplectic.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace symeof {

using Grid = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Pure two-mode state truncated to the first d Fock levels per mode;
/// coeff(N, M) multiplies |N>_A |M>_B. Stored normalized.
class TruncatedPureState {
public:
    explicit TruncatedPureState(Grid coeff, double discarded_weight = 0.0);

    const Grid& coeff() const { return coeff_; }
    int dim() const { return static_cast<int>(coeff_.rows()); }

    /// Weight of the exact state lost to truncation, when known (builders
    /// of infinite states fill this in; finite constructions leave it 0).
    double discarded_weight() const { return discarded_weight_; }

private:
    Grid coeff_;
    double discarded_weight_;
};

/// Lowering operator: a|N> = sqrt(N)|N-1>.
Eigen::MatrixXd lowering_op(int d);

/// exp(alpha a^dag - conj(alpha) a) assembled from the normal-ordered
/// product e^{-|alpha|^2/2} exp(alpha a^dag) exp(-conj(alpha) a); the two
/// ladder exponentials are exact finite sums in the truncated algebra.
Eigen::MatrixXcd displacement_op(int d, Complex alpha);

struct QuadratureMoments {
    Eigen::Vector4d mean;    // <R_i>, R = (X_A, P_A, X_B, P_B)
    Eigen::Matrix4d second;  // <R_i R_j + R_j R_i>
    Mat4 cm() const;         // second - 2 mean mean^T
};

/// Truncated two-mode squeezed state: diagonal coefficients tanh^N(r)/cosh(r),
/// renormalized; discarded weight tanh^{2d}(r) recorded.
TruncatedPureState tmss_state(double r, int d);

/// First and second quadrature moments, exact for the stored grid: ladder
/// operators act on a two-level-padded embedding so no weight is clipped.
QuadratureMoments state_moments(const TruncatedPureState& psi);

/// Probability carried by the top `levels` Fock levels of either mode.
double edge_occupancy(const TruncatedPureState& psi, int levels = 2);

/// min(1, (Var(X_A - X_B) + Var(P_A + P_B))/2).
double epr_uncertainty_state(const TruncatedPureState& psi);

/// Schmidt coefficients are the singular values of the coefficient grid.
std::vector<double> schmidt_coefficients(const TruncatedPureState& psi);
double entropy_of_state(const TruncatedPureState& psi);  // bits

/// Normalized grid of iid complex Gaussians; deterministic per seed.
TruncatedPureState random_state(std::uint64_t seed, int d);

/// sum_N c_N |u_N>|v_N> with independent Haar-random orthonormal bases
/// {u_N}, {v_N}. schmidt longer than d is rejected.
TruncatedPureState random_state(std::uint64_t seed, int d,
                                std::span<const double> schmidt);

struct Prop1Result {
    double entropy_bits = 0.0;
    double delta = 1.0;
    double margin = 0.0;  // entropy - f(delta)
};

/// Least-entanglement bound at fixed EPR uncertainty: margin must be >= 0
/// up to numerical error.
Prop1Result prop1_check(const TruncatedPureState& psi);

struct D0Options {
    bool run_monte_carlo = false;
    int mc_dim = 25;
    std::int64_t mc_samples = 100000;
    std::uint64_t seed = 1;
    bool parallel = true;
};

struct D0Report {
    bool applicable = false;  // gamma - gamma_delta >= 0
    double delta = 1.0;
    double r_delta = 0.0;
    Mat4 gamma_delta = Mat4::Identity();
    Mat4 analytic_cm = Mat4::Identity();
    double analytic_max_dev = 0.0;
    bool mc_run = false;
    Mat4 mc_cm = Mat4::Identity();
    double mc_max_dev = 0.0;
    std::int64_t mc_samples = 0;
};

/// Moment check of the Gaussian decomposition into displaced two-mode
/// squeezed states. Expects a balanced symmetric entangled CM. The weight
/// over displacement parameters xi (of W(xi) = exp(i xi^T R)) is the
/// centered Gaussian with covariance (1/2) omega^T (gamma - gamma_delta)
/// omega: pushed through the induced phase-space shift u = -omega xi this
/// makes mean-covariance 2 E[u u^T] = gamma - gamma_delta, so the mixture
/// CM reproduces gamma. If gamma - gamma_delta is not PSD the decomposition
/// does not apply and the report says so instead of asserting.
/// The optional Monte Carlo pass rebuilds the mixture from displaced states
/// in truncated Fock space with sharded deterministic sampling.
D0Report d0_moment_check(const Mat4& gamma, const D0Options& opts = {});

/// Serial reference for the Monte Carlo accumulation: single pass in sample
/// order, same per-sample draws as the sharded kernel.
QuadratureMoments d0_mc_mixture_moments_serial(const Mat4& cov_u, double r_delta,
                                               int dim, std::int64_t samples,
                                               std::uint64_t seed);

/// Sharded kernel (fixed shard structure, OpenMP across shards, partials
/// merged in shard order); results are independent of thread count.
QuadratureMoments d0_mc_mixture_moments(const Mat4& cov_u, double r_delta,
                                        int dim, std::int64_t samples,
                                        std::uint64_t seed, bool parallel);

}  // namespace symeof
