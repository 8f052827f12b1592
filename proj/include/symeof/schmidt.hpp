#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace symeof {

/// Finite nonincreasing nonnegative unit-norm coefficient sequence.
class SchmidtSequence {
public:
    /// Validates ordering, nonnegativity and unit norm (within norm_tol).
    explicit SchmidtSequence(std::vector<double> c, double norm_tol = 1e-8);

    /// Sorts descending, clips negatives and normalizes; never throws on
    /// nonzero input.
    static SchmidtSequence normalized(std::vector<double> c);

    const std::vector<double>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

private:
    std::vector<double> c_;
};

// Raw-span versions trust the caller; the SchmidtSequence overloads validate.
double entropy_e(std::span<const double> c);  // -sum c^2 log2 c^2, 0 log 0 = 0
double entropy_e(const SchmidtSequence& c);

/// delta(c) = 1 + 2 sum_N N (c_N^2 - c_N c_{N-1}); equals
/// sum_R (R+1)(c_R - c_{R+1})^2 for unit-norm sequences, hence >= 0 and <= 1.
double delta_functional(std::span<const double> c);
double delta_functional(const SchmidtSequence& c);

/// Normalized truncation of c_N ~ q^N with q = (1-delta)/(1+delta).
/// delta = 1 degenerates to (1, 0, ...).
SchmidtSequence geometric_sequence(double delta, int d);

/// Stationarity residuals of the constrained-entropy problem, natural-log
/// form: res_N = 2 c_N (N lambda + mu - ln c_N^2)
///              - lambda (N c_{N-1} + (N+1) c_{N+1}),
/// with c_{-1} := 1 (irrelevant, N-weighted) and c_d := 0.
/// Requires strictly positive coefficients.
std::vector<double> euler_lagrange_residual(const SchmidtSequence& c,
                                            double lambda, double mu);

/// Multiplier parametrization lambda = 2r/sinh^2(r), a decreasing bijection
/// of r > 0 onto lambda > 0.
double lambda_of_r(double r);
double r_of_lambda(double lambda);

struct MultiplierState {
    double r = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    std::vector<double> x;  // ratios c_{N+1}/c_N when attached to a sequence
    static MultiplierState from_r(double r);
};

enum class TrajectoryClass {
    fixed_point,
    collapses,               // reaches x_N <= 0
    escapes_normalization,   // reaches x_N > 1
    exhausted,               // n_max steps without resolution
};

struct RecursionResult {
    TrajectoryClass classification = TrajectoryClass::exhausted;
    std::vector<double> x;  // trajectory including the terminating value
    double max_dev_from_x0 = 0.0;
};

/// Iterates x_{N+1} = x_N - A_N - B_N with
///   A_N = (4/(N+2)) [sinh^2(r_N) - (r_N/r) sinh^2(r)],  r_N = -ln(x_N)/2,
///   B_N = (N/(N+2)) [1/x_N - 1/x_{N-1}]  (B_0 = 0).
/// x0 = e^{-2r} is exactly stationary: r_N is carried alongside x_N and
/// reused while x does not change, so A_N and B_N vanish identically there.
RecursionResult recursion_iterate(double r, double x0, int n_max,
                                  double fp_tol = 1e-12);

struct MinimizeOptions {
    int restarts = 8;
    std::uint64_t seed = 1;
    int max_outer = 40;
    int max_inner = 3000;
    double feasibility_tol = 1e-10;
    bool parallel = true;
};

struct MinimizeResult {
    std::vector<double> c;
    double min_bits = 0.0;
    double feasibility = 1.0;     // |delta(c) - target| of the returned point
    bool converged = false;
    double restart_spread = 0.0;  // max - min over feasible restarts
    int restarts_feasible = 0;
};

/// Minimizes entropy_e over length-d sequences in the cone intersect sphere
/// subject to delta_functional(c) = delta, by an augmented-Lagrangian outer
/// loop around projected Barzilai-Borwein descent. Deterministic per seed.
/// Non-convergence is reported through the flags, never silently.
MinimizeResult minimize_entropy_constrained(double delta, int d,
                                            const MinimizeOptions& opts = {});

/// Euclidean projection onto {c_0 >= c_1 >= ... >= c_{d-1} >= 0}
/// (pool-adjacent-violators, then clip).
std::vector<double> project_monotone_nonneg(std::span<const double> v);

}  // namespace symeof
