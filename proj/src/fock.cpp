#include "symeof/fock.hpp"

#include "symeof/closed_form.hpp"
#include "symeof/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <omp.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace symeof {

namespace {

constexpr Complex kI{0.0, 1.0};

// (a x 1) psi, (a^dag x 1) psi and the mode-B counterparts as index shifts.
Grid lower_a(const Grid& g) {
    const auto d = g.rows();
    Grid out = Grid::Zero(d, g.cols());
    for (Eigen::Index n = 0; n + 1 < d; ++n)
        out.row(n) = std::sqrt(static_cast<double>(n + 1)) * g.row(n + 1);
    return out;
}

Grid raise_a(const Grid& g) {
    const auto d = g.rows();
    Grid out = Grid::Zero(d, g.cols());
    for (Eigen::Index n = 1; n < d; ++n)
        out.row(n) = std::sqrt(static_cast<double>(n)) * g.row(n - 1);
    return out;
}

Grid lower_b(const Grid& g) {
    const auto d = g.cols();
    Grid out = Grid::Zero(g.rows(), d);
    for (Eigen::Index m = 0; m + 1 < d; ++m)
        out.col(m) = std::sqrt(static_cast<double>(m + 1)) * g.col(m + 1);
    return out;
}

Grid raise_b(const Grid& g) {
    const auto d = g.cols();
    Grid out = Grid::Zero(g.rows(), d);
    for (Eigen::Index m = 1; m < d; ++m)
        out.col(m) = std::sqrt(static_cast<double>(m)) * g.col(m - 1);
    return out;
}

Complex inner(const Grid& x, const Grid& y) {
    return (x.conjugate().cwiseProduct(y)).sum();
}

}  // namespace

TruncatedPureState::TruncatedPureState(Grid coeff, double discarded_weight)
    : coeff_(std::move(coeff)), discarded_weight_(discarded_weight) {
    if (coeff_.rows() != coeff_.cols() || coeff_.rows() < 1)
        throw std::invalid_argument("TruncatedPureState: grid must be square");
    const double norm = coeff_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw std::invalid_argument("TruncatedPureState: zero or non-finite grid");
    coeff_ /= norm;
}

Eigen::MatrixXd lowering_op(int d) {
    if (d < 1) throw std::invalid_argument("lowering_op: d < 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd displacement_op(int d, Complex alpha) {
    if (d < 1) throw std::invalid_argument("displacement_op: d < 1");
    Eigen::MatrixXcd ep = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd em = Eigen::MatrixXcd::Zero(d, d);
    const Complex beta = -std::conj(alpha);
    for (int n = 0; n < d; ++n) {
        ep(n, n) = 1.0;
        em(n, n) = 1.0;
    }
    // exp(alpha a^dag): entry ratio down a column is alpha sqrt(m)/(m-n)
    for (int n = 0; n < d; ++n)
        for (int m = n + 1; m < d; ++m)
            ep(m, n) = ep(m - 1, n) * alpha * std::sqrt(static_cast<double>(m)) /
                       static_cast<double>(m - n);
    // exp(beta a): entry ratio along a row is beta sqrt(n)/(n-m)
    for (int m = 0; m < d; ++m)
        for (int n = m + 1; n < d; ++n)
            em(m, n) = em(m, n - 1) * beta * std::sqrt(static_cast<double>(n)) /
                       static_cast<double>(n - m);
    const double w = std::exp(-0.5 * std::norm(alpha));
    return w * (ep * em);
}

TruncatedPureState tmss_state(double r, int d) {
    if (r < 0.0) throw std::domain_error("tmss_state: negative squeezing");
    if (d < 2) throw std::invalid_argument("tmss_state: d < 2");
    const double t = std::tanh(r);
    Grid g = Grid::Zero(d, d);
    double v = 1.0;
    for (int n = 0; n < d; ++n) {
        g(n, n) = v;
        v *= t;
    }
    const double discarded = std::pow(t, 2.0 * d);  // exact geometric tail
    return TruncatedPureState(std::move(g), discarded);
}

QuadratureMoments state_moments(const TruncatedPureState& psi) {
    const int d = psi.dim();
    const int dp = d + 2;  // ladder monomials reach two levels up: exact
    Grid g = Grid::Zero(dp, dp);
    g.topLeftCorner(d, d) = psi.coeff();

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Grid la = lower_a(g), ra = raise_a(g);
    const Grid lb = lower_b(g), rb = raise_b(g);
    std::array<Grid, 4> applied;
    applied[0] = inv_sqrt2 * (la + ra);          // X_A psi
    applied[1] = (-kI * inv_sqrt2) * (la - ra);  // P_A psi
    applied[2] = inv_sqrt2 * (lb + rb);          // X_B psi
    applied[3] = (-kI * inv_sqrt2) * (lb - rb);  // P_B psi

    QuadratureMoments mom;
    for (int i = 0; i < 4; ++i) mom.mean(i) = inner(g, applied[i]).real();
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double v = 2.0 * inner(applied[i], applied[j]).real();
            mom.second(i, j) = v;
            mom.second(j, i) = v;
        }
    return mom;
}

Mat4 QuadratureMoments::cm() const {
    return second - 2.0 * mean * mean.transpose();
}

double edge_occupancy(const TruncatedPureState& psi, int levels) {
    const int d = psi.dim();
    const int lo = std::max(d - levels, 0);
    double w = 0.0;
    const Grid& g = psi.coeff();
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            if (n >= lo || m >= lo) w += std::norm(g(n, m));
    return w;
}

double epr_uncertainty_state(const TruncatedPureState& psi) {
    const QuadratureMoments mom = state_moments(psi);
    const double var_xm = 0.5 * mom.second(0, 0) + 0.5 * mom.second(2, 2) -
                          mom.second(0, 2) -
                          (mom.mean(0) - mom.mean(2)) * (mom.mean(0) - mom.mean(2));
    const double var_pp = 0.5 * mom.second(1, 1) + 0.5 * mom.second(3, 3) +
                          mom.second(1, 3) -
                          (mom.mean(1) + mom.mean(3)) * (mom.mean(1) + mom.mean(3));
    return std::min(1.0, 0.5 * (var_xm + var_pp));
}

std::vector<double> schmidt_coefficients(const TruncatedPureState& psi) {
    Eigen::JacobiSVD<Grid> svd(psi.coeff());
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double entropy_of_state(const TruncatedPureState& psi) {
    const std::vector<double> sv = schmidt_coefficients(psi);
    return entropy_e(std::span<const double>(sv));
}

namespace {

Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd gin(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gin(i, j) = Complex(nd(rng), nd(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gin);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    for (int j = 0; j < d; ++j) {
        const Complex rjj = qr.matrixQR()(j, j);
        const double m = std::abs(rjj);
        q.col(j) *= (m > 0.0) ? rjj / m : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace

TruncatedPureState random_state(std::uint64_t seed, int d) {
    if (d < 2) throw std::invalid_argument("random_state: d < 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Grid g(d, d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) g(n, m) = Complex(nd(rng), nd(rng));
    return TruncatedPureState(std::move(g));
}

TruncatedPureState random_state(std::uint64_t seed, int d,
                                std::span<const double> schmidt) {
    if (d < 2) throw std::invalid_argument("random_state: d < 2");
    if (schmidt.size() > static_cast<std::size_t>(d))
        throw std::invalid_argument("random_state: schmidt spec longer than d");
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXcd u = haar_unitary(d, rng);
    const Eigen::MatrixXcd v = haar_unitary(d, rng);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
    for (std::size_t i = 0; i < schmidt.size(); ++i) c(static_cast<int>(i)) = schmidt[i];
    // sum_N c_N |u_N>|v_N>  ->  grid = U diag(c) V^T (plain transpose)
    Grid g = u * c.asDiagonal() * v.transpose();
    return TruncatedPureState(std::move(g));
}

Prop1Result prop1_check(const TruncatedPureState& psi) {
    Prop1Result res;
    res.entropy_bits = entropy_of_state(psi);
    res.delta = epr_uncertainty_state(psi);
    res.margin = res.entropy_bits - f_of_delta(res.delta);
    return res;
}

namespace {

struct McContext {
    int dim = 25;
    Eigen::VectorXd tmss_diag;  // normalized TMSS coefficients at `dim`
    Mat4 shift_transform;       // u = shift_transform * z, z ~ N(0, I)
    std::uint64_t seed = 0;
};

McContext make_mc_context(const Mat4& cov_u, double r_delta, int dim,
                          std::uint64_t seed) {
    McContext ctx;
    ctx.dim = dim;
    ctx.seed = seed;
    const double t = std::tanh(r_delta);
    ctx.tmss_diag.resize(dim);
    double v = 1.0;
    for (int n = 0; n < dim; ++n) {
        ctx.tmss_diag(n) = v;
        v *= t;
    }
    ctx.tmss_diag /= ctx.tmss_diag.norm();
    Eigen::SelfAdjointEigenSolver<Mat4> es(cov_u);
    const Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0);
    ctx.shift_transform = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
    return ctx;
}

// One displaced-state draw; deterministic function of (seed, index).
void sample_moments(const McContext& ctx, std::int64_t index,
                    Eigen::Vector4d& mean, Eigen::Matrix4d& second) {
    std::mt19937_64 rng(splitmix64(ctx.seed ^ splitmix64(0x9e3779b97f4a7c15ULL +
                                                         static_cast<std::uint64_t>(index))));
    std::normal_distribution<double> nd;
    Eigen::Vector4d z;
    for (int i = 0; i < 4; ++i) z(i) = nd(rng);
    const Eigen::Vector4d u = ctx.shift_transform * z;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex alpha_a = Complex(u(0), u(1)) * inv_sqrt2;
    const Complex alpha_b = Complex(u(2), u(3)) * inv_sqrt2;
    const Eigen::MatrixXcd da = displacement_op(ctx.dim, alpha_a);
    const Eigen::MatrixXcd db = displacement_op(ctx.dim, alpha_b);
    Grid g = da * ctx.tmss_diag.cast<Complex>().asDiagonal() * db.transpose();
    const TruncatedPureState psi(std::move(g));
    const QuadratureMoments mom = state_moments(psi);
    mean = mom.mean;
    second = mom.second;
}

QuadratureMoments finalize(const Eigen::Vector4d& mean_sum,
                           const Eigen::Matrix4d& second_sum, std::int64_t n) {
    QuadratureMoments out;
    out.mean = mean_sum / static_cast<double>(n);
    out.second = second_sum / static_cast<double>(n);
    return out;
}

}  // namespace

QuadratureMoments d0_mc_mixture_moments_serial(const Mat4& cov_u, double r_delta,
                                               int dim, std::int64_t samples,
                                               std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("mc moments: samples < 1");
    const McContext ctx = make_mc_context(cov_u, r_delta, dim, seed);
    Eigen::Vector4d mean_sum = Eigen::Vector4d::Zero();
    Eigen::Matrix4d second_sum = Eigen::Matrix4d::Zero();
    Eigen::Vector4d mean;
    Eigen::Matrix4d second;
    for (std::int64_t i = 0; i < samples; ++i) {
        sample_moments(ctx, i, mean, second);
        mean_sum += mean;
        second_sum += second;
    }
    return finalize(mean_sum, second_sum, samples);
}

QuadratureMoments d0_mc_mixture_moments(const Mat4& cov_u, double r_delta,
                                        int dim, std::int64_t samples,
                                        std::uint64_t seed, bool parallel) {
    if (samples < 1) throw std::invalid_argument("mc moments: samples < 1");
    const McContext ctx = make_mc_context(cov_u, r_delta, dim, seed);
    const int n_shards = static_cast<int>(std::min<std::int64_t>(256, samples));
    std::vector<Eigen::Vector4d> mean_parts(n_shards, Eigen::Vector4d::Zero());
    std::vector<Eigen::Matrix4d> second_parts(n_shards, Eigen::Matrix4d::Zero());

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < n_shards; ++s) {
        const std::int64_t lo = samples * s / n_shards;
        const std::int64_t hi = samples * (s + 1) / n_shards;
        Eigen::Vector4d mean, mean_sum = Eigen::Vector4d::Zero();
        Eigen::Matrix4d second, second_sum = Eigen::Matrix4d::Zero();
        for (std::int64_t i = lo; i < hi; ++i) {
            sample_moments(ctx, i, mean, second);
            mean_sum += mean;
            second_sum += second;
        }
        mean_parts[s] = mean_sum;
        second_parts[s] = second_sum;
    }

    Eigen::Vector4d mean_sum = Eigen::Vector4d::Zero();
    Eigen::Matrix4d second_sum = Eigen::Matrix4d::Zero();
    for (int s = 0; s < n_shards; ++s) {  // fixed merge order
        mean_sum += mean_parts[s];
        second_sum += second_parts[s];
    }
    return finalize(mean_sum, second_sum, samples);
}

D0Report d0_moment_check(const Mat4& gamma, const D0Options& opts) {
    const ValidityReport v = validate_cm(gamma);
    if (!v.valid)
        throw std::invalid_argument("d0_moment_check: not a valid covariance matrix");
    const StandardForm sf = reduce_to_standard_form(gamma);
    if (std::abs(sf.m - sf.n) > default_tol * std::max(1.0, sf.n))
        throw std::domain_error("d0_moment_check: asymmetric state");
    if (!is_entangled({0.5 * (sf.n + sf.m), 0.5 * (sf.n + sf.m), sf.kx, sf.kp}))
        throw std::domain_error("d0_moment_check: separable state");

    // expect the balanced standard-form shape: zeros off the pattern and
    // n_x - k_x = n_p - k_p
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    Mat4 pattern = Mat4::Zero();
    pattern(0, 0) = pattern(1, 1) = pattern(2, 2) = pattern(3, 3) = 1.0;
    pattern(0, 2) = pattern(2, 0) = pattern(1, 3) = pattern(3, 1) = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (pattern(i, j) == 0.0 && std::abs(gamma(i, j)) > 1e-9 * scale)
                throw std::domain_error("d0_moment_check: CM not in balanced standard form");
    const double gap_x = gamma(0, 0) - gamma(0, 2);
    const double gap_p = gamma(1, 1) + gamma(1, 3);
    if (std::abs(gap_x - gap_p) > 1e-9 * scale)
        throw std::domain_error("d0_moment_check: CM not balanced");

    D0Report rep;
    rep.delta = std::sqrt(std::max(gap_x, 0.0) * std::max(gap_p, 0.0));
    rep.r_delta = r_of_delta(std::min(rep.delta, 1.0));
    rep.gamma_delta = tmss_cm(rep.r_delta);
    rep.applicable = psd_order(gamma, rep.gamma_delta);
    if (!rep.applicable) return rep;

    // Weight over xi with covariance (1/2) omega^T (gamma - gamma_delta) omega,
    // pushed through the shift map u = -omega xi.
    const Mat4 omega = symplectic_form();
    const Mat4 m = gamma - rep.gamma_delta;
    const Mat4 sigma_xi = 0.5 * omega.transpose() * m * omega;
    const Mat4 cov_u = omega * sigma_xi * omega.transpose();
    rep.analytic_cm = rep.gamma_delta + 2.0 * cov_u;
    rep.analytic_max_dev = (rep.analytic_cm - gamma).cwiseAbs().maxCoeff();

    if (opts.run_monte_carlo) {
        const QuadratureMoments mom = d0_mc_mixture_moments(
            cov_u, rep.r_delta, opts.mc_dim, opts.mc_samples, opts.seed, opts.parallel);
        rep.mc_run = true;
        rep.mc_samples = opts.mc_samples;
        rep.mc_cm = mom.cm();
        rep.mc_max_dev = (rep.mc_cm - gamma).cwiseAbs().maxCoeff();
    }
    return rep;
}

}  // namespace symeof
