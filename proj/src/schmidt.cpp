#include "symeof/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace symeof {

namespace {
constexpr double kOrderSlack = 1e-12;
}

SchmidtSequence::SchmidtSequence(std::vector<double> c, double norm_tol)
    : c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("SchmidtSequence: empty");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!(c_[i] >= -kOrderSlack))
            throw std::invalid_argument("SchmidtSequence: negative coefficient");
        c_[i] = std::max(c_[i], 0.0);
        if (i > 0 && c_[i] > c_[i - 1] + kOrderSlack)
            throw std::invalid_argument("SchmidtSequence: not nonincreasing");
        norm2 += c_[i] * c_[i];
    }
    if (std::abs(norm2 - 1.0) > norm_tol)
        throw std::invalid_argument("SchmidtSequence: norm violation");
}

SchmidtSequence SchmidtSequence::normalized(std::vector<double> c) {
    if (c.empty()) throw std::invalid_argument("SchmidtSequence: empty");
    for (double& v : c) v = std::max(v, 0.0);
    std::sort(c.begin(), c.end(), std::greater<double>());
    double norm2 = 0.0;
    for (double v : c) norm2 += v * v;
    if (norm2 <= 0.0)
        throw std::invalid_argument("SchmidtSequence: zero sequence");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : c) v *= inv;
    return SchmidtSequence(std::move(c));
}

double entropy_e(std::span<const double> c) {
    double s = 0.0;
    for (double v : c) {
        const double p = v * v;
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

double entropy_e(const SchmidtSequence& c) { return entropy_e(c.coeffs()); }

double delta_functional(std::span<const double> c) {
    double acc = 0.0;
    for (std::size_t n = 1; n < c.size(); ++n)
        acc += static_cast<double>(n) * (c[n] * c[n] - c[n] * c[n - 1]);
    return 1.0 + 2.0 * acc;
}

double delta_functional(const SchmidtSequence& c) {
    return delta_functional(c.coeffs());
}

SchmidtSequence geometric_sequence(double delta, int d) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::domain_error("geometric_sequence: delta must lie in (0, 1]");
    if (d < 2) throw std::invalid_argument("geometric_sequence: d < 2");
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    if (delta == 1.0) {
        c[0] = 1.0;
        return SchmidtSequence(std::move(c));
    }
    const double q = (1.0 - delta) / (1.0 + delta);
    double norm2 = 0.0;
    double v = 1.0;
    for (int n = 0; n < d; ++n) {
        c[n] = v;
        norm2 += v * v;
        v *= q;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : c) x *= inv;
    return SchmidtSequence(std::move(c));
}

std::vector<double> euler_lagrange_residual(const SchmidtSequence& seq,
                                            double lambda, double mu) {
    const auto& c = seq.coeffs();
    const int d = static_cast<int>(c.size());
    for (double v : c)
        if (!(v > 0.0))
            throw std::invalid_argument("euler_lagrange_residual: zero coefficient");
    std::vector<double> res(c.size());
    for (int n = 0; n < d; ++n) {
        const double prev = (n > 0) ? c[n - 1] : 1.0;  // N-weighted, so inert
        const double next = (n + 1 < d) ? c[n + 1] : 0.0;
        const double lhs = 2.0 * c[n] * (n * lambda + mu - std::log(c[n] * c[n]));
        const double rhs = lambda * (n * prev + (n + 1) * next);
        res[static_cast<std::size_t>(n)] = lhs - rhs;
    }
    return res;
}

double lambda_of_r(double r) {
    if (!(r > 0.0)) throw std::domain_error("lambda_of_r: r must be positive");
    const double sh = std::sinh(r);
    return 2.0 * r / (sh * sh);
}

double r_of_lambda(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("r_of_lambda: lambda must be positive");
    // lambda_of_r decreases from +inf (r -> 0) to 0 (r -> inf); bisect.
    double lo = 1e-12, hi = 1.0;
    while (lambda_of_r(hi) > lambda) {
        hi *= 2.0;
        if (hi > 1e6) throw std::domain_error("r_of_lambda: lambda too small");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lambda_of_r(mid) > lambda)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

MultiplierState MultiplierState::from_r(double r) {
    MultiplierState ms;
    ms.r = r;
    ms.lambda = lambda_of_r(r);
    return ms;
}

RecursionResult recursion_iterate(double r, double x0, int n_max, double fp_tol) {
    if (!(r > 0.0) || r > 350.0)
        throw std::domain_error("recursion_iterate: r outside (0, 350]");
    if (!(x0 > 0.0) || x0 > 1.0)
        throw std::domain_error("recursion_iterate: x0 outside (0, 1]");
    if (n_max < 1) throw std::invalid_argument("recursion_iterate: n_max < 1");

    const double x_star = std::exp(-2.0 * r);
    const double sr = std::sinh(r);
    const double sr2 = sr * sr;

    RecursionResult out;
    out.x.reserve(static_cast<std::size_t>(std::min(n_max + 1, 1 << 20)));
    out.x.push_back(x0);

    double x_prev = 0.0;  // x_{N-1}, unused at N = 0
    double x_cur = x0;
    // r_N is carried with x_N and only recomputed when x changes, so the
    // exact fixed point x0 = e^{-2r} stays bitwise stationary.
    double r_cur = (x0 == x_star) ? r : -0.5 * std::log(x0);

    for (int n = 0; n < n_max; ++n) {
        const double sn = std::sinh(r_cur);
        const double a = (4.0 / (n + 2)) * (sn * sn - (r_cur / r) * sr2);
        const double b =
            (n == 0) ? 0.0
                     : (static_cast<double>(n) / (n + 2)) * (1.0 / x_cur - 1.0 / x_prev);
        const double x_next = x_cur - a - b;
        out.x.push_back(x_next);
        if (!std::isfinite(x_next) || x_next <= 0.0) {
            out.classification = TrajectoryClass::collapses;
            return out;
        }
        if (x_next > 1.0) {
            out.classification = TrajectoryClass::escapes_normalization;
            return out;
        }
        const double r_next = (x_next == x_cur) ? r_cur : -0.5 * std::log(x_next);
        x_prev = x_cur;
        x_cur = x_next;
        r_cur = r_next;
        out.max_dev_from_x0 = std::max(out.max_dev_from_x0, std::abs(x_cur - x0));
    }
    out.classification = (out.max_dev_from_x0 <= fp_tol)
                             ? TrajectoryClass::fixed_point
                             : TrajectoryClass::exhausted;
    return out;
}

std::vector<double> project_monotone_nonneg(std::span<const double> v) {
    const std::size_t d = v.size();
    std::vector<double> sum;
    std::vector<std::size_t> cnt;
    sum.reserve(d);
    cnt.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        sum.push_back(v[i]);
        cnt.push_back(1);
        // nonincreasing fit: merge while a later block mean exceeds an earlier one
        while (sum.size() >= 2) {
            const std::size_t k = sum.size();
            if (sum[k - 1] * static_cast<double>(cnt[k - 2]) <=
                sum[k - 2] * static_cast<double>(cnt[k - 1]))
                break;
            sum[k - 2] += sum[k - 1];
            cnt[k - 2] += cnt[k - 1];
            sum.pop_back();
            cnt.pop_back();
        }
    }
    std::vector<double> out;
    out.reserve(d);
    for (std::size_t b = 0; b < sum.size(); ++b) {
        const double mean = std::max(sum[b] / static_cast<double>(cnt[b]), 0.0);
        out.insert(out.end(), cnt[b], mean);
    }
    return out;
}

}  // namespace symeof
