#include "symeof/schmidt.hpp"
#include "symeof/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace symeof {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void project_unit(std::vector<double>& c) {
    std::vector<double> p = project_monotone_nonneg(c);
    double n2 = dot(p, p);
    if (n2 <= 0.0) {
        std::fill(p.begin(), p.end(), 0.0);
        p[0] = 1.0;
    } else {
        const double inv = 1.0 / std::sqrt(n2);
        for (double& v : p) v *= inv;
    }
    c = std::move(p);
}

double phi_of(std::span<const double> c, double target, double mu, double rho) {
    const double gap = delta_functional(c) - target;
    return entropy_e(c) + mu * gap + 0.5 * rho * gap * gap;
}

void grad_of(std::span<const double> c, double target, double mu, double rho,
             std::span<double> g) {
    const int d = static_cast<int>(c.size());
    const double w = mu + rho * (delta_functional(c) - target);
    for (int n = 0; n < d; ++n) {
        const double v = c[n];
        const double p = v * v;
        double ge = 0.0;
        if (p > 0.0) ge = -2.0 * v * (std::log2(p) + 1.0 / kLn2);
        double gd = 2.0 * n * v;
        if (n > 0) gd -= n * c[n - 1];
        if (n + 1 < d) gd -= (n + 1) * c[n + 1];
        g[n] = ge + w * 2.0 * gd;
    }
}

// Projected Barzilai-Borwein descent with a non-monotone Armijo safeguard.
void inner_minimize(std::vector<double>& c, double target, double mu, double rho,
                    int max_iter) {
    project_unit(c);
    const std::size_t d = c.size();
    std::vector<double> g(d), gt(d), trial(d), s(d);

    grad_of(c, target, mu, rho, g);
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    double t = 1.0 / std::max(1.0, gmax);

    std::array<double, 8> hist;
    hist.fill(phi_of(c, target, mu, rho));
    std::size_t hpos = 0;

    for (int iter = 0; iter < max_iter; ++iter) {
        const double fmax = *std::max_element(hist.begin(), hist.end());
        double step = t;
        double ft = 0.0, ss = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < d; ++i) trial[i] = c[i] - step * g[i];
            project_unit(trial);
            ss = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                s[i] = trial[i] - c[i];
                ss += s[i] * s[i];
            }
            if (ss <= 1e-30) break;
            ft = phi_of(trial, target, mu, rho);
            if (ft <= fmax - 1e-4 * ss / std::max(step, 1e-16)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        grad_of(trial, target, mu, rho, gt);
        double sy = 0.0;
        for (std::size_t i = 0; i < d; ++i) sy += s[i] * (gt[i] - g[i]);
        t = (sy > 1e-18) ? std::clamp(ss / sy, 1e-12, 1e5)
                         : std::min(step * 4.0, 1.0);
        c.swap(trial);
        g.swap(gt);
        hist[hpos] = ft;
        hpos = (hpos + 1) % hist.size();
        if (ss <= 1e-28) break;
    }
}

std::vector<double> restart_point(int k, int d, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1))));
    std::vector<double> c(static_cast<std::size_t>(d));
    if (k == 0) {
        std::fill(c.begin(), c.end(), 1.0);
    } else if (k % 2 == 1) {
        std::uniform_real_distribution<double> uq(0.05, 0.95);
        const double q = uq(rng);
        double v = 1.0;
        for (int n = 0; n < d; ++n) {
            c[n] = v;
            v *= q;
        }
    } else {
        std::normal_distribution<double> nd;
        for (double& v : c) v = std::abs(nd(rng));
        std::sort(c.begin(), c.end(), std::greater<double>());
    }
    project_unit(c);
    return c;
}

struct Candidate {
    std::vector<double> c;
    double value = std::numeric_limits<double>::infinity();
    double feas = std::numeric_limits<double>::infinity();
};

}  // namespace

MinimizeResult minimize_entropy_constrained(double delta, int d,
                                            const MinimizeOptions& opts) {
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::domain_error("minimize_entropy_constrained: delta outside (0, 1)");
    if (d < 10)
        throw std::invalid_argument("minimize_entropy_constrained: d < 10");
    if (opts.restarts < 1)
        throw std::invalid_argument("minimize_entropy_constrained: no restarts");

    std::vector<Candidate> cand(static_cast<std::size_t>(opts.restarts));

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (int k = 0; k < opts.restarts; ++k) {
        std::vector<double> c = restart_point(k, d, opts.seed);
        double mu = 0.0;
        double rho = 10.0;
        double prev_viol = std::numeric_limits<double>::infinity();
        double viol = prev_viol;
        for (int outer = 0; outer < opts.max_outer; ++outer) {
            inner_minimize(c, delta, mu, rho, opts.max_inner);
            viol = delta_functional(c) - delta;
            if (std::abs(viol) <= opts.feasibility_tol && outer >= 2) break;
            mu += rho * viol;
            if (std::abs(viol) > 0.25 * prev_viol) rho = std::min(rho * 10.0, 1e12);
            prev_viol = std::abs(viol);
        }
        Candidate& out = cand[static_cast<std::size_t>(k)];
        out.value = entropy_e(c);
        out.feas = std::abs(viol);
        out.c = std::move(c);
    }

    MinimizeResult res;
    double best_feas = std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int best = -1;
    int fallback = -1;
    for (int k = 0; k < opts.restarts; ++k) {
        const Candidate& q = cand[static_cast<std::size_t>(k)];
        if (q.feas < best_feas) {
            best_feas = q.feas;
            fallback = k;
        }
        if (q.feas <= 1e-8) {
            ++res.restarts_feasible;
            lo = std::min(lo, q.value);
            hi = std::max(hi, q.value);
            if (best < 0 || q.value < cand[static_cast<std::size_t>(best)].value)
                best = k;
        }
    }
    if (best >= 0) {
        res.converged = true;
        res.restart_spread = hi - lo;
    } else {
        best = fallback;
    }
    Candidate& chosen = cand[static_cast<std::size_t>(best)];
    res.c = std::move(chosen.c);
    res.min_bits = chosen.value;
    res.feasibility = chosen.feas;
    return res;
}

}  // namespace symeof
