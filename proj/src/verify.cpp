#include "symeof/verify.hpp"

#include "symeof/closed_form.hpp"
#include "symeof/fock.hpp"
#include "symeof/schmidt.hpp"
#include "symeof/symplectic.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace symeof {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> trial_schmidt_spec(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> len_dist(1, d);
    const int len = len_dist(rng);
    std::normal_distribution<double> nd;
    std::vector<double> c(static_cast<std::size_t>(len));
    for (double& v : c) v = std::abs(nd(rng));
    std::sort(c.begin(), c.end(), std::greater<double>());
    double n2 = 0.0;
    for (double v : c) n2 += v * v;
    if (n2 <= 0.0) {
        c.assign(1, 1.0);
        return c;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : c) v *= inv;
    return c;
}

std::string dump_sequence(const std::vector<double>& c) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
    os << "]";
    return os.str();
}

}  // namespace

std::vector<double> lemma1_margins(std::uint64_t seed, int trials, int max_dim,
                                   bool parallel) {
    std::vector<double> margins(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
        std::mt19937_64 rng(s);
        std::uniform_int_distribution<int> dim_dist(2, max_dim);
        const int d = dim_dist(rng);
        const std::vector<double> spec = trial_schmidt_spec(rng, d);
        const TruncatedPureState psi = random_state(s, d, spec);
        margins[static_cast<std::size_t>(i)] =
            epr_uncertainty_state(psi) - delta_functional(spec);
    }
    return margins;
}

std::vector<double> prop1_margins(std::uint64_t seed, int trials, int max_dim,
                                  bool parallel) {
    std::vector<double> margins(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s =
            splitmix64(seed ^ splitmix64(0x50524f5031ULL + static_cast<std::uint64_t>(i)));
        std::mt19937_64 rng(s);
        std::uniform_int_distribution<int> dim_dist(3, max_dim);
        const int d = dim_dist(rng);
        TruncatedPureState psi = [&]() {
            switch (i % 3) {
                case 0:  // unstructured grid
                    return random_state(s, d);
                case 1: {  // prescribed Schmidt coefficients, random bases
                    const std::vector<double> spec = trial_schmidt_spec(rng, d);
                    return random_state(s, d, spec);
                }
                default: {  // Fock-ordered diagonal, the tight regime
                    const std::vector<double> spec = trial_schmidt_spec(rng, d);
                    Grid g = Grid::Zero(d, d);
                    for (std::size_t n = 0; n < spec.size(); ++n)
                        g(static_cast<int>(n), static_cast<int>(n)) = spec[n];
                    return TruncatedPureState(std::move(g));
                }
            }
        }();
        margins[static_cast<std::size_t>(i)] = prop1_check(psi).margin;
    }
    return margins;
}

SuiteResult run_lemma1(const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "lemma1";
    const std::vector<double> margins =
        lemma1_margins(opts.seed, opts.trials, opts.dim, opts.parallel);
    res.checks = opts.trials;
    res.worst = *std::min_element(margins.begin(), margins.end());
    res.pass = res.worst >= -opts.tol;
    std::ostringstream os;
    os << "EPR uncertainty >= delta(c) on " << opts.trials
       << " random states (dim <= " << opts.dim << "), worst margin " << res.worst;
    res.detail = os.str();
    if (!res.pass) {
        const auto it = std::min_element(margins.begin(), margins.end());
        const int idx = static_cast<int>(it - margins.begin());
        std::ostringstream ce;
        ce << "trial " << idx << " (seed " << opts.seed << "): margin " << *it;
        res.counterexample = ce.str();
    }
    res.seconds = seconds_since(t0);
    return res;
}

SuiteResult run_prop1(const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "prop1";
    const std::vector<double> margins =
        prop1_margins(opts.seed, opts.trials, opts.dim, opts.parallel);
    res.checks = opts.trials;
    res.worst = *std::min_element(margins.begin(), margins.end());

    // equality witnesses: truncated two-mode squeezed states
    double worst_gap = 0.0;
    for (double r : {0.3, 0.6, 1.0}) {
        const Prop1Result pr = prop1_check(tmss_state(r, 60));
        worst_gap = std::max(worst_gap, std::abs(pr.margin));
    }
    res.pass = res.worst >= -opts.tol && worst_gap <= 1e-6;
    std::ostringstream os;
    os << "entropy >= f(EPR uncertainty) on " << opts.trials
       << " random states, worst margin " << res.worst
       << "; squeezed-state equality gap " << worst_gap;
    res.detail = os.str();
    if (!res.pass) {
        const auto it = std::min_element(margins.begin(), margins.end());
        std::ostringstream ce;
        ce << "worst trial " << (it - margins.begin()) << " (seed " << opts.seed
           << "): margin " << *it << "; equality gap " << worst_gap;
        res.counterexample = ce.str();
    }
    res.seconds = seconds_since(t0);
    return res;
}

SuiteResult run_lemma2(const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "lemma2";
    res.pass = true;
    std::ostringstream os;
    for (double delta : opts.deltas) {
        MinimizeOptions mo;
        mo.seed = opts.seed;
        mo.parallel = opts.parallel;
        const MinimizeResult mr = minimize_entropy_constrained(delta, opts.seq_len, mo);
        const double target = f_of_delta(delta);
        const double value_err = mr.min_bits - target;
        const double q = (1.0 - delta) / (1.0 + delta);
        double ratio_err = 0.0;
        for (int n = 0; n < 10 && n + 1 < static_cast<int>(mr.c.size()); ++n) {
            if (mr.c[static_cast<std::size_t>(n)] <= 0.0) {
                ratio_err = 1.0;
                break;
            }
            ratio_err = std::max(ratio_err,
                                 std::abs(mr.c[static_cast<std::size_t>(n) + 1] /
                                              mr.c[static_cast<std::size_t>(n)] -
                                          q));
        }
        const bool ok = mr.converged && std::abs(value_err) <= opts.value_tol &&
                        ratio_err <= opts.ratio_tol && mr.feasibility <= 1e-8;
        res.checks += 1;
        res.worst = std::max({res.worst, std::abs(value_err), ratio_err});
        os << "delta=" << delta << ": min " << mr.min_bits << " vs f " << target
           << " (err " << value_err << ", ratio err " << ratio_err << ", feas "
           << mr.feasibility << ", spread " << mr.restart_spread << ", "
           << mr.restarts_feasible << " feasible restarts)";
        os << (ok ? "; " : " FAILED; ");
        if (!ok) {
            res.pass = false;
            std::ostringstream ce;
            ce << "delta=" << delta << " d=" << opts.seq_len << " seed=" << opts.seed
               << " minimizer=" << dump_sequence(mr.c);
            res.counterexample += ce.str() + " ";
        }
    }
    res.detail = os.str();
    res.seconds = seconds_since(t0);
    return res;
}

SuiteResult run_recursion(const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "recursion";
    const double x_star = std::exp(-2.0 * opts.r);
    const RecursionResult fixed = recursion_iterate(opts.r, x_star, opts.n_max, opts.fp_tol);
    const bool down_ok = [&] {
        if (x_star - opts.perturb <= 0.0) return true;  // perturbation leaves (0,1]
        return recursion_iterate(opts.r, x_star - opts.perturb, opts.n_max).classification ==
               TrajectoryClass::collapses;
    }();
    const bool up_ok = [&] {
        if (x_star + opts.perturb > 1.0) return true;
        return recursion_iterate(opts.r, x_star + opts.perturb, opts.n_max).classification ==
               TrajectoryClass::escapes_normalization;
    }();
    const bool fixed_ok = fixed.classification == TrajectoryClass::fixed_point;
    res.pass = fixed_ok && down_ok && up_ok;
    res.checks = 3;
    res.worst = fixed.max_dev_from_x0;
    std::ostringstream os;
    os << "r=" << opts.r << ": x0=e^{-2r} " << (fixed_ok ? "fixed" : "NOT fixed")
       << " (max dev " << fixed.max_dev_from_x0 << " over " << opts.n_max
       << " steps), -" << opts.perturb << " " << (down_ok ? "collapses" : "WRONG")
       << ", +" << opts.perturb << " " << (up_ok ? "escapes" : "WRONG");
    res.detail = os.str();
    if (!res.pass) res.counterexample = res.detail;
    res.seconds = seconds_since(t0);
    return res;
}

SuiteResult run_d0(const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult res;
    res.name = "d0";
    const StandardForm sf{opts.n, opts.n, opts.kx, opts.kp};
    const BalancedForm bf = apply_balancing_squeezing(sf);
    D0Options d0;
    d0.run_monte_carlo = opts.samples > 0;
    d0.mc_dim = opts.mc_dim;
    d0.mc_samples = opts.samples;
    d0.seed = opts.seed;
    d0.parallel = opts.parallel;
    const D0Report rep = d0_moment_check(bf.matrix(), d0);
    res.checks = rep.mc_run ? 2 : 1;
    res.worst = std::max(rep.analytic_max_dev, rep.mc_max_dev);
    res.pass = rep.applicable && rep.analytic_max_dev <= opts.analytic_tol &&
               (!rep.mc_run || rep.mc_max_dev <= opts.mc_tol);
    std::ostringstream os;
    os << "(n, kx, kp) = (" << opts.n << ", " << opts.kx << ", " << opts.kp
       << "), delta " << rep.delta << ": "
       << (rep.applicable ? "applicable" : "NOT applicable") << ", analytic dev "
       << rep.analytic_max_dev;
    if (rep.mc_run)
        os << ", monte carlo dev " << rep.mc_max_dev << " (" << rep.mc_samples
           << " samples, dim " << opts.mc_dim << ")";
    res.detail = os.str();
    if (!res.pass) res.counterexample = res.detail;
    res.seconds = seconds_since(t0);
    return res;
}

}  // namespace symeof
