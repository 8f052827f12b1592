#include "symeof/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace symeof {

namespace {
constexpr double kLn2 = std::numbers::ln2;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

double r_of_delta(double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::domain_error("r_of_delta: delta must lie in (0, 1]");
    return -0.5 * std::log(delta);
}

double delta_of_tmss(double r) {
    if (r < 0.0) throw std::domain_error("delta_of_tmss: negative squeezing");
    return std::exp(-2.0 * r);
}

double entropy_of_tmss(double r) {
    if (r < 0.0) throw std::domain_error("entropy_of_tmss: negative squeezing");
    const double sh = std::sinh(r);
    const double s2 = sh * sh;
    if (s2 == 0.0) return 0.0;
    const double c2 = 1.0 + s2;
    // c2 log2 c2 - s2 log2 s2, written with log1p for small r
    return (c2 * std::log1p(s2) - s2 * std::log(s2)) / kLn2;
}

std::pair<double, double> c_plus_minus(double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::domain_error("c_plus_minus: delta must lie in (0, 1]");
    const double cp = (1.0 + delta) * (1.0 + delta) / (4.0 * delta);
    const double cm = (1.0 - delta) * (1.0 - delta) / (4.0 * delta);
    return {cp, cm};
}

double f_of_delta(double delta) {
    const auto [cp, cm] = c_plus_minus(delta);
    double f = cp * std::log2(cp);
    if (cm > 0.0) f -= cm * std::log2(cm);
    return f;
}

double epr_uncertainty_of_standard_form(const StandardForm& p, double tol) {
    if (std::abs(p.m - p.n) > tol * std::max(1.0, p.n))
        throw std::domain_error("epr_uncertainty_of_standard_form: asymmetric state");
    const double prod = (p.n - p.kx) * (p.n - p.kp);
    return std::min(1.0, std::sqrt(std::max(prod, 0.0)));
}

bool is_entangled(const StandardForm& p, double tol) {
    return (p.n - p.kx) * (p.n - p.kp) < 1.0 - tol;
}

EntanglementReport eof_symmetric(const Mat4& gamma, double tol) {
    EntanglementReport rep;
    const ValidityReport v = validate_cm(gamma, tol);
    rep.valid = v.valid;
    rep.min_eig = v.min_eig;
    if (!v.valid) {
        rep.symmetric = false;
        rep.delta = rep.r_delta = rep.eof_bits = kNaN;
        return rep;
    }
    const StandardForm sf = reduce_to_standard_form(gamma, tol);
    rep.standard_form = sf;
    rep.symmetric = std::abs(sf.m - sf.n) <= tol * std::max(1.0, sf.n);
    if (!rep.symmetric) {
        rep.delta = rep.r_delta = rep.eof_bits = kNaN;
        return rep;
    }
    StandardForm sym = sf;
    sym.n = sym.m = 0.5 * (sf.n + sf.m);
    rep.delta = epr_uncertainty_of_standard_form(sym, tol);
    rep.r_delta = r_of_delta(rep.delta);
    rep.separable = !is_entangled(sym, tol);
    rep.eof_bits = rep.separable ? 0.0 : f_of_delta(rep.delta);
    return rep;
}

}  // namespace symeof
