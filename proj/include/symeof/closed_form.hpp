#pragma once

#include "symeof/symplectic.hpp"

#include <utility>

namespace symeof {

// All entropies are in bits (log base 2).

/// r = -ln(delta)/2 for delta in (0, 1].
double r_of_delta(double delta);

/// EPR uncertainty of the two-mode squeezed state, e^(-2r).
double delta_of_tmss(double r);

/// Entropy of entanglement of the two-mode squeezed state:
/// cosh^2(r) log2 cosh^2(r) - sinh^2(r) log2 sinh^2(r). Exactly 0 at r = 0.
double entropy_of_tmss(double r);

/// c_plus = (1+delta)^2/(4 delta), c_minus = (1-delta)^2/(4 delta);
/// c_plus - c_minus = 1 identically.
std::pair<double, double> c_plus_minus(double delta);

/// f(delta) = c_plus log2 c_plus - c_minus log2 c_minus, with 0*log 0 = 0.
/// Strictly decreasing and convex on (0, 1]; f(1) = 0.
double f_of_delta(double delta);

/// min(1, sqrt((n-kx)(n-kp))) for symmetric params (m = n within tol).
/// Throws std::domain_error on asymmetric input.
double epr_uncertainty_of_standard_form(const StandardForm& p, double tol = default_tol);

/// Entanglement criterion for symmetric states: (n-kx)(n-kp) < 1 - tol.
bool is_entangled(const StandardForm& p, double tol = default_tol);

struct EntanglementReport {
    bool valid = false;
    bool symmetric = false;
    bool separable = true;
    double delta = 1.0;
    double r_delta = 0.0;
    double eof_bits = 0.0;
    StandardForm standard_form;
    double min_eig = 0.0;
};

/// Entanglement of formation of a symmetric two-mode Gaussian state:
/// reduce to standard form, then eof = f(sqrt((n-kx)(n-kp))) if entangled,
/// 0 if separable. Invalid or asymmetric inputs are flagged in the report
/// (delta/r_delta/eof_bits are NaN) and never silently evaluated.
EntanglementReport eof_symmetric(const Mat4& gamma, double tol = default_tol);

}  // namespace symeof
