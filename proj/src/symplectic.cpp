#include "symeof/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace symeof {

Mat4 symplectic_form() {
    Mat4 omega = Mat4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

namespace {

using Complexd = std::complex<double>;

double min_eig_gamma_plus_iomega(const Mat4& gamma) {
    Eigen::Matrix4cd h = gamma.cast<Complexd>();
    h += Complexd(0.0, 1.0) * symplectic_form().cast<Complexd>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

ValidityReport validate_cm(const Mat4& gamma, double tol) {
    if (!gamma.allFinite())
        throw std::invalid_argument("covariance matrix has non-finite entries");
    ValidityReport rep;
    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    rep.symmetric_matrix =
        (gamma - gamma.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
    const Mat4 sym = 0.5 * (gamma + gamma.transpose());
    rep.min_eig = min_eig_gamma_plus_iomega(sym);
    rep.valid = rep.symmetric_matrix && rep.min_eig >= -tol;
    return rep;
}

StandardForm reduce_to_standard_form(const Mat4& gamma, double tol) {
    const ValidityReport rep = validate_cm(gamma, tol);
    if (!rep.valid)
        throw std::invalid_argument("reduce_to_standard_form: not a valid covariance matrix");

    const Mat4 g = 0.5 * (gamma + gamma.transpose());
    const Eigen::Matrix2d a = g.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = g.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = g.block<2, 2>(0, 2);
    const double det_a = a.determinant();
    const double det_b = b.determinant();
    const double det_c = c.determinant();
    const double det_g = g.determinant();

    StandardForm p;
    p.n = std::sqrt(std::max(det_a, 0.0));
    p.m = std::sqrt(std::max(det_b, 0.0));
    const double nm = p.n * p.m;
    if (nm <= 0.0)
        throw std::runtime_error("reduce_to_standard_form: degenerate mode block");

    // det gamma = (nm - kx^2)(nm - kp^2) and det C = -kx kp give a quadratic
    // for kx^2, kp^2.
    const double p2 = det_c * det_c;
    double s = (nm * nm + p2 - det_g) / nm;  // kx^2 + kp^2
    s = std::max(s, 0.0);
    double disc = s * s - 4.0 * p2;
    disc = std::max(disc, 0.0);  // repeated root resolved as kx = kp
    const double t_plus = 0.5 * (s + std::sqrt(disc));
    p.kx = std::sqrt(std::max(t_plus, 0.0));
    p.kp = (p.kx > 1e-300) ? -det_c / p.kx : 0.0;

    // invariants must be reproduced or the quadratic solve was ill-conditioned
    const double det_g_check = (nm - p.kx * p.kx) * (nm - p.kp * p.kp);
    const double scale = std::max(1.0, std::abs(det_g));
    if (std::abs(det_g_check - det_g) > 1e-6 * scale)
        throw std::runtime_error("reduce_to_standard_form: inconsistent invariants");
    return p;
}

BalancedForm apply_balancing_squeezing(const StandardForm& p, double tol) {
    if (std::abs(p.m - p.n) > tol * std::max(1.0, p.n))
        throw std::domain_error("apply_balancing_squeezing: asymmetric state");
    if (!(p.n - p.kx > 0.0))
        throw std::domain_error("apply_balancing_squeezing: n <= kx boundary");
    const double s2 = std::sqrt((p.n - p.kp) / (p.n - p.kx));
    return BalancedForm{p.n * s2, p.kx * s2, p.n / s2, p.kp / s2};
}

Mat4 BalancedForm::matrix() const {
    Mat4 g = Mat4::Zero();
    g(0, 0) = g(2, 2) = nx;
    g(1, 1) = g(3, 3) = np;
    g(0, 2) = g(2, 0) = kx;
    g(1, 3) = g(3, 1) = -kp;
    return g;
}

bool psd_order(const Mat4& a, const Mat4& b, double tol) {
    const Mat4 diff = 0.5 * ((a - b) + (a - b).transpose());
    Eigen::SelfAdjointEigenSolver<Mat4> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

Mat4 tmss_cm(double r) {
    if (r < 0.0) throw std::domain_error("tmss_cm: negative squeezing");
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Mat4 g = Mat4::Zero();
    g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = c;
    g(0, 2) = g(2, 0) = s;
    g(1, 3) = g(3, 1) = -s;
    return g;
}

Mat4 standard_form_cm(const StandardForm& p) {
    Mat4 g = Mat4::Zero();
    g(0, 0) = g(1, 1) = p.n;
    g(2, 2) = g(3, 3) = p.m;
    g(0, 2) = g(2, 0) = p.kx;
    g(1, 3) = g(3, 1) = -p.kp;
    return g;
}

Eigen::Matrix2d mode_rotation(double theta) {
    Eigen::Matrix2d r;
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return r;
}

Eigen::Matrix2d mode_squeeze(double z) {
    Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
    s(0, 0) = std::exp(z);
    s(1, 1) = std::exp(-z);
    return s;
}

Mat4 local_symplectic(const Eigen::Matrix2d& sa, const Eigen::Matrix2d& sb) {
    Mat4 s = Mat4::Zero();
    s.block<2, 2>(0, 0) = sa;
    s.block<2, 2>(2, 2) = sb;
    return s;
}

Mat4 two_mode_squeeze(double r) {
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    Mat4 m = Mat4::Zero();
    m(0, 0) = c;  m(0, 2) = s;
    m(1, 1) = c;  m(1, 3) = -s;
    m(2, 0) = s;  m(2, 2) = c;
    m(3, 1) = -s; m(3, 3) = c;
    return m;
}

}  // namespace symeof
