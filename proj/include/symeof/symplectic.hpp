#pragma once

#include <Eigen/Dense>

namespace symeof {

using Mat4 = Eigen::Matrix4d;

/// Default absolute tolerance for symmetry and eigenvalue tests.
inline constexpr double default_tol = 1e-9;

/// Antisymmetric form encoding [X, P] = i per mode, ordering (X_A, P_A, X_B, P_B).
/// Satisfies omega^2 = -identity.
Mat4 symplectic_form();

/// Parameters of the two-mode standard form
///   [[ n, 0, kx, 0], [0, n, 0, -kp], [kx, 0, m, 0], [0, -kp, 0, m]].
/// kx >= |kp| after canonical ordering; kp < 0 marks states whose X and P
/// cross-correlations carry the same sign (those are never entangled).
struct StandardForm {
    double n = 1.0;
    double m = 1.0;
    double kx = 0.0;
    double kp = 0.0;
};

struct ValidityReport {
    bool valid = false;
    bool symmetric_matrix = false;
    double min_eig = 0.0;  // smallest eigenvalue of gamma + i*omega
};

/// Standard-form entries after the local squeezing that equalizes
/// n_x - k_x and n_p - k_p. X-block is diag(nx) with off-diagonal kx,
/// P-block diag(np) with off-diagonal -kp.
struct BalancedForm {
    double nx = 1.0;
    double kx = 0.0;
    double np = 1.0;
    double kp = 0.0;
    Mat4 matrix() const;
};

/// A 4x4 real matrix is a covariance matrix iff it is symmetric and
/// gamma + i*omega >= 0. Vacuum normalization: gamma_vac = identity.
/// Throws std::invalid_argument on non-finite entries.
ValidityReport validate_cm(const Mat4& gamma, double tol = default_tol);

/// Recovers (n, m, kx, kp) from the four local symplectic invariants
/// det A, det B, det C and det gamma. Requires a valid CM.
StandardForm reduce_to_standard_form(const Mat4& gamma, double tol = default_tol);

/// Scales X entries by s^2 and P entries by 1/s^2 with
/// s = ((n-kp)/(n-kx))^(1/4), so that nx-kx = np-kp = sqrt((n-kx)(n-kp)).
/// Rejects n <= kx (singular regime) and asymmetric params.
BalancedForm apply_balancing_squeezing(const StandardForm& p, double tol = default_tol);

/// true iff a - b is positive semidefinite within tol.
bool psd_order(const Mat4& a, const Mat4& b, double tol = default_tol);

/// Covariance matrix of the two-mode squeezed vacuum with parameter r >= 0:
/// diagonal cosh(2r), off-diagonal diag(sinh 2r, -sinh 2r).
Mat4 tmss_cm(double r);

Mat4 standard_form_cm(const StandardForm& p);

// Building blocks for local-symplectic conjugations (used heavily in tests).
Eigen::Matrix2d mode_rotation(double theta);
Eigen::Matrix2d mode_squeeze(double z);  // diag(e^z, e^-z)
Mat4 local_symplectic(const Eigen::Matrix2d& sa, const Eigen::Matrix2d& sb);

/// Heisenberg-picture symplectic of the two-mode squeezer; tmss_cm(r) equals
/// two_mode_squeeze(r) * two_mode_squeeze(r)^T.
Mat4 two_mode_squeeze(double r);

}  // namespace symeof
