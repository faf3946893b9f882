#pragma once

#include "gdiscord/symplectic.hpp"

namespace gdiscord {

// Smallest allowed squeezing parameter; stands in for the exact homodyne
// limit l -> 0 inside the bounded search spaces. The *_homodyne functions
// below evaluate the exact limit instead.
inline constexpr double kHomodyneFloor = 1e-9;

// Differential entropy constant per mode, ln(2*pi*e).
double entropy_offset();

// Rank-one Gaussian measurement on one mode: covariance
// R(theta) diag(l, 1/l) R(theta)^T. l = 1 is heterodyne, l -> 0 homodyne of
// the theta-rotated x quadrature. theta is wrapped into [0, pi).
struct LocalMeasurement {
  double theta;
  double l;
  LocalMeasurement(double theta, double l);
};

// R(theta) diag(l, 1/l) R(theta)^T for any l > 0 (no upper bound; the
// (l, theta) -> (1/l, theta + pi/2) symmetry maps back into l <= 1).
CovMat2 squeezed_vacuum_cov(double theta, double l);

CovMat2 local_povm_cov(const LocalMeasurement& m);

// Rank-one joint Gaussian measurement on both modes: local phase rotations,
// a beamsplitter of transmissivity eta, then a product of single-mode
// measurements. eta = 1 with zero phases reduces to the local product.
struct JointMeasurement {
  double phi_a;
  double phi_b;
  double eta;
  LocalMeasurement m_a;
  LocalMeasurement m_b;
  JointMeasurement(double phi_a, double phi_b, double eta, LocalMeasurement m_a,
                   LocalMeasurement m_b);
};

Mat4 joint_povm_cov(const JointMeasurement& m);

// Covariance of the measurement outcome distribution, sigma + mu.
TwoModeCov outcome_cov(const TwoModeCov& state, const Mat4& mu);

// Conditional covariance of mode A's outcomes given mode B's, for a product
// of local measurements: A + mu_a - C (B + mu_b)^-1 C^T.
CovMat2 conditional_cov_local(const TwoModeCov& state, const LocalMeasurement& m_a,
                              const LocalMeasurement& m_b);

// Same Schur complement for a joint measurement. Evaluated in the frame where
// the measurement noise is diagonal, which stays stable down to l = 0.
CovMat2 conditional_cov_joint(const TwoModeCov& state, const JointMeasurement& m);

// Conditional covariance of mode A's *state* after measuring B only:
// A - C (B + mu_b)^-1 C^T.
CovMat2 conditional_state_cov(const TwoModeCov& state, const LocalMeasurement& m_b);

// Generic Schur-complement route for an arbitrary (possibly mixed) added
// noise matrix mu; independent code path used for cross checks.
CovMat2 conditional_cov_from_mu(const TwoModeCov& state, const Mat4& mu);

// Exact l -> 0 limits (sharp quadrature measurements).
CovMat2 conditional_cov_local_homodyne(const TwoModeCov& state, const LocalMeasurement& m_a,
                                       double theta_b);
CovMat2 conditional_state_cov_homodyne(const TwoModeCov& state, double theta_b);
CovMat2 conditional_cov_joint_homodyne(const TwoModeCov& state, double phi_a, double phi_b,
                                       double eta, double theta_a, double theta_b);

// Differential entropy of a Gaussian distribution with the given covariance,
// in nats: 1/2 ln det + k ln(2*pi*e).
double gaussian_entropy(const CovMat2& cov);
double gaussian_entropy(const TwoModeCov& cov);

// (1/2) ln det of the conditional outcome covariance of mode A, computed from
// a Cholesky factor of the outcome covariance in the measurement frame plus a
// thin QR. Keeps full relative accuracy at the homodyne floor, where entries
// of the assembled conditional span ~1/l scales and its determinant cancels
// catastrophically. The local overload evaluates the joint frame at eta = 1,
// so local and joint values are bit-identical on product measurements.
double conditional_half_log_det(const TwoModeCov& state, const LocalMeasurement& m_a,
                                const LocalMeasurement& m_b);
double conditional_half_log_det(const TwoModeCov& state, const JointMeasurement& m);

double conditional_entropy(const TwoModeCov& state, const LocalMeasurement& m_a,
                           const LocalMeasurement& m_b);
double conditional_entropy(const TwoModeCov& state, const JointMeasurement& m);

}  // namespace gdiscord
