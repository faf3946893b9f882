#pragma once

#include <Eigen/Dense>

#include <utility>

namespace gdiscord {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;

// Quadrature ordering is (x_A, p_A, x_B, p_B) and the vacuum covariance is the
// identity, so every physical covariance matrix satisfies nu >= 1 for all
// symplectic eigenvalues nu.

// Symmetric positive definite 2x2 covariance block. The constructor rejects
// asymmetry above 1e-12 (absolute) and non positive definite input, so a value
// of this type is always a usable covariance.
class CovMat2 {
public:
  explicit CovMat2(const Mat2& m);
  CovMat2(double xx, double xp, double pp);

  const Mat2& mat() const { return m_; }
  double det() const;
  double trace() const { return m_.trace(); }
  double operator()(int r, int c) const { return m_(r, c); }

  // eigenvalues, descending
  std::pair<double, double> eigenvalues() const;

private:
  Mat2 m_;
};

// Two-mode covariance [[A, C], [C^T, B]]. A and B must be valid covariance
// blocks and the assembled matrix symmetric; physicality (nu_min >= 1) is a
// separate check so that unphysical matrices can still be represented and
// diagnosed.
class TwoModeCov {
public:
  TwoModeCov(const CovMat2& a, const CovMat2& b, const Mat2& c);
  static TwoModeCov from_matrix(const Mat4& m);

  const Mat4& mat() const { return m_; }
  Mat2 block_a() const { return m_.topLeftCorner<2, 2>(); }
  Mat2 block_b() const { return m_.bottomRightCorner<2, 2>(); }
  Mat2 block_c() const { return m_.topRightCorner<2, 2>(); }
  double det() const;

private:
  explicit TwoModeCov(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

// Local-invariant description a*I, b*I, diag(c, d) with the sign convention
// c >= |d|, c >= 0 (reachable from any state by local rotations).
struct StandardFormParams {
  double a;
  double b;
  double c;
  double d;

  StandardFormParams(double a, double b, double c, double d);
  TwoModeCov to_cov() const;
};

Mat2 rotation2(double theta);

// block-diagonal symplectic form J, J^2 = -I
Mat4 symplectic_form();

// Two-mode beamsplitter with transmissivity eta in [0, 1]; eta = 1 is the
// identity, eta = 1/2 the balanced splitter.
Mat4 beamsplitter(double eta);

// Local phase rotations R(phi_a) (+) R(phi_b).
Mat4 phase_rotation(double phi_a, double phi_b);

// Local squeezers diag(e^r, e^-r) per mode.
Mat4 squeezer(double r_a, double r_b);

// Symplectic eigenvalues (nu1 >= nu2), computed from the spectrum of the
// symmetric matrix -(J sigma)^2 via the similarity sigma^1/2 J sigma^1/2,
// which keeps everything in real symmetric eigensolves.
std::pair<double, double> symplectic_eigenvalues(const TwoModeCov& cov);

// true iff positive definite and nu_min >= 1 - 1e-9
bool physicality_check(const TwoModeCov& cov);

// Reduce to standard form using only the local symplectic invariants
// det A, det B, det C, det sigma. Throws if the invariants admit no real
// solution (unphysical or inconsistent input).
StandardFormParams standard_form_reduce(const TwoModeCov& cov);

// Positive partial transpose test (d -> -d); exact for two-mode states.
bool is_entangled(const StandardFormParams& p);

// Assemble a*I, b*I, diag(c, d) without the standard-form sign convention.
TwoModeCov make_standard_cov(double a, double b, double c, double d);

}  // namespace gdiscord
