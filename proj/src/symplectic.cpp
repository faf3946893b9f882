#include "gdiscord/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gdiscord {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kPhysTol = 1e-9;

void check_cov2(const Mat2& m) {
  if (!m.allFinite()) throw std::invalid_argument("covariance block has non-finite entries");
  if (std::abs(m(0, 1) - m(1, 0)) > kSymTol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("covariance block symmetry violation");
  // determinant test is scale-aware: for strongly squeezed blocks the exact
  // determinant is far below the rounding error of the entry products
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double scale = std::abs(m(0, 0) * m(1, 1)) + std::abs(m(0, 1) * m(1, 0));
  if (!(m(0, 0) > 0.0 && m(1, 1) > 0.0 && det > -kSymTol * scale))
    throw std::invalid_argument("covariance block not positive definite");
}

}  // namespace

CovMat2::CovMat2(const Mat2& m) : m_(m) {
  check_cov2(m_);
  // store exactly symmetric
  const double off = 0.5 * (m_(0, 1) + m_(1, 0));
  m_(0, 1) = off;
  m_(1, 0) = off;
}

CovMat2::CovMat2(double xx, double xp, double pp) {
  m_ << xx, xp, xp, pp;
  check_cov2(m_);
}

double CovMat2::det() const {
  return m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(0, 1);
}

std::pair<double, double> CovMat2::eigenvalues() const {
  const double mean = 0.5 * (m_(0, 0) + m_(1, 1));
  const double dev = std::hypot(0.5 * (m_(0, 0) - m_(1, 1)), m_(0, 1));
  return {mean + dev, mean - dev};
}

TwoModeCov::TwoModeCov(const CovMat2& a, const CovMat2& b, const Mat2& c) {
  if (!c.allFinite()) throw std::invalid_argument("correlation block has non-finite entries");
  m_.topLeftCorner<2, 2>() = a.mat();
  m_.bottomRightCorner<2, 2>() = b.mat();
  m_.topRightCorner<2, 2>() = c;
  m_.bottomLeftCorner<2, 2>() = c.transpose();
}

TwoModeCov TwoModeCov::from_matrix(const Mat4& m) {
  if (!m.allFinite()) throw std::invalid_argument("covariance has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale)
    throw std::invalid_argument("two-mode covariance symmetry violation");
  const Mat4 s = 0.5 * (m + m.transpose());
  return TwoModeCov(CovMat2(Mat2(s.topLeftCorner<2, 2>())),
                    CovMat2(Mat2(s.bottomRightCorner<2, 2>())),
                    Mat2(s.topRightCorner<2, 2>()));
}

double TwoModeCov::det() const { return m_.determinant(); }

StandardFormParams::StandardFormParams(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (!(a >= 1.0 - kPhysTol) || !(b >= 1.0 - kPhysTol))
    throw std::invalid_argument("standard form requires a >= 1 and b >= 1");
  if (c < -kSymTol || c + kSymTol < std::abs(d))
    throw std::invalid_argument("standard form sign convention requires c >= |d| and c >= 0");
}

TwoModeCov StandardFormParams::to_cov() const { return make_standard_cov(a, b, c, d); }

Mat2 rotation2(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

Mat4 symplectic_form() {
  Mat4 j = Mat4::Zero();
  j(0, 1) = 1.0;
  j(1, 0) = -1.0;
  j(2, 3) = 1.0;
  j(3, 2) = -1.0;
  return j;
}

Mat4 beamsplitter(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("beamsplitter transmissivity outside [0, 1]");
  const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
  Mat4 b = Mat4::Zero();
  b(0, 0) = t;
  b(1, 1) = t;
  b(2, 2) = t;
  b(3, 3) = t;
  b(0, 2) = -r;
  b(1, 3) = -r;
  b(2, 0) = r;
  b(3, 1) = r;
  return b;
}

Mat4 phase_rotation(double phi_a, double phi_b) {
  Mat4 r = Mat4::Zero();
  r.topLeftCorner<2, 2>() = rotation2(phi_a);
  r.bottomRightCorner<2, 2>() = rotation2(phi_b);
  return r;
}

Mat4 squeezer(double r_a, double r_b) {
  Mat4 s = Mat4::Zero();
  s(0, 0) = std::exp(r_a);
  s(1, 1) = std::exp(-r_a);
  s(2, 2) = std::exp(r_b);
  s(3, 3) = std::exp(-r_b);
  return s;
}

std::pair<double, double> symplectic_eigenvalues(const TwoModeCov& cov) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(cov.mat());
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed on covariance");
  Eigen::Vector4d ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0)
    throw std::runtime_error("covariance not positive definite in symplectic spectrum");
  const Mat4 root = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Mat4 k = root * symplectic_form() * root;  // antisymmetric
  const Mat4 w = k.transpose() * k;                // = -(K)^2, eigenvalues nu^2 (each twice)
  Eigen::SelfAdjointEigenSolver<Mat4> ws(0.5 * (w + w.transpose()));
  if (ws.info() != Eigen::Success) throw std::runtime_error("eigensolve failed on symplectic square");
  Eigen::Vector4d q = ws.eigenvalues().cwiseMax(0.0);
  const double nu_small = std::sqrt(0.5 * (q(0) + q(1)));
  const double nu_large = std::sqrt(0.5 * (q(2) + q(3)));
  return {nu_large, nu_small};
}

bool physicality_check(const TwoModeCov& cov) {
  Eigen::LLT<Mat4> llt(cov.mat());
  if (llt.info() != Eigen::Success) return false;
  return symplectic_eigenvalues(cov).second >= 1.0 - kPhysTol;
}

StandardFormParams standard_form_reduce(const TwoModeCov& cov) {
  const double det_a = cov.block_a().determinant();
  const double det_b = cov.block_b().determinant();
  const double det_c = cov.block_c().determinant();
  const double det_s = cov.det();
  if (det_a <= 0.0 || det_b <= 0.0)
    throw std::runtime_error("standard form reduction: marginal with non-positive determinant");
  const double a = std::sqrt(det_a);
  const double b = std::sqrt(det_b);

  // c*d = det C and c^2 + d^2 = u follow from the four invariants
  const double p = det_c;
  double u = (det_a * det_b + p * p - det_s) / (a * b);
  const double uscale = std::max({1.0, std::abs(u), std::abs(p)});
  if (u < -1e-9 * uscale)
    throw std::runtime_error("standard form reduction: inconsistent symplectic invariants");
  u = std::max(u, 0.0);
  double disc = u * u - 4.0 * p * p;
  if (disc < -1e-9 * uscale * uscale)
    throw std::runtime_error("standard form reduction: inconsistent symplectic invariants");
  disc = std::max(disc, 0.0);

  const double c2 = 0.5 * (u + std::sqrt(disc));
  const double c = std::sqrt(std::max(c2, 0.0));
  const double d = c > 1e-150 ? p / c : 0.0;
  return StandardFormParams(a, b, c, d);
}

bool is_entangled(const StandardFormParams& p) {
  const TwoModeCov ppt = make_standard_cov(p.a, p.b, p.c, -p.d);
  return symplectic_eigenvalues(ppt).second < 1.0 - kPhysTol;
}

TwoModeCov make_standard_cov(double a, double b, double c, double d) {
  Mat2 cc;
  cc << c, 0.0, 0.0, d;
  return TwoModeCov(CovMat2(a, 0.0, a), CovMat2(b, 0.0, b), cc);
}

}  // namespace gdiscord
