#include "gdiscord/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gdiscord {

namespace {

constexpr double kCondLimit = 1e14;

double wrap_angle_pi(double theta) {
  double y = std::fmod(theta, std::numbers::pi);
  if (y < 0.0) y += std::numbers::pi;
  if (y >= std::numbers::pi) y = 0.0;
  return y;
}

// inverse of a symmetric positive definite 2x2 with a conditioning guard
Mat2 inv_spd2(const Mat2& m, const char* context) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double dev = std::hypot(0.5 * (m(0, 0) - m(1, 1)), 0.5 * (m(0, 1) + m(1, 0)));
  const double lo = mean - dev, hi = mean + dev;
  if (!(lo > 0.0) || hi > kCondLimit * lo)
    throw std::runtime_error(std::string(context) + ": matrix numerically singular");
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Mat2 inv;
  inv << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return inv;
}

Mat2 symmetrized(const Mat2& m) {
  Mat2 s = 0.5 * (m + m.transpose());
  return s;
}

// orthogonal symplectic frame in which the measurement noise is
// diag(l_a, 1/l_a, l_b, 1/l_b)
Mat4 measurement_frame(double phi_a, double phi_b, double eta, double theta_a, double theta_b) {
  return phase_rotation(theta_a, theta_b).transpose() * beamsplitter(eta) *
         phase_rotation(phi_a, phi_b);
}

// (1/2) ln det of the A-outcome conditional via Cholesky of the outcome
// covariance in the measurement frame and a thin QR. The small singular value
// of the 4x2 solve carries the sharp conditional direction at linear (not
// squared) scale, so nothing cancels even at l = kHomodyneFloor.
double stable_half_log_det(const Mat4& sigma, const Mat4& st, double l_a, double l_b) {
  Mat4 t = st * sigma * st.transpose();
  t = 0.5 * (t + t.transpose());
  t(0, 0) += l_a;
  t(1, 1) += 1.0 / l_a;
  t(2, 2) += l_b;
  t(3, 3) += 1.0 / l_b;
  Eigen::LLT<Mat4> llt(t);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("conditional covariance: outcome covariance not positive definite");
  // columns of m span mode A in the lab frame; m^T m is the A block of the
  // outcome precision, whose determinant inverts the conditional one
  Eigen::Matrix<double, 4, 2> m = st.leftCols<2>();
  llt.matrixL().solveInPlace(m);
  const Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> qr(m);
  const double r0 = std::abs(qr.matrixQR()(0, 0));
  const double r1 = std::abs(qr.matrixQR()(1, 1));
  if (!(r0 > 0.0 && r1 > 0.0))
    throw std::runtime_error("conditional covariance: outcome precision numerically singular");
  return -(std::log(r0) + std::log(r1));
}

// Conditional covariance of mode A outcomes for the fully general rank-one
// joint measurement, with l = 0 allowed. The state plus measurement noise is
// diagonalized as sigma + mu = S^T (w + D) S with S orthogonal symplectic and
// D = diag(l_a, 1/l_a, l_b, 1/l_b); blockwise inversion of w + D in that frame
// never mixes 1/l against cancelling terms, so the result is stable for all
// l in [0, 1].
CovMat2 joint_conditional_impl(const TwoModeCov& state, double phi_a, double phi_b, double eta,
                               double theta_a, double theta_b, double l_a, double l_b) {
  const Mat4 st = measurement_frame(phi_a, phi_b, eta, theta_a, theta_b);
  Mat4 w = st * state.mat() * st.transpose();
  w = 0.5 * (w + w.transpose());

  // permuted blocks: indices {0,2} carry noise l (sharp), {1,3} carry 1/l
  Mat2 wss, wbb, wsb;
  wss << w(0, 0), w(0, 2), w(2, 0), w(2, 2);
  wbb << w(1, 1), w(1, 3), w(3, 1), w(3, 3);
  wsb << w(0, 1), w(0, 3), w(2, 1), w(2, 3);

  // (w_bb + diag(1/l))^-1 = G (G w_bb G + I)^-1 G with G = diag(sqrt(l));
  // exact (zero) in the homodyne limit l = 0
  Mat2 g = Mat2::Zero();
  g(0, 0) = std::sqrt(l_a);
  g(1, 1) = std::sqrt(l_b);
  const Mat2 core = symmetrized(g * wbb * g) + Mat2::Identity();
  const Mat2 n = g * inv_spd2(core, "joint conditional covariance") * g;

  Mat2 lam = Mat2::Zero();
  lam(0, 0) = l_a;
  lam(1, 1) = l_b;
  const Mat2 k = symmetrized(wss + lam - wsb * n * wsb.transpose());
  const Mat2 kinv = inv_spd2(k, "joint conditional covariance");
  const Mat2 psb = -kinv * wsb * n;
  const Mat2 pbb = symmetrized(n + n * wsb.transpose() * kinv * wsb * n);

  Mat4 phi;
  phi(0, 0) = kinv(0, 0);
  phi(0, 2) = kinv(0, 1);
  phi(2, 0) = kinv(1, 0);
  phi(2, 2) = kinv(1, 1);
  phi(1, 1) = pbb(0, 0);
  phi(1, 3) = pbb(0, 1);
  phi(3, 1) = pbb(1, 0);
  phi(3, 3) = pbb(1, 1);
  phi(0, 1) = psb(0, 0);
  phi(0, 3) = psb(0, 1);
  phi(2, 1) = psb(1, 0);
  phi(2, 3) = psb(1, 1);
  phi(1, 0) = phi(0, 1);
  phi(3, 0) = phi(0, 3);
  phi(1, 2) = phi(2, 1);
  phi(3, 2) = phi(2, 3);

  // phi = (w + D)^-1, so S^T phi S is the precision of the outcome
  // distribution and the A block inverts to the conditional covariance
  const Mat4 prec = st.transpose() * phi * st;
  const Mat2 paa = symmetrized(prec.topLeftCorner<2, 2>());
  return CovMat2(symmetrized(inv_spd2(paa, "joint conditional covariance")));
}

}  // namespace

double entropy_offset() {
  static const double v = std::log(2.0 * std::numbers::pi * std::numbers::e);
  return v;
}

LocalMeasurement::LocalMeasurement(double theta_, double l_) : theta(wrap_angle_pi(theta_)), l(l_) {
  if (!(l >= kHomodyneFloor && l <= 1.0))
    throw std::domain_error("measurement squeezing parameter outside [1e-9, 1]");
}

CovMat2 squeezed_vacuum_cov(double theta, double l) {
  if (!(l > 0.0)) throw std::domain_error("squeezing parameter must be positive");
  const double c = std::cos(theta), s = std::sin(theta);
  const double linv = 1.0 / l;
  // written out so the matrix is symmetric to the last bit
  const double xx = l * c * c + linv * s * s;
  const double pp = l * s * s + linv * c * c;
  const double xp = (l - linv) * s * c;
  Mat2 m;
  m << xx, xp, xp, pp;
  return CovMat2(m);
}

CovMat2 local_povm_cov(const LocalMeasurement& m) { return squeezed_vacuum_cov(m.theta, m.l); }

JointMeasurement::JointMeasurement(double phi_a_, double phi_b_, double eta_, LocalMeasurement m_a_,
                                   LocalMeasurement m_b_)
    : phi_a(wrap_angle_pi(phi_a_)), phi_b(wrap_angle_pi(phi_b_)), eta(eta_), m_a(m_a_), m_b(m_b_) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("beamsplitter transmissivity outside [0, 1]");
}

Mat4 joint_povm_cov(const JointMeasurement& m) {
  const Mat4 st = measurement_frame(m.phi_a, m.phi_b, m.eta, m.m_a.theta, m.m_b.theta);
  Eigen::Vector4d d;
  d << m.m_a.l, 1.0 / m.m_a.l, m.m_b.l, 1.0 / m.m_b.l;
  Mat4 mu = st.transpose() * d.asDiagonal() * st;
  return 0.5 * (mu + mu.transpose());
}

TwoModeCov outcome_cov(const TwoModeCov& state, const Mat4& mu) {
  return TwoModeCov::from_matrix(state.mat() + 0.5 * (mu + mu.transpose()));
}

CovMat2 conditional_cov_local(const TwoModeCov& state, const LocalMeasurement& m_a,
                              const LocalMeasurement& m_b) {
  const Mat2 mu_a = local_povm_cov(m_a).mat();
  const Mat2 mu_b = local_povm_cov(m_b).mat();
  const Mat2 bt = state.block_b() + mu_b;
  const Mat2 binv = inv_spd2(bt, "local conditional covariance");
  const Mat2 c = state.block_c();
  return CovMat2(symmetrized(state.block_a() + mu_a - c * binv * c.transpose()));
}

CovMat2 conditional_cov_joint(const TwoModeCov& state, const JointMeasurement& m) {
  return joint_conditional_impl(state, m.phi_a, m.phi_b, m.eta, m.m_a.theta, m.m_b.theta, m.m_a.l,
                                m.m_b.l);
}

CovMat2 conditional_state_cov(const TwoModeCov& state, const LocalMeasurement& m_b) {
  // invert B + mu_b in the frame where mu_b is diagonal; there the huge 1/l
  // entry sits alone on the diagonal and the determinant never cancels
  const Mat2 r = rotation2(m_b.theta);
  Mat2 bp = symmetrized(r.transpose() * state.block_b() * r);
  bp(0, 0) += m_b.l;
  bp(1, 1) += 1.0 / m_b.l;
  const Mat2 binv = r * inv_spd2(bp, "conditional state covariance") * r.transpose();
  const Mat2 c = state.block_c();
  return CovMat2(symmetrized(state.block_a() - c * symmetrized(binv) * c.transpose()));
}

CovMat2 conditional_cov_from_mu(const TwoModeCov& state, const Mat4& mu) {
  const Mat4 s = state.mat() + 0.5 * (mu + mu.transpose());
  const Mat2 bt = s.bottomRightCorner<2, 2>();
  const Mat2 binv = inv_spd2(bt, "conditional covariance");
  const Mat2 a = s.topLeftCorner<2, 2>();
  const Mat2 c = s.topRightCorner<2, 2>();
  return CovMat2(symmetrized(a - c * binv * c.transpose()));
}

CovMat2 conditional_cov_local_homodyne(const TwoModeCov& state, const LocalMeasurement& m_a,
                                       double theta_b) {
  const Mat2 mu_a = local_povm_cov(m_a).mat();
  const Vec2 u(std::cos(theta_b), std::sin(theta_b));
  const double denom = u.dot(state.block_b() * u);
  const Vec2 v = state.block_c() * u;
  return CovMat2(symmetrized(state.block_a() + mu_a - (v * v.transpose()) / denom));
}

CovMat2 conditional_state_cov_homodyne(const TwoModeCov& state, double theta_b) {
  const Vec2 u(std::cos(theta_b), std::sin(theta_b));
  const double denom = u.dot(state.block_b() * u);
  const Vec2 v = state.block_c() * u;
  return CovMat2(symmetrized(state.block_a() - (v * v.transpose()) / denom));
}

CovMat2 conditional_cov_joint_homodyne(const TwoModeCov& state, double phi_a, double phi_b,
                                       double eta, double theta_a, double theta_b) {
  return joint_conditional_impl(state, phi_a, phi_b, eta, theta_a, theta_b, 0.0, 0.0);
}

double gaussian_entropy(const CovMat2& cov) {
  const double det = cov.det();
  if (!(det > 0.0)) throw std::domain_error("entropy of non positive definite covariance");
  return 0.5 * std::log(det) + entropy_offset();
}

double gaussian_entropy(const TwoModeCov& cov) {
  const double det = cov.det();
  if (!(det > 0.0)) throw std::domain_error("entropy of non positive definite covariance");
  return 0.5 * std::log(det) + 2.0 * entropy_offset();
}

double conditional_half_log_det(const TwoModeCov& state, const LocalMeasurement& m_a,
                                const LocalMeasurement& m_b) {
  const Mat4 st = measurement_frame(0.0, 0.0, 1.0, m_a.theta, m_b.theta);
  return stable_half_log_det(state.mat(), st, m_a.l, m_b.l);
}

double conditional_half_log_det(const TwoModeCov& state, const JointMeasurement& m) {
  const Mat4 st = measurement_frame(m.phi_a, m.phi_b, m.eta, m.m_a.theta, m.m_b.theta);
  return stable_half_log_det(state.mat(), st, m.m_a.l, m.m_b.l);
}

double conditional_entropy(const TwoModeCov& state, const LocalMeasurement& m_a,
                           const LocalMeasurement& m_b) {
  return conditional_half_log_det(state, m_a, m_b) + entropy_offset();
}

double conditional_entropy(const TwoModeCov& state, const JointMeasurement& m) {
  return conditional_half_log_det(state, m) + entropy_offset();
}

}  // namespace gdiscord
