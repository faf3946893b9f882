#include <cmath>
#include <stdexcept>
#include <utility>

#include "doctest.h"
#include "gdiscord/symplectic.hpp"

using namespace gdiscord;

namespace {

// closed-form two-mode symplectic spectrum from the local invariants,
// independent of the eigensolver route used by the library
std::pair<double, double> spectrum_from_invariants(double a, double b, double c, double d) {
  const double delta = a * a + b * b + 2.0 * c * d;
  const double det = (a * b - c * c) * (a * b - d * d);
  const double root = std::sqrt(delta * delta - 4.0 * det);
  return {std::sqrt((delta + root) / 2.0), std::sqrt((delta - root) / 2.0)};
}

}  // namespace

TEST_CASE("pure squeezed pair has a unit symplectic spectrum") {
  for (const double r : {0.1, 0.7, 1.5}) {
    const double a = std::cosh(2.0 * r), c = std::sinh(2.0 * r);
    const auto [n1, n2] = symplectic_eigenvalues(make_standard_cov(a, a, c, -c));
    CHECK(std::abs(n1 - 1.0) < 1e-10);
    CHECK(std::abs(n2 - 1.0) < 1e-10);
  }
}

TEST_CASE("thermal product spectrum is the pair of occupations") {
  const auto [n1, n2] = symplectic_eigenvalues(make_standard_cov(3.0, 5.0, 0.0, 0.0));
  CHECK(n1 == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(n2 == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("eigensolver spectrum matches the invariant formula on a grid") {
  for (const double a : {1.2, 2.0, 5.0, 10.0})
    for (const double b : {1.1, 3.0, 8.0})
      for (const double c : {0.0, 0.4, 1.0})
        for (const double d : {-0.9, 0.0, 0.7}) {
          const double det = (a * b - c * c) * (a * b - d * d);
          const double delta = a * a + b * b + 2.0 * c * d;
          if (det <= 0.0 || delta * delta < 4.0 * det) continue;
          const auto want = spectrum_from_invariants(a, b, c, d);
          const auto got = symplectic_eigenvalues(make_standard_cov(a, b, c, d));
          CHECK(got.first == doctest::Approx(want.first).epsilon(1e-11));
          CHECK(got.second == doctest::Approx(want.second).epsilon(1e-11));
        }
}

TEST_CASE("mode transformations preserve the symplectic form") {
  const Mat4 j = symplectic_form();
  CHECK((j * j + Mat4::Identity()).norm() < 1e-15);
  for (const Mat4& s : {beamsplitter(0.5), beamsplitter(0.37), phase_rotation(0.3, 1.2),
                        squeezer(0.4, -0.7), Mat4(beamsplitter(1.0))}) {
    CHECK((s.transpose() * j * s - j).norm() < 1e-14);
  }
  CHECK(beamsplitter(1.0).isIdentity(0.0));
}

TEST_CASE("standard form reduction undoes local symplectics") {
  const StandardFormParams p(2.5, 1.8, 0.9, -0.6);
  const TwoModeCov cov = p.to_cov();
  for (const Mat4& s :
       {phase_rotation(0.7, 2.1), Mat4(squeezer(0.3, -0.5) * phase_rotation(1.9, 0.4))}) {
    const TwoModeCov moved = TwoModeCov::from_matrix(s * cov.mat() * s.transpose());
    const StandardFormParams q = standard_form_reduce(moved);
    CHECK(q.a == doctest::Approx(p.a).epsilon(1e-10));
    CHECK(q.b == doctest::Approx(p.b).epsilon(1e-10));
    CHECK(q.c == doctest::Approx(p.c).epsilon(1e-10));
    CHECK(q.d == doctest::Approx(p.d).epsilon(1e-10));
    CHECK(q.c >= std::abs(q.d));
  }
}

TEST_CASE("partial transpose test separates squeezed pairs from classical noise") {
  const double c99 = std::sqrt(99.0);
  CHECK(is_entangled(StandardFormParams(10.0, 10.0, c99, -c99)));
  const double r = 0.05;
  CHECK(is_entangled(
      StandardFormParams(std::cosh(2 * r), std::cosh(2 * r), std::sinh(2 * r), -std::sinh(2 * r))));
  CHECK_FALSE(is_entangled(StandardFormParams(10.0, 10.0, 9.0, 9.0)));
  CHECK_FALSE(is_entangled(StandardFormParams(3.0, 2.0, 0.0, 0.0)));
}

TEST_CASE("covariance constructors reject malformed input") {
  Mat2 asym;
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(CovMat2{asym}, std::invalid_argument);
  CHECK_THROWS_AS(CovMat2(1.0, 2.0, 1.0), std::invalid_argument);

  Mat4 m = Mat4::Identity();
  m(0, 2) = 0.3;  // transpose partner left at zero
  CHECK_THROWS_AS(TwoModeCov::from_matrix(m), std::invalid_argument);
}

TEST_CASE("physicality accepts vacuum and rejects sub-vacuum noise") {
  CHECK(physicality_check(make_standard_cov(1.0, 1.0, 0.0, 0.0)));
  CHECK_FALSE(physicality_check(make_standard_cov(0.8, 0.8, 0.0, 0.0)));
  CHECK_FALSE(physicality_check(make_standard_cov(2.0, 2.0, 1.9, 1.9)));
}
