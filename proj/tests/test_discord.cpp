#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gdiscord/discord.hpp"
#include "gdiscord/symplectic.hpp"

using namespace gdiscord;

TEST_CASE("thermal-mode entropy function hits exact points") {
  CHECK(entropy_F(1.0) == 0.0);
  CHECK(entropy_F(3.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(entropy_F(5.0) == doctest::Approx(3.0 * std::log(3.0) - 2.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("conditional quantum entropy of the two classical pairs") {
  // a = b = 10, c = 9, d = +-9: spectra (19, 1) and (sqrt19, sqrt19)
  const TwoModeCov cc = make_standard_cov(10, 10, 9, 9);
  const TwoModeCov ca = make_standard_cov(10, 10, 9, -9);
  const auto [cc1, cc2] = symplectic_eigenvalues(cc);
  CHECK(cc1 == doctest::Approx(19.0).epsilon(1e-12));
  CHECK(cc2 == doctest::Approx(1.0).epsilon(1e-9));
  const auto [ca1, ca2] = symplectic_eigenvalues(ca);
  CHECK(ca1 == doctest::Approx(std::sqrt(19.0)).epsilon(1e-12));
  CHECK(ca2 == doctest::Approx(std::sqrt(19.0)).epsilon(1e-12));
  CHECK(quantum_conditional_entropy(cc) == doctest::Approx(0.64306351209637693).epsilon(1e-12));
  CHECK(quantum_conditional_entropy(ca) == doctest::Approx(0.93255036492945987).epsilon(1e-12));
}

TEST_CASE("one-way discord values at the classical pairs") {
  const GqdResult cc = gqd(make_standard_cov(10, 10, 9, 9));
  CHECK(cc.value == doctest::Approx(0.60809796738287483).epsilon(1e-9));
  CHECK(std::abs(cc.m_b.l - 1.0) < 1e-4);  // heterodyne argmin
  const GqdResult ca = gqd(make_standard_cov(10, 10, 9, -9));
  CHECK(ca.value == doctest::Approx(0.3186111145497919).epsilon(1e-9));
}

TEST_CASE("closed forms across the benchmark families") {
  const ClosedFormOgd sym = closed_form_ogd({Family::symmetric_t, 10.0, 0.5});
  CHECK(sym.value == doctest::Approx(0.058840500022933444).epsilon(1e-13));
  CHECK(sym.det_local == doctest::Approx(76.5625).epsilon(1e-13));
  CHECK(sym.det_joint == doctest::Approx(68.0625).epsilon(1e-13));
  CHECK(sym.branch == "squeezed");
  // kink between the two joint strategies at t = sqrt(9/11)
  CHECK(closed_form_ogd({Family::symmetric_t, 10.0, 0.95}).branch == "homodyne");
  CHECK(closed_form_ogd({Family::symmetric_t, 10.0, 1.0}).value ==
        doctest::Approx(2.9932228461263809).epsilon(1e-13));

  CHECK(closed_form_ogd({Family::cc_ca, 9.0, 1.0}).value == 0.0);
  CHECK(closed_form_ogd({Family::cc_ca, 9.0, 1.0}).branch == "zero");
  CHECK(closed_form_ogd({Family::cc_ca, 9.0, -1.0}).value ==
        doctest::Approx(std::log(20.0 / 11.0)).epsilon(1e-12));

  const ClosedFormOgd asym = closed_form_ogd({Family::asymmetric, 3.0, 1.0, -1.0});
  CHECK(asym.value == doctest::Approx(0.054067221270275768).epsilon(1e-13));
  CHECK(asym.value == doctest::Approx(std::log(19.0 / 18.0)).epsilon(1e-13));
  CHECK(asym.det_local == doctest::Approx(22.5625).epsilon(1e-13));
  CHECK(asym.det_joint == doctest::Approx(20.25).epsilon(1e-13));
  CHECK(asym.branch == "positive");
  CHECK(closed_form_ogd({Family::asymmetric, 3.0, 1.0, 0.5}).value == 0.0);
}

TEST_CASE("family covariance construction validates its domain") {
  CHECK_THROWS_AS(family_cov({Family::symmetric_t, 10.0, 1.5}), std::domain_error);
  CHECK_THROWS_AS(family_cov({Family::symmetric_t, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(family_cov({Family::cc_ca, -1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(family_cov({Family::asymmetric, 3.0, 1.0, 2.5}), std::domain_error);
}

TEST_CASE("search reproduces the squeezed-pair identity") {
  const double r = 0.5;
  const double a = std::cosh(2 * r), c = std::sinh(2 * r);
  const DiscordReport rep = ogd(make_standard_cov(a, a, c, -c));
  CHECK(std::abs(rep.ogd - 2 * r) < 1e-5);
  CHECK(rep.opt_joint.eta == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.opt_joint.m_a.l <= 1e-6);  // sharp quadratures win at full correlation
  CHECK_FALSE(rep.clamped);
}

TEST_CASE("search reproduces the asymmetric family point") {
  const DiscordReport rep = ogd(family_cov({Family::asymmetric, 3.0, 1.0, -1.0}));
  CHECK(std::abs(rep.ogd - std::log(19.0 / 18.0)) < 1e-6);
  CHECK(rep.det_joint == doctest::Approx(20.25).epsilon(1e-6));
  CHECK(std::abs(rep.opt_joint.m_a.l - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(rep.opt_joint.m_b.l - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("product states carry no discord of any kind") {
  const TwoModeCov prod = make_standard_cov(4.0, 2.0, 0.0, 0.0);
  const DiscordReport rep = ogd(prod);
  CHECK(rep.ogd >= 0.0);
  CHECK(rep.ogd <= 1e-9);
  CHECK(std::abs(rep.gqd) <= 1e-9);
  CHECK(std::abs(rep.renyi2) <= 1e-9);
}

TEST_CASE("measures are invariant under local phase rotations") {
  const TwoModeCov base = family_cov({Family::cc_ca, 9.0, -0.5});
  const Mat4 s = phase_rotation(0.9, 2.3);
  const TwoModeCov moved = TwoModeCov::from_matrix(s * base.mat() * s.transpose());
  const DiscordReport r0 = ogd(base);
  const DiscordReport r1 = ogd(moved);
  CHECK(std::abs(r0.ogd - r1.ogd) < 1e-5);
  CHECK(std::abs(r0.gqd - r1.gqd) < 1e-6);
  CHECK(std::abs(r0.renyi2 - r1.renyi2) < 1e-6);
}

TEST_CASE("stationary-point candidates are exact at the endpoints but biased between") {
  // at |q| = 1 the candidate strengths reproduce the true minima
  for (const double q : {1.0, -1.0}) {
    const ClosedFormOgd cf = closed_form_ogd({Family::cc_ca, 9.0, q});
    const double la = cc_ca_candidate_local_la(9.0, q);
    const double lb = cc_ca_candidate_local_lb(9.0, q);
    CHECK(cc_ca_det_local(9.0, q, la, lb) == doctest::Approx(cf.det_local).epsilon(1e-9));
    const double lj = cc_ca_candidate_joint_l(9.0, q);
    CHECK(cc_ca_det_joint(9.0, q, lj) == doctest::Approx(cf.det_joint).epsilon(1e-9));
  }
  // in the interior they sit measurably above the bracketed minimum
  const ClosedFormOgd cf0 = closed_form_ogd({Family::cc_ca, 9.0, 0.0});
  const double la0 = cc_ca_candidate_local_la(9.0, 0.0);
  const double lb0 = cc_ca_candidate_local_lb(9.0, 0.0);
  CHECK(cc_ca_det_local(9.0, 0.0, la0, lb0) > cf0.det_local + 1e-6);
  const double lj0 = cc_ca_candidate_joint_l(9.0, 0.0);
  CHECK(cc_ca_det_joint(9.0, 0.0, lj0) > cf0.det_joint + 1e-6);
}

TEST_CASE("renyi-2 discord vanishes when one cross quadrature decouples") {
  CHECK(std::abs(renyi2_discord(make_standard_cov(2, 2, 1, 0)).value) <= 1e-9);
  // depends on the cross block only through |c d|, so the classical pairs agree
  const double r_cc = renyi2_discord(make_standard_cov(10, 10, 9, 9)).value;
  const double r_ca = renyi2_discord(make_standard_cov(10, 10, 9, -9)).value;
  CHECK(r_cc == doctest::Approx(r_ca).epsilon(1e-9));
}
