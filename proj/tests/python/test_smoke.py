import math

import gdiscord as g


def test_squeezed_pair_identity():
    r = 0.5
    a, c = math.cosh(2 * r), math.sinh(2 * r)
    cov = g.standard_cov(a, a, c, -c)
    rep = g.ogd(cov)
    assert abs(rep.ogd - 2 * r) < 1e-5
    assert abs(rep.opt_joint.eta - 0.5) < 1e-9
    assert rep.det_joint <= rep.det_local


def test_product_state_has_no_discord():
    cov = g.standard_cov(4.0, 2.0, 0.0, 0.0)
    rep = g.ogd(cov)
    assert 0.0 <= rep.ogd <= 1e-9
    assert abs(rep.gqd) <= 1e-9
    assert abs(g.renyi2_discord(cov)) <= 1e-9


def test_closed_form_matches_search():
    cf = g.closed_form_ogd("cc_ca", {"c": 9.0, "q": -1.0})
    assert abs(cf.value - math.log(20.0 / 11.0)) < 1e-12
    cov = g.family_cov("cc_ca", {"c": 9.0, "q": -1.0})
    assert abs(g.ogd(cov).ogd - cf.value) < 1e-6


def test_physicality_and_spectrum():
    assert g.is_physical(g.standard_cov(1.0, 1.0, 0.0, 0.0))
    assert not g.is_physical(g.standard_cov(0.8, 0.8, 0.0, 0.0))
    n1, n2 = g.symplectic_eigenvalues(g.standard_cov(3.0, 5.0, 0.0, 0.0))
    assert abs(n1 - 5.0) < 1e-12 and abs(n2 - 3.0) < 1e-12


def test_classical_state_has_no_joint_advantage():
    cov = g.family_cov("cc_ca", {"c": 9.0, "q": 1.0})
    i_local, i_joint, gap = g.mutual_info(cov, 10.0)
    assert i_local > 0.5
    assert abs(gap) <= 1e-9


def test_measurement_types_round_trip():
    m = g.LocalMeasurement(theta=0.3, l=0.2)
    assert "0.2" in repr(m)
    assert abs(m.theta - 0.3) < 1e-15
