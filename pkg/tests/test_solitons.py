import json

import numpy as np
import pytest

from pdmsoliton.kdv import kdv_rhs
from pdmsoliton.numgrid import integrate, make_uniform_grid, spectral_derivative
from pdmsoliton.solitons import (RECORDED_ONLY, VERIFIED, check_triple, evaluate_claim,
                                 scheme_catalog, soliton_triples, traveling_one_soliton)
from pdmsoliton.spectral_solver import default_line


def test_triples_values():
    one, a, b = soliton_triples(1.0)
    assert (one.label, a.label, b.label) == ("1-soliton", "2-soliton-a", "2-soliton-b")
    assert one.mu == -1 and one.u0(np.array(0.0)) == -2
    two = soliton_triples(2.0)[1]
    assert two.mu == -16 and two.u0(np.array(0.0)) == -24
    with pytest.raises(ValueError):
        soliton_triples(0.0)


def test_normalization_constants_by_quadrature():
    # the sqrt(3/2) prefactor of the odd state follows from int sech^2 tanh^2 = 2/3
    g = default_line(1.0)
    s = 1 / np.cosh(g.x)
    assert integrate(g.sample(lambda x: (s * np.tanh(x)) ** 2)) == pytest.approx(2 / 3, abs=1e-10)
    assert integrate(g.sample(lambda x: s ** 4)) == pytest.approx(4 / 3, abs=1e-10)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_triple_invariants(q):
    for tr in soliton_triples(q):
        chk = check_triple(tr)
        assert chk.passed(), chk


def test_traveling_soliton():
    g = make_uniform_grid(-30, 30, 1024, "periodic")
    assert (traveling_one_soliton(1.0, 0.0, g) - soliton_triples(1.0)[0].u0(g.x)).max_abs() == 0
    for q, t, peak in ((1.0, 0.5, 2.0), (2.0, 0.25, 4.0)):
        u = traveling_one_soliton(q, t, g)
        assert g.x[np.argmin(u.values)] == pytest.approx(peak, abs=g.h)
    # u_t = -4 q^2 u_x must equal the KdV right-hand side
    u = traveling_one_soliton(1.0, 0.1, g)
    assert (kdv_rhs(u) + 4 * spectral_derivative(u, 1)).max_abs() < 1e-8


def test_catalog_rows():
    rows = scheme_catalog(1.0)
    assert [(r.scheme, r.soliton) for r in rows] == [
        ("ZK", "1-soliton"), ("ZK", "2-soliton"), ("BDD", "1-soliton"), ("BDD", "2-soliton"),
        ("Bastard", "1-soliton"), ("Bastard", "2-soliton"),
        ("LiKuhn", "1-soliton"), ("LiKuhn", "2-soliton")]
    assert {r.status for r in rows if r.scheme == "Bastard"} == {RECORDED_ONLY}
    assert {r.status for r in rows if r.scheme != "Bastard"} == {VERIFIED}
    zk = rows[0]
    assert zk.lambda_values == pytest.approx((1.0, -2.0))
    assert rows[3].lambda_values == pytest.approx((2.0, -3.0))


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_catalog_verified_rows_pass(q):
    for claim in scheme_catalog(q):
        row = evaluate_claim(claim)
        assert row["max_u_deviation"] < 1e-10
        if claim.status == VERIFIED:
            assert row["passed"] is True, row
        else:
            assert row["passed"] is None


def test_bdd_two_soliton_row():
    row = evaluate_claim(scheme_catalog(1.0)[3])
    assert row["mu_computed"] == pytest.approx([-3.0, 0.0], abs=2e-3)


def test_bastard_rows_record_both_levels():
    one, two = (evaluate_claim(c) for c in scheme_catalog(1.0)[4:6])
    assert one["mu_claimed"] == [-2.0]
    # the well 3 sech^2 has lambda' = (sqrt(13) - 1)/2; levels -1 - (lambda' - n)^2
    lp = (np.sqrt(13) - 1) / 2
    # the shallow level feels the finite box at the 1e-6 level
    assert one["mu_computed"] == pytest.approx([-1 - lp ** 2, -1 - (lp - 1) ** 2], abs=1e-5)
    assert one["claims_match"] is False
    assert two["mu_computed"] == pytest.approx([-5.0, -2.0], abs=1e-6)
    assert two["claims_match"] is True
    assert two["lambda"][0] * (two["lambda"][0] + 1) == pytest.approx(7.0)


def test_catalog_json_keys():
    row = evaluate_claim(scheme_catalog(1.0)[0])
    d = json.loads(json.dumps(row))
    for key in ("scheme", "soliton", "lambda", "mu_claimed", "mu_computed", "status",
                "max_u_deviation"):
        assert key in d
