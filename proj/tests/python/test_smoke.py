import json
from fractions import Fraction

import pytest

import kbound


def test_p2_report():
    r = kbound.delta_bound("builtin:P2", [1])
    assert Fraction(r["lambda_bound"]) == 3
    assert r["equality_class"]["kind"] == "EpsTauSqrt"
    assert Fraction(r["ray"]["s_inv"]) == Fraction(2, 3)


def test_cubic_surface_defaults_to_anticanonical():
    inv = kbound.point_invariants("DelPezzo(3)")
    assert Fraction(inv["eps"]) == Fraction(3, 2)
    assert Fraction(inv["tau"]) == 2
    assert Fraction(inv["s_inv"]) == Fraction(7, 6)


def test_explicit_point_and_rho1(tmp_path):
    surface = tmp_path / "rank_one.json"
    surface.write_text(json.dumps({"name": "rank-one", "gram": [["1/2"]], "canonical": [-3],
                                   "ample_ref": [1], "catalog_complete": True}))
    point = {"strict_transforms": [{"name": "C~", "class": [1, -1], "multiplicity": 1}],
             "assert_complete": True}
    r = kbound.delta_bound(str(surface), [2], point, rho1=True)
    assert Fraction(r["lambda_bound"]) == Fraction(3, 2)
    assert r["equality_class"]["curve"] == "C~"


def test_scalars_are_fractions():
    s = kbound.s_invariant("P2", [1], [1])
    assert s == Fraction(1, 3) and isinstance(s, Fraction)
    # Fraction, int and "p/q" inputs are interchangeable.
    a = kbound.lift_dimension(3, Fraction(8), 2, "2")
    assert Fraction(a["delta_bound"]) == 1
    assert a["trichotomy"] == kbound.lift_dimension(3, 8, Fraction(2), 2)["trichotomy"]


def test_zariski_and_surface():
    z = kbound.zariski("Hirzebruch(1)", [1, 2])
    assert [Fraction(x) for x in z["positive"]] == [1, 1]
    assert z["negative_support"][0]["coeff"] == "1"
    assert kbound.surface("DelPezzo(5)")["rank"] == 5


def test_verdicts():
    v = kbound.hypersurface_verdict(27, 3)
    assert v["status"] == "UniformlyKStableBySufficientCriterion"
    assert kbound.threefold_verdict(1, 16)["status"] == "KSemistableWithObligations"
    assert kbound.threefold_verdict(2, 1, {1: Fraction(1, 4)})["status"] == "NotCoveredByCriterion"
    k = kbound.k3_tau_bound(16, 4, 100)
    assert k["holds_up_to_m"] and k["asymptotic_ok"]


def test_verify_lemma():
    rows = kbound.verify_lemma("center-div", 50, 3)
    assert len(rows) == 50
    assert all(lhs <= rhs for _, lhs, rhs, _ in rows)
    assert rows[0][0] == 3


def test_errors():
    with pytest.raises(kbound.DomainError):
        kbound.delta_bound("P2", [-1])
    with pytest.raises(kbound.InputError):
        kbound.surface("NoSuchSurface")
    with pytest.raises(ValueError):
        kbound.lift_dimension(3, "x", 1, 1)
    with pytest.raises(kbound.ModelError):
        kbound.point_invariants("DelPezzo(1)")


def test_cli_in_process():
    status, out, err = kbound.cli(["hypersurface", "--n", "27", "--r", "3"])
    assert status == 0 and err == ""
    assert json.loads(out)["bound"] == "5488/4563"
    assert kbound.cli(["hypersurface", "--n", "1", "--r", "1"])[0] == 1
