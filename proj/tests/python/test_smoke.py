import math

import pytest

import preschwarz as psn


def test_canonical_bounds():
    cases = [
        ("exp", 1.0, "starlike", 0.12966606166560673, 2.0329631773557842),
        ("sqrt", 1.0, "starlike", 0.56948559237694961, 1.1927323413734184),
        ("exp", 1.0, "convex", 0.24461385443022923, 1.0651311792972291),
        ("sqrt", 1.0, "convex", 0.13688288533704274, 0.50867923154641102),
    ]
    for family, param, variant, alpha, bound in cases:
        r = psn.norm_bound(family, param, variant)
        assert abs(r["alpha"] - alpha) < 1e-9
        assert abs(r["bound"] - bound) < 1e-9
        assert r["sign_changes"] == 1


def test_extremal_estimate_is_sharp():
    r = psn.norm_bound("exp", math.pi / 2, "convex")
    e = psn.estimate_extremal("exp", math.pi / 2, "convex", grid=(64, 128))
    assert abs(e["value"] - r["bound"]) <= 1e-4 * r["bound"]
    assert e["on_axis"]
    assert not e["boundary_limited"]


def test_koebe_is_boundary_limited():
    k = psn.estimate_koebe(grid=(64, 128))
    assert abs(k["value"] - 5.998) < 1e-6
    assert k["boundary_limited"]


def test_profile_and_aux_agree():
    prof = psn.radial_profile("exp", 1.0, "starlike", 8)
    for r, v in prof:
        assert abs(v - psn.aux_eval("h_exp_star", "exp", 1.0, r)) < 1e-9
    assert len(psn.aux_catalog()) == 20


def test_verify_and_certify():
    v = psn.verify("sqrt", 0.5, "starlike", samples=5, seed=3, grid=(64, 128))
    assert v["passed"]
    assert len(v["margins"]) == 5
    assert all(m >= 0 for m in v["margins"])
    assert psn.certify("sqrt", 1.0, "starlike")["passed"]


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        psn.norm_bound("exp", 3.0)
    with pytest.raises(ValueError):
        psn.norm_bound("janowski", 0.5)
    with pytest.raises(ValueError):
        psn.aux_eval("h_exp_star", "exp", 1.0, 1.5)
