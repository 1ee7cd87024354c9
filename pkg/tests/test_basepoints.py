"""Base point extraction: proper rational points and their multiplicities."""

import json
from fractions import Fraction

import pytest

from cremona.basepoints import (
    ProjPoint,
    char_vector_partial,
    multiplicity_at,
    rational_proper_base_points,
)
from cremona.maps import compose, f_d, identity_map, linear_map, rho, sigma, tau


def pt(*cs):
    return ProjPoint(cs)


# ---------------------------------------------------------------------------
# points


def test_projpoint_scaling():
    assert pt(2, 4, 2) == pt(1, 2, 1)
    assert pt(3, 0, 0) == pt(1, 0, 0)
    assert pt(0, Fraction(1, 2), 0).coords == (0, 1, 0)
    # scaled so the last nonzero coordinate is 1
    assert pt(4, 6, 2).coords == (2, 3, 1)


def test_projpoint_rejects_bad_input():
    with pytest.raises(ValueError):
        pt(0, 0, 0)
    with pytest.raises(ValueError):
        ProjPoint((1, 2))


def test_projpoint_hash_and_order():
    s = {pt(1, 0, 0), pt(2, 0, 0), pt(0, 1, 0)}
    assert len(s) == 2
    assert sorted(s) == [pt(0, 1, 0), pt(1, 0, 0)]


# ---------------------------------------------------------------------------
# multiplicities


def test_multiplicity_at_sigma_vertices():
    for p in (pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)):
        assert multiplicity_at(sigma(), p) == 1
    assert multiplicity_at(sigma(), pt(1, 1, 1)) == 0


def test_multiplicity_at_f_d_tower_point():
    for d in range(2, 7):
        assert multiplicity_at(f_d(d), pt(1, 0, 0)) == d - 1


def test_multiplicity_away_from_base_locus():
    assert multiplicity_at(tau(), pt(1, 0, 0)) == 0
    assert multiplicity_at(f_d(3), pt(0, 1, 0)) == 0


# ---------------------------------------------------------------------------
# full reports, frozen


def report_json(f, seed=0):
    return rational_proper_base_points(f, seed).to_json()


def test_sigma_report():
    assert report_json(sigma()) == {
        "degree": 2,
        "points": [
            {"m": 1, "p": ["0", "0", "1"]},
            {"m": 1, "p": ["0", "1", "0"]},
            {"m": 1, "p": ["1", "0", "0"]},
        ],
        "deficiency_sq": 0,
        "deficiency_lin": 0,
    }


def test_rho_report():
    # one of rho's base points is infinitely near, so the proper list
    # carries less than the full homaloidal mass
    assert report_json(rho()) == {
        "degree": 2,
        "points": [
            {"m": 1, "p": ["0", "1", "0"]},
            {"m": 1, "p": ["1", "0", "0"]},
        ],
        "deficiency_sq": 1,
        "deficiency_lin": 1,
    }


def test_tau_report():
    assert report_json(tau()) == {
        "degree": 2,
        "points": [{"m": 1, "p": ["0", "0", "1"]}],
        "deficiency_sq": 2,
        "deficiency_lin": 2,
    }


def test_f3_report():
    assert report_json(f_d(3)) == {
        "degree": 3,
        "points": [{"m": 2, "p": ["1", "0", "0"]}],
        "deficiency_sq": 4,
        "deficiency_lin": 4,
    }


def test_report_off_axis_points():
    # move sigma's triangle somewhere generic and find it again
    a = linear_map(((1, 1, 1), (0, 1, 2), (1, 0, 1)))
    f = compose(sigma(), a)
    rep = rational_proper_base_points(f)
    assert rep.degree == 2
    assert len(rep.points) == 3
    assert all(m == 1 for _, m in rep.points)
    assert rep.deficiency_sq == 0 and rep.deficiency_lin == 0


def test_report_seed_independent_content():
    for f in (sigma(), tau(), f_d(3)):
        assert report_json(f, 0) == report_json(f, 5)


def test_report_deterministic_bytes():
    a = json.dumps(report_json(f_d(4), 3), sort_keys=True)
    b = json.dumps(report_json(f_d(4), 3), sort_keys=True)
    assert a == b


# ---------------------------------------------------------------------------
# partial characteristic vectors


def test_char_vector_partial_sigma_complete():
    cv = char_vector_partial(sigma())
    assert cv.degree == 2
    assert cv.mults == (1, 1, 1)
    assert cv.complete


def test_char_vector_partial_tau_incomplete():
    cv = char_vector_partial(tau())
    assert cv.degree == 2
    assert cv.mults == (1,)
    assert not cv.complete


def test_char_vector_partial_identity():
    cv = char_vector_partial(identity_map())
    assert cv.degree == 1
    assert cv.mults == ()
    assert cv.complete


def test_char_vector_partial_f3():
    cv = char_vector_partial(f_d(3))
    assert cv.degree == 3
    assert cv.mults == (2,)
    assert not cv.complete
