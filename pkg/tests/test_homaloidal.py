"""Characteristic vectors: the multiplicity equations, enumeration,
quadratic exchange, and descent."""

import random

import pytest

from cremona.errors import (
    IncompleteVectorError,
    InsufficientBaseCountError,
    NoetherViolationError,
    NonProperCenterError,
)
from cremona.homaloidal import (
    FRESH_GENERIC,
    CharVector,
    JHPair,
    bounds,
    check_bounds,
    descent,
    enumerate_homaloidal,
    is_jonquieres,
    jh,
    lamy_trace,
    noether_check,
    quad_transform,
)


def cv(d, *mults, near=()):
    """Vector with the given proper multiplicities; ``near`` lists extra
    (mult, parent) nodes appended after them."""
    nodes = [(m, None) for m in mults] + list(near)
    return CharVector(d, nodes)


def fd_type(d):
    return cv(d, d - 1, *([1] * (2 * d - 2)))


def tower_type(d):
    # one proper point, the simple points chained infinitely near it
    nodes = [(d - 1, None)]
    for i in range(2 * d - 2):
        nodes.append((1, i))
    return CharVector(d, nodes)


# ---------------------------------------------------------------------------
# the vector type


def test_canonical_sorting():
    v = cv(4, 1, 2, 3)
    assert v.mults == (3, 2, 1)


def test_forest_reindexed_with_sort():
    # parents follow their nodes through the reordering
    v = CharVector(3, [(1, None), (2, None), (1, 1)])
    assert v.mults == (2, 1, 1)
    assert v.points[1][1] == 0 or v.points[2][1] == 0


def test_vector_validation():
    with pytest.raises(ValueError):
        CharVector(0)
    with pytest.raises(ValueError):
        cv(3, 0)
    with pytest.raises(ValueError):
        # child heavier than its parent
        CharVector(3, [(1, None), (2, 0)])
    with pytest.raises(ValueError):
        # multiplicity d is too large once complete
        cv(3, 3)
    # but fine while the vector is still partial
    CharVector(3, [(2, None)], complete=False)


def test_vector_json_round_trip():
    v = tower_type(3)
    assert CharVector.from_json(v.to_json()) == v
    p = CharVector(2, [(1, None)], complete=False)
    assert CharVector.from_json(p.to_json()) == p


def test_roots_and_children():
    v = tower_type(3)
    assert v.roots() == (0,)
    assert v.children(0) == (1,)
    assert v.children(1) == (2,)


# ---------------------------------------------------------------------------
# the two equations


def test_noether_check_small_cases():
    assert noether_check(cv(2, 1, 1, 1))
    assert not noether_check(cv(3, 2, 2))
    assert noether_check(cv(1))


def test_noether_check_fd_family():
    for d in range(2, 11):
        assert noether_check(fd_type(d))


def test_noether_check_needs_complete():
    with pytest.raises(IncompleteVectorError):
        noether_check(CharVector(2, [(1, None)], complete=False))


# ---------------------------------------------------------------------------
# enumeration against a brute-force oracle


def enumerate_oracle(d):
    """All nonincreasing multisets with sum 3(d-1) and square sum d^2-1."""
    target_s, target_q = 3 * (d - 1), d * d - 1
    out = []

    def rec(prefix, s, q, cap):
        if s == target_s and q == target_q:
            out.append(tuple(prefix))
            return
        if s >= target_s or q >= target_q:
            return
        for m in range(min(cap, target_s - s), 0, -1):
            rec(prefix + [m], s + m, q + m * m, m)

    rec([], 0, 0, d - 1)
    return sorted(out, reverse=True)


def test_enumerate_small_degrees():
    assert enumerate_homaloidal(2) == [(1, 1, 1)]
    assert enumerate_homaloidal(3) == [(2, 1, 1, 1, 1)]
    assert enumerate_homaloidal(4) == [
        (3, 1, 1, 1, 1, 1, 1),
        (2, 2, 2, 1, 1, 1),
    ]


def test_enumerate_matches_oracle():
    for d in range(2, 9):
        assert list(map(tuple, enumerate_homaloidal(d))) == enumerate_oracle(d)


def test_enumerate_counts():
    assert [len(enumerate_homaloidal(d)) for d in range(2, 9)] == [
        1, 1, 2, 4, 5, 9, 16,
    ]


# ---------------------------------------------------------------------------
# bounds


def test_check_bounds_fd_extremal():
    for d in range(2, 11):
        rep = check_bounds(fd_type(d))
        assert rep.point_count == 2 * d - 1
        assert rep.passed


def test_check_bounds_example():
    rep = check_bounds(cv(4, 2, 2, 2, 1, 1, 1))
    assert rep.point_count == 6
    assert rep.triple_sum == 6
    assert rep.passed


def test_check_bounds_flags():
    # triple sum d is weak-only territory
    rep = check_bounds(CharVector(3, [(1, None)] * 3, complete=True))
    assert rep.weak_ok and not rep.strong_ok
    assert not rep.passed


def test_check_bounds_enumerated_all_pass():
    for d in range(2, 9):
        for ms in enumerate_homaloidal(d):
            rep = check_bounds(cv(d, *ms))
            assert rep.passed, (d, ms)


# ---------------------------------------------------------------------------
# the complexity pair


def test_jh_values():
    assert jh(cv(2, 1, 1, 1)) == JHPair(1, 2)
    assert jh(cv(3, 2, 1, 1, 1, 1)) == JHPair(1, 4)
    assert jh(cv(4, 2, 2, 2, 1, 1, 1)) == JHPair(2, 2)


def test_jh_orders_lexicographically():
    assert JHPair(1, 2) < JHPair(1, 4) < JHPair(2, 0) < JHPair(2, 1)


def test_is_jonquieres():
    for d in range(2, 11):
        assert is_jonquieres(fd_type(d))
    assert not is_jonquieres(cv(4, 2, 2, 2, 1, 1, 1))
    assert is_jonquieres(cv(1))


# ---------------------------------------------------------------------------
# quadratic exchange


def test_quad_transform_inverts_a_quadratic():
    assert quad_transform(cv(2, 1, 1, 1), (0, 1, 2)) == cv(1)


def test_quad_transform_flat_cubic():
    got = quad_transform(cv(3, 2, 1, 1, 1, 1), (0, 1, 2))
    assert got == cv(2, 1, 1, 1)


def test_quad_transform_fresh_centers():
    # centering at the heavy point with two generic companions raises the
    # degree to 2d - m1 and the fresh points come in with d - m1
    v = tower_type(3)
    got = quad_transform(v, (0, FRESH_GENERIC, FRESH_GENERIC))
    assert got.degree == 4
    assert got.mults == (3, 1, 1, 1, 1, 1, 1)
    assert noether_check(got)


def test_quad_transform_preserves_noether():
    rng = random.Random(4101)
    v = fd_type(5)
    for _ in range(20):
        roots = [i for i in v.roots()]
        rng.shuffle(roots)
        centers = (roots + [FRESH_GENERIC] * 3)[:3]
        v = quad_transform(v, centers)
        assert noether_check(v)
        if v.degree == 1:
            break


def test_quad_transform_rejects_bad_centers():
    v = tower_type(3)
    with pytest.raises(NonProperCenterError):
        quad_transform(v, (0, 1, FRESH_GENERIC))  # node 1 is infinitely near
    with pytest.raises(ValueError):
        quad_transform(v, (0, FRESH_GENERIC))
    with pytest.raises(ValueError):
        quad_transform(v, (0, 7, FRESH_GENERIC))


# ---------------------------------------------------------------------------
# descent


def test_descent_quadratic():
    tr = descent(cv(2, 1, 1, 1))
    assert tr.terminated
    assert tr.sigma_count == 1
    assert [s.case_tag for s in tr.steps] == ["a"]


def test_descent_flat_cubic():
    tr = descent(cv(3, 2, 1, 1, 1, 1))
    assert tr.terminated
    assert tr.sigma_count == 2
    assert [s.case_tag for s in tr.steps] == ["a", "a"]


def test_descent_tower_cubic():
    # the chained vector has to surface its points twice via case c
    tr = descent(tower_type(3))
    assert tr.terminated
    assert tr.sigma_count == 6
    assert [s.case_tag for s in tr.steps] == ["c", "a", "a", "c", "a", "a"]
    assert [p.to_json() for p in tr.macro_pairs] == [[1, 4], [1, 2]]


def test_descent_rejects_non_homaloidal():
    with pytest.raises(NoetherViolationError):
        descent(cv(3, 2, 2))


def reverse_walk(rng, steps=5):
    """Build a realizable vector by running the exchange upward from
    degree 1: any center choice with multiplicity sum below d raises the
    degree, and the result stays homaloidal."""
    v = cv(1)
    for _ in range(steps):
        roots = list(v.roots())
        rng.shuffle(roots)
        centers = []
        total = 0
        for r in roots:
            m = v.points[r][0]
            if len(centers) < 3 and total + m < v.degree and rng.random() < 0.5:
                centers.append(r)
                total += m
        while len(centers) < 3:
            centers.append(FRESH_GENERIC)
        v = quad_transform(v, centers)
    return v


def test_descent_reverse_walk_property():
    for trial in range(100):
        rng = random.Random(4200 + trial)
        v = reverse_walk(rng)
        assert noether_check(v)
        tr = descent(v)
        assert tr.terminated
        pairs = list(tr.macro_pairs)
        assert all(a > b for a, b in zip(pairs, pairs[1:]))
        assert tr.sigma_count >= v.degree.bit_length() - 1


# ---------------------------------------------------------------------------
# degree bounds and the base-count trace


def test_bounds_values():
    assert bounds(2) == (1, 12, 6)
    assert bounds(3) == (1, 20, 10)
    assert bounds(1024).lower == 10
    assert bounds(1) == (0, 4, 2)


def test_bounds_fields():
    b = bounds(3)
    assert b.lower == 1
    assert b.upper_general == 20
    assert b.upper_polyaut == 10
    with pytest.raises(ValueError):
        bounds(0)


def test_lamy_trace_values():
    assert lamy_trace(2, 3).final == 0
    assert lamy_trace(3, 5).final == 0
    assert lamy_trace(2, 7).final == 4


def test_lamy_trace_stages():
    tr = lamy_trace(4, 10)
    assert tr.initial == 10
    assert [s.label for s in tr.stages] == [
        "indeterminacy-blowup",
        "tower-ascent",
        "tower-descent",
        "terminal-contraction",
    ]
    assert [s.delta for s in tr.stages] == [-1, -3, -3, 0]
    assert tr.final == 10 - 7


def test_lamy_trace_errors():
    with pytest.raises(InsufficientBaseCountError):
        lamy_trace(3, 4)
    with pytest.raises(ValueError):
        lamy_trace(1, 5)
