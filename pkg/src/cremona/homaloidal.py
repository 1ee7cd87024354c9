"""Combinatorics of characteristic vectors.

A characteristic vector records the degree of a plane birational map
together with the multiplicities of its base points and the proximity
forest saying which points are infinitely near which.  Everything here
is exact integer arithmetic on those vectors: the two multiplicity
equations, enumeration of solution multisets, the (2j, h) complexity
pair, the quadratic exchange rule, and the descent simulator that
rewrites a vector down to degree 1 while counting quadratic steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .errors import (
    DegreeTooLargeError,
    IncompleteVectorError,
    InsufficientBaseCountError,
    NoetherViolationError,
    NonProperCenterError,
    NonterminationGuardError,
    StuckError,
)


class _FreshGeneric:
    """Placeholder center: a generic point not among the base points."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FRESH_GENERIC"


FRESH_GENERIC = _FreshGeneric()

Center = Union[int, _FreshGeneric]

Node = tuple[int, Optional[int]]


def _canonicalize(nodes: Sequence[Node]) -> tuple[tuple[Node, ...], list[int]]:
    """Sort nodes by multiplicity descending (parents stay ahead of their
    children) and remap parent indices.  Returns the sorted nodes and the
    permutation old-index -> new-index."""
    n = len(nodes)
    depth = [None] * n

    def get_depth(i: int, trail: set[int]) -> int:
        if depth[i] is not None:
            return depth[i]
        if i in trail:
            raise ValueError("proximity relation has a cycle")
        parent = nodes[i][1]
        if parent is None:
            d = 0
        else:
            if not isinstance(parent, int) or not 0 <= parent < n:
                raise ValueError(f"node {i} has invalid parent {parent!r}")
            trail.add(i)
            d = get_depth(parent, trail) + 1
            trail.discard(i)
        depth[i] = d
        return d

    for i in range(n):
        get_depth(i, set())
    # a child never outranks its parent, so this order keeps parents first
    order = sorted(range(n), key=lambda i: (-nodes[i][0], depth[i], i))
    perm = [0] * n
    for new, old in enumerate(order):
        perm[old] = new
    sorted_nodes = []
    for old in order:
        m, parent = nodes[old]
        sorted_nodes.append((m, None if parent is None else perm[parent]))
    return tuple(sorted_nodes), perm


class CharVector:
    """Degree plus base-point multiplicities with a proximity forest.

    Nodes are (multiplicity, parent-index-or-None) pairs, stored sorted
    by multiplicity descending.  Roots are proper points; a node with a
    parent is infinitely near it, with multiplicity at most the parent's.
    """

    __slots__ = ("_degree", "_points", "_complete")

    def __init__(self, degree: int, points: Sequence[Node] = (),
                 complete: bool = True):
        if not isinstance(degree, int) or degree < 1:
            raise ValueError(f"degree must be a positive integer, got {degree!r}")
        raw = [(int(m), parent) for m, parent in points]
        for m, _ in raw:
            if m < 1:
                raise ValueError(f"multiplicities must be positive, got {m}")
        nodes, _ = _canonicalize(raw)
        for i, (m, parent) in enumerate(nodes):
            if parent is not None and m > nodes[parent][0]:
                raise ValueError(
                    f"node {i} exceeds its parent's multiplicity ({m} > {nodes[parent][0]})"
                )
            if complete and degree >= 2 and m > degree - 1:
                raise ValueError(
                    f"multiplicity {m} too large for degree {degree}"
                )
        self._degree = degree
        self._points = nodes
        self._complete = bool(complete)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def points(self) -> tuple[Node, ...]:
        return self._points

    @property
    def complete(self) -> bool:
        return self._complete

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self._points)

    def roots(self) -> tuple[int, ...]:
        return tuple(i for i, (_, p) in enumerate(self._points) if p is None)

    def children(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, (_, p) in enumerate(self._points) if p == i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharVector):
            return NotImplemented
        return (self._degree, self._points, self._complete) == (
            other._degree, other._points, other._complete)

    def __hash__(self) -> int:
        return hash((self._degree, self._points, self._complete))

    def __repr__(self) -> str:
        ms = ",".join(str(m) for m in self.mults)
        tag = "" if self._complete else ", incomplete"
        return f"CharVector({self._degree}; {ms}{tag})"

    def to_json(self) -> dict:
        return {
            "d": self._degree,
            "points": [{"m": m, "parent": p} for m, p in self._points],
            "complete": self._complete,
        }

    @classmethod
    def from_json(cls, data: dict) -> CharVector:
        points = [(entry["m"], entry.get("parent")) for entry in data["points"]]
        return cls(data["d"], points, data.get("complete", True))


def _require_complete(cv: CharVector, what: str):
    if not cv.complete:
        raise IncompleteVectorError(f"{what} needs a complete characteristic vector")


# ---------------------------------------------------------------------------
# the two multiplicity equations


def noether_check(cv: CharVector) -> bool:
    """Whether sum m^2 = d^2 - 1 and sum m = 3(d - 1) hold exactly."""
    _require_complete(cv, "noether_check")
    d = cv.degree
    ms = cv.mults
    return sum(m * m for m in ms) == d * d - 1 and sum(ms) == 3 * (d - 1)


def enumerate_homaloidal(d: int) -> list[tuple[int, ...]]:
    """All non-increasing positive multisets solving the two equations
    with every entry at most d - 1, in lexicographic descending order."""
    if not isinstance(d, int) or d < 2:
        raise ValueError("enumeration needs an integer degree >= 2")
    if d > 12:
        raise DegreeTooLargeError(f"degree {d} exceeds the enumeration guard 12")
    target_sq = d * d - 1
    target_lin = 3 * (d - 1)
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def walk(rem_sq: int, rem_lin: int, cap: int):
        if rem_sq == 0 and rem_lin == 0:
            out.append(tuple(prefix))
            return
        # every later entry is between 1 and cap, so rem_sq is wedged
        # between rem_lin and cap * rem_lin
        if rem_lin <= 0 or rem_sq < rem_lin or rem_sq > cap * rem_lin:
            return
        for m in range(min(cap, rem_lin), 0, -1):
            if m * m > rem_sq:
                continue
            prefix.append(m)
            walk(rem_sq - m * m, rem_lin - m, m)
            prefix.pop()

    walk(target_sq, target_lin, d - 1)
    return out


# ---------------------------------------------------------------------------
# inequalities and statistics


@dataclass(frozen=True)
class BoundsReport:
    point_count: int
    count_ok: bool
    triple_sum: int
    weak_ok: bool
    strong_ok: bool
    multiplicity_ok: bool
    proximity_ok: bool

    @property
    def passed(self) -> bool:
        return (self.count_ok and self.weak_ok and self.strong_ok
                and self.multiplicity_ok and self.proximity_ok)

    def to_json(self) -> dict:
        return {
            "point_count": self.point_count,
            "count_ok": self.count_ok,
            "triple_sum": self.triple_sum,
            "weak_ok": self.weak_ok,
            "strong_ok": self.strong_ok,
            "multiplicity_ok": self.multiplicity_ok,
            "proximity_ok": self.proximity_ok,
            "passed": self.passed,
        }


def check_bounds(cv: CharVector) -> BoundsReport:
    """Point-count, triple-sum, and per-point inequalities for a complete
    vector of degree >= 2."""
    _require_complete(cv, "check_bounds")
    if cv.degree < 2:
        raise ValueError("check_bounds needs degree >= 2")
    d = cv.degree
    ms = cv.mults
    n = len(ms)
    triple = sum(ms[:3])
    prox = all(p is None or m <= cv.points[p][0] for m, p in cv.points)
    return BoundsReport(
        point_count=n,
        count_ok=n <= 2 * d - 1,
        triple_sum=triple,
        weak_ok=triple >= d,
        strong_ok=triple >= d + 1,
        multiplicity_ok=all(m <= d - 1 for m in ms),
        proximity_ok=prox,
    )


@dataclass(frozen=True, order=True)
class JHPair:
    """Lexicographic complexity pair: twice the statistic j = (d - m1)/2,
    kept doubled so everything stays an integer, and the count h of other
    points with multiplicity above j."""

    two_j: int
    h: int

    def to_json(self) -> list[int]:
        return [self.two_j, self.h]


def jh(cv: CharVector) -> JHPair:
    _require_complete(cv, "jh")
    if cv.degree < 2:
        raise ValueError("jh needs degree >= 2")
    ms = cv.mults
    m1 = ms[0] if ms else 0
    two_j = cv.degree - m1
    h = sum(1 for m in ms[1:] if 2 * m > two_j)
    return JHPair(two_j, h)


def is_jonquieres(cv: CharVector) -> bool:
    """Degree 1, or one point of multiplicity d - 1 plus 2d - 2 simple
    points."""
    _require_complete(cv, "is_jonquieres")
    d = cv.degree
    if d == 1:
        return True
    ms = cv.mults
    return ms == (d - 1,) + (1,) * (2 * d - 2)


# ---------------------------------------------------------------------------
# the quadratic exchange rule


def _quad_transform_tracked(
    cv: CharVector, centers: Sequence[Center]
) -> tuple[CharVector, tuple[Center, ...]]:
    _require_complete(cv, "quad_transform")
    if len(centers) != 3:
        raise ValueError("quad_transform needs exactly three centers")
    idx_centers = [c for c in centers if not isinstance(c, _FreshGeneric)]
    for c in idx_centers:
        if not isinstance(c, int) or not 0 <= c < len(cv.points):
            raise ValueError(f"center {c!r} is not a node index")
        if cv.points[c][1] is not None:
            raise NonProperCenterError(
                f"center {c} is infinitely near node {cv.points[c][1]}")
    if len(set(idx_centers)) != len(idx_centers):
        raise ValueError("centers must be distinct nodes")

    d = cv.degree
    center_mults = [0 if isinstance(c, _FreshGeneric) else cv.points[c][0]
                    for c in centers]
    total = sum(center_mults)
    new_degree = 2 * d - total
    if new_degree < 1:
        raise NoetherViolationError(
            f"exchange drops the degree to {new_degree}")

    center_set = set(idx_centers)
    raw: list[Node] = []
    keep_map: dict[int, int] = {}
    for i, (m, parent) in enumerate(cv.points):
        if i in center_set:
            continue
        keep_map[i] = len(raw)
        raw.append((m, parent))
    # children of a removed center become proper; other parents remap
    for j, (m, parent) in enumerate(raw):
        if parent is None:
            continue
        raw[j] = (m, None) if parent in center_set else (m, keep_map[parent])

    replacement_raw: list[Optional[int]] = []
    for i in range(3):
        new_mult = d - (total - center_mults[i])
        if new_mult < 0:
            raise NoetherViolationError(
                f"exchange multiplicity {new_mult} is negative")
        if new_mult == 0:
            replacement_raw.append(None)
        else:
            replacement_raw.append(len(raw))
            raw.append((new_mult, None))

    ms = [m for m, _ in raw]
    if (sum(m * m for m in ms) != new_degree * new_degree - 1
            or sum(ms) != 3 * (new_degree - 1)):
        raise NoetherViolationError(
            f"exchange result ({new_degree}; {sorted(ms, reverse=True)}) "
            "fails the multiplicity equations")

    _, perm = _canonicalize(raw)
    result = CharVector(new_degree, raw, complete=True)
    new_centers = tuple(
        FRESH_GENERIC if r is None else perm[r] for r in replacement_raw)
    return result, new_centers


def quad_transform(cv: CharVector, centers: Sequence[Center]) -> CharVector:
    """Rewrite a vector through a quadratic map centered at three proper
    nodes (or generic points): d' = 2d - ma - mb - mc, each center's
    multiplicity replaced by d minus the other two, zeros dropped, and
    first-generation children of a center promoted to proper roots."""
    result, _ = _quad_transform_tracked(cv, centers)
    return result


# ---------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class DescentStep:
    case_tag: str
    center_mults: tuple[int, int, int]
    after: CharVector
    pair: Optional[JHPair]

    def to_json(self) -> dict:
        return {
            "case": self.case_tag,
            "centers": list(self.center_mults),
            "after": self.after.to_json(),
            "jh": None if self.pair is None else self.pair.to_json(),
        }


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple[DescentStep, ...]
    sigma_count: int
    terminated: bool
    macro_pairs: tuple[JHPair, ...]

    def to_json(self) -> dict:
        return {
            "sigma_count": self.sigma_count,
            "terminated": self.terminated,
            "steps": [s.to_json() for s in self.steps],
            "macro_pairs": [p.to_json() for p in self.macro_pairs],
        }


def _choose_centers(cv: CharVector) -> Optional[tuple[str, tuple[Center, Center, Center]]]:
    """The case analysis: nodes[0] is always a maximal proper point.

    a) two further proper points above the j threshold: center there.
    b) a point above the threshold hides below some other root: center at
       that root to surface its children.
    c) base points sit infinitely near the maximal point itself: center
       at it with two generic points.
    """
    two_j = cv.degree - cv.points[0][0]
    eligible = [i for i in cv.roots()
                if i != 0 and 2 * cv.points[i][0] > two_j]
    if len(eligible) >= 2:
        return "a", (0, eligible[0], eligible[1])

    def hides_eligible(r: int) -> bool:
        stack = list(cv.children(r))
        while stack:
            i = stack.pop()
            if 2 * cv.points[i][0] > two_j:
                return True
            stack.extend(cv.children(i))
        return False

    for r in cv.roots():
        if r != 0 and hides_eligible(r):
            return "b", (0, r, FRESH_GENERIC)
    if cv.children(0):
        return "c", (0, FRESH_GENERIC, FRESH_GENERIC)
    return None


def descent(cv: CharVector) -> DescentTrace:
    """Apply quadratic transforms by the three-case rule until degree 1,
    counting one sigma per step and sampling the (2j, h) pair; a fresh
    macro boundary is recorded every time the pair drops below the last
    recorded one."""
    _require_complete(cv, "descent")
    if not noether_check(cv):
        raise NoetherViolationError("descent input fails the multiplicity equations")
    if cv.degree >= 2 and not check_bounds(cv).passed:
        raise ValueError("descent input fails the degree/count bounds")

    guard = 64 * cv.degree
    steps: list[DescentStep] = []
    macro: list[JHPair] = [jh(cv)] if cv.degree >= 2 else []
    cur = cv
    while cur.degree > 1:
        if len(steps) >= guard:
            raise NonterminationGuardError(
                f"no termination after {guard} steps",
                trace=DescentTrace(tuple(steps), len(steps), False, tuple(macro)),
            )
        choice = _choose_centers(cur)
        if choice is None:
            raise StuckError(
                "no descent case applies",
                trace=DescentTrace(tuple(steps), len(steps), False, tuple(macro)),
            )
        tag, centers = choice
        center_mults = tuple(
            0 if isinstance(c, _FreshGeneric) else cur.points[c][0]
            for c in centers)
        cur = quad_transform(cur, centers)
        pair = jh(cur) if cur.degree >= 2 else None
        steps.append(DescentStep(tag, center_mults, cur, pair))
        if pair is not None and pair < macro[-1]:
            macro.append(pair)
    return DescentTrace(tuple(steps), len(steps), True, tuple(macro))


# ---------------------------------------------------------------------------
# the degree bounds and the base-count trace


class Bounds(NamedTuple):
    lower: int
    upper_general: int
    upper_polyaut: int


def bounds(d: int) -> Bounds:
    """Floor log2 lower bound and the two linear upper bounds on the
    number of sigma letters needed at degree d."""
    if not isinstance(d, int) or d < 1:
        raise ValueError("bounds needs a positive integer degree")
    return Bounds(d.bit_length() - 1, 4 * (2 * d - 1), 2 * (2 * d - 1))


@dataclass(frozen=True)
class LamyStage:
    label: str
    delta: int
    count: int

    def to_json(self) -> dict:
        return {"label": self.label, "delta": self.delta, "count": self.count}


@dataclass(frozen=True)
class LamyTrace:
    aut_degree: int
    initial: int
    stages: tuple[LamyStage, ...]

    @property
    def final(self) -> int:
        return self.stages[-1].count

    def to_json(self) -> dict:
        return {
            "aut_degree": self.aut_degree,
            "initial": self.initial,
            "stages": [s.to_json() for s in self.stages],
            "final": self.final,
        }


def lamy_trace(aut_degree: int, base_count: int) -> LamyTrace:
    """Four-stage bookkeeping of how many base points survive when a
    degree-n automorphism is absorbed: one point blown up, n-1 lost on
    the way up the tower, n-1 lost on the way down, none at the final
    contraction; net loss 2n - 1."""
    n = aut_degree
    if not isinstance(n, int) or n < 2:
        raise ValueError("the automorphism degree must be an integer >= 2")
    if base_count < 2 * n - 1:
        raise InsufficientBaseCountError(
            f"need at least {2 * n - 1} base points, got {base_count}")
    deltas = [
        ("indeterminacy-blowup", -1),
        ("tower-ascent", -(n - 1)),
        ("tower-descent", -(n - 1)),
        ("terminal-contraction", 0),
    ]
    stages = []
    count = base_count
    for label, delta in deltas:
        count += delta
        stages.append(LamyStage(label, delta, count))
    assert count == base_count - (2 * n - 1)
    return LamyTrace(n, base_count, tuple(stages))
