"""The agreement ultrametric on a permutation group and its coset balls.

Given a nested exhaustion S_1 < S_2 < ... < S_k = V, two permutations are
at distance 2^-i where i is the largest index such that g1 * g2^-1 fixes
S_i pointwise (distance 0 when equal, 1 when g1 * g2^-1 already moves a
point of S_1).  Balls of radius 2^-i are right cosets of the pointwise
stabiliser of S_i; decompositions below enumerate them exactly.  All
arithmetic here is exact (dyadic radii, rational measures).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .autsearch import automorphism_group
from .errors import CapExceededError
from .graphs import Graph
from .groups import DEFAULT_ENUMERATION_CAP, PermGroup
from .perms import Perm


@dataclass(frozen=True)
class ExhaustionSequence:
    """Strictly nested vertex sets ending in the full point set."""

    sets: tuple
    degree: int

    def __post_init__(self):
        sets = tuple(tuple(sorted(s)) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ValueError("exhaustion sequence must be non-empty")
        prev = None
        for s in sets:
            cur = frozenset(s)
            if prev is not None and not (prev < cur):
                raise ValueError("sets must be strictly nested")
            prev = cur
        if prev != frozenset(range(self.degree)):
            raise ValueError("final set must cover all points")

    def __len__(self):
        return len(self.sets)

    @classmethod
    def balls(cls, g: Graph, root: int = 0):
        """S_i = B_root(i-1): the root, then growing distance balls."""
        out = []
        prev = None
        radius = 0
        while True:
            ball = frozenset(g.ball(root, radius))
            if ball != prev:
                out.append(ball)
                prev = ball
            if len(ball) == g.vertex_count:
                break
            radius += 1
            if radius > g.vertex_count:
                # disconnected graph: close off with the full vertex set
                out.append(frozenset(range(g.vertex_count)))
                break
        return cls(tuple(out), g.vertex_count)

    @classmethod
    def prefixes(cls, degree: int, step: int = 1):
        """S_i = {0, ..., i*step - 1}: index-order prefixes."""
        if step < 1:
            raise ValueError("step must be positive")
        out = []
        upper = step
        while upper < degree:
            out.append(tuple(range(upper)))
            upper += step
        out.append(tuple(range(degree)))
        return cls(tuple(out), degree)


def agreement_level(g1: Perm, g2: Perm, seq: ExhaustionSequence) -> Optional[int]:
    """Largest i with g1 * g2^-1 fixing S_i pointwise; None when g1 == g2.

    Returns 0 when they already disagree on S_1 (distance 1).
    """
    if g1.degree != g2.degree:
        raise ValueError("degree mismatch")
    if g1.degree != seq.degree:
        raise ValueError("sequence degree mismatch")
    if g1 == g2:
        return None
    diff = g1 * g2.inverse()
    for i, s_i in enumerate(seq.sets, start=1):
        if any(diff(s) != s for s in s_i):
            return i - 1
    # unreachable: the final set covers all points, so diff = id means g1 == g2
    raise AssertionError("exhaustion sequence failed to separate distinct permutations")


def ultrametric_distance(g1: Perm, g2: Perm, seq: ExhaustionSequence) -> Fraction:
    """2^-agreement_level as an exact dyadic rational; 0 iff equal."""
    level = agreement_level(g1, g2, seq)
    if level is None:
        return Fraction(0)
    return Fraction(1, 2**level)


# ---------------------------------------------------------------------------
# Coset balls


@dataclass(frozen=True)
class Ball:
    """One ball: a right coset of the pointwise stabiliser of S_level.

    `key` is the common preimage tuple of S_level under the members;
    `members` is None when the decomposition was not materialized.
    """

    key: tuple
    representative: Perm
    size: int
    members: Optional[tuple]

    def to_json_dict(self):
        return {
            "key": list(self.key),
            "representative": list(self.representative.images),
            "size": self.size,
            "members": None
            if self.members is None
            else [list(m.images) for m in self.members],
        }


@dataclass(frozen=True)
class BallDecomposition:
    level: int
    radius: Fraction
    balls: tuple
    group_order: int

    @property
    def ball_count(self):
        return len(self.balls)

    def to_json_dict(self):
        return {
            "level": self.level,
            "radius": str(self.radius),
            "group_order": self.group_order,
            "balls": [b.to_json_dict() for b in self.balls],
        }

    def to_text(self, indent: str = "") -> str:
        lines = [
            f"{indent}level {self.level}  radius {self.radius}  "
            f"{self.ball_count} balls of size {self.balls[0].size if self.balls else 0}"
        ]
        for b in self.balls:
            lines.append(f"{indent}  ball {list(b.key)}  rep {list(b.representative.images)}")
        return "\n".join(lines)


def _preimage_key(perm: Perm, points) -> tuple:
    inv = perm.inverse()
    return tuple(inv(s) for s in points)


def ball_decomposition(
    group: PermGroup,
    seq: ExhaustionSequence,
    level: int,
    within: Optional[Ball] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    materialize: bool = True,
) -> BallDecomposition:
    """Partition the group (or a parent ball) into balls of radius 2^-level.

    Balls are the right cosets of the pointwise stabiliser of S_level, so
    the number of balls equals the stabiliser's index.  With
    ``materialize=False`` only representatives and sizes are computed (by
    a breadth-first search over preimage tuples), which works above the
    enumeration cap.
    """
    if not 1 <= level <= len(seq):
        raise ValueError(f"level must be in 1..{len(seq)}")
    if group.degree != seq.degree:
        raise ValueError("sequence degree mismatch")
    points = seq.sets[level - 1]
    radius = Fraction(1, 2**level)
    order = group.order()

    if within is not None:
        if within.members is None:
            raise CapExceededError("parent ball was not materialized")
        groups = {}
        for m in within.members:
            groups.setdefault(_preimage_key(m, points), []).append(m)
        balls = []
        for key in sorted(groups):
            members = tuple(groups[key])
            rep = min(members, key=lambda m: m.images)
            balls.append(Ball(key, rep, len(members), members))
        return BallDecomposition(level, radius, tuple(balls), order)

    if materialize:
        groups = {}
        for m in group.elements(cap):
            groups.setdefault(_preimage_key(m, points), []).append(m)
        balls = []
        for key in sorted(groups):
            members = tuple(groups[key])
            rep = min(members, key=lambda m: m.images)
            balls.append(Ball(key, rep, len(members), members))
        return BallDecomposition(level, radius, tuple(balls), order)

    # Representatives only: BFS over right cosets acting on preimage tuples.
    gens = group.strong_generators
    start = tuple(points)
    reps = {start: Perm.identity(group.degree)}
    queue = [start]
    while queue:
        key = queue.pop()
        rep = reps[key]
        for gen in gens:
            new_rep = rep * gen
            new_key = _preimage_key(new_rep, points)
            if new_key not in reps:
                reps[new_key] = new_rep
                queue.append(new_key)
    count = len(reps)
    size, rem = divmod(order, count)
    if rem:
        raise AssertionError("coset count does not divide group order")
    balls = tuple(Ball(key, reps[key], size, None) for key in sorted(reps))
    return BallDecomposition(level, radius, balls, order)


def coset_tree_text(
    group: PermGroup,
    seq: ExhaustionSequence,
    max_level: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> str:
    """Indented text rendering of nested ball decompositions up to max_level."""
    lines = [f"group order {group.order()}"]

    def rec(level, within, indent):
        deco = ball_decomposition(group, seq, level, within=within, cap=cap)
        for b in deco.balls:
            lines.append(
                f"{indent}radius {deco.radius}  key {list(b.key)}  size {b.size}"
            )
            if level < max_level and b.size > 1:
                rec(level + 1, b, indent + "  ")

    rec(1, None, "")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Finite Haar analogue


def haar_fraction(subset, group: PermGroup) -> Fraction:
    """|subset| / |group| as an exact rational; subset elements must lie in the group."""
    distinct = {}
    for m in subset:
        if not group.contains(m):
            raise ValueError(f"element {m!r} is not in the group")
        distinct[m.images] = m
    return Fraction(len(distinct), group.order())


@dataclass(frozen=True)
class StabiliserMeasureReport:
    """E[|stabiliser of a random 2-colouring| / |Aut|], computed two ways.

    `colour_first` averages the stabiliser fraction over all colourings;
    `group_first` averages each element's fixed-colouring probability
    2^(cycles - n) over the group.  Exchanging the two summation orders
    must give exactly equal rationals.
    """

    colour_first: Fraction
    group_first: Fraction

    @property
    def agree(self):
        return self.colour_first == self.group_first

    @property
    def value(self):
        return self.colour_first

    def to_json_dict(self):
        return {
            "expected_stabiliser_measure": str(self.value),
            "colour_first": str(self.colour_first),
            "group_first": str(self.group_first),
            "fubini_check": "pass" if self.agree else "fail",
        }


#: Exhaustive colouring enumeration is limited to this many vertices.
DEFAULT_MEASURE_VERTEX_CAP = 20


def expected_stabiliser_measure(
    g: Graph,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
    vertex_cap: int = DEFAULT_MEASURE_VERTEX_CAP,
) -> StabiliserMeasureReport:
    """Average stabiliser fraction of a uniform random 2-colouring, both ways.

    Colour-first: for each of the 2^n colourings, count the elements that
    preserve it explicitly.  Group-first: sum 2^cycles(gamma) over the group.
    The two exact rationals must coincide; both are returned.
    """
    n = g.vertex_count
    if n > vertex_cap:
        raise CapExceededError(
            f"{n} vertices exceed the exhaustive colouring cap {vertex_cap}",
            required=n,
            cap=vertex_cap,
        )
    aut = automorphism_group(g)
    order = aut.order()
    elems = aut.element_list(enum_cap)

    preserved_total = 0
    for bits in range(2**n):
        colours = [(bits >> v) & 1 for v in range(n)]
        for gamma in elems:
            if all(colours[gamma(v)] == colours[v] for v in range(n)):
                preserved_total += 1
    colour_first = Fraction(preserved_total, (2**n) * order)

    group_first = Fraction(
        sum(2 ** gamma.cycle_count() for gamma in elems), (2**n) * order
    )

    report = StabiliserMeasureReport(colour_first, group_first)
    assert report.agree, "summation-order identity violated"
    return report
