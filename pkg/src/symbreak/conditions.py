"""Structural sufficient conditions and quantitative bound arithmetic.

Implements, on finite graphs and finite-radius truncations: the distinct
spheres check with an explicit safe horizon, sphere equivalence and
suborbit equivalence with an exception budget (plus the class-stabiliser
refinement iteration), Cartesian layer fixing under a colouring, the
equal-colour-count matching probability, and the growth-bound report.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .autsearch import automorphism_group
from .colourings import Colouring, colouring_stabiliser
from .graphs import Graph, cartesian_product, growth_sequence
from .groups import DEFAULT_ENUMERATION_CAP, PermGroup

# ---------------------------------------------------------------------------
# Distinct spheres condition


@dataclass(frozen=True)
class DscReport:
    """Distinct-spheres evidence for one truncation.

    For each pair x != y equidistant from the root, spheres S_x(n) and
    S_y(n) are compared for 1 <= n <= R - depth (beyond that the truncation
    clips them; n = 0 is skipped because singleton spheres always differ).
    ``violations`` lists pairs that agreed on a non-empty safe range —
    truncation-limited evidence against the condition, never a refutation.
    ``at_horizon`` lists pairs with no checkable radius at all.
    """

    root: int
    radius: int
    horizon_rule: str
    checked_pairs: int
    violations: tuple
    at_horizon: tuple
    first_separating_n: dict

    def to_json_dict(self):
        return {
            "root": self.root,
            "radius": self.radius,
            "horizon_rule": self.horizon_rule,
            "checked_pairs": self.checked_pairs,
            "violations": [list(p) for p in self.violations],
            "at_horizon": [list(p) for p in self.at_horizon],
            "first_separating_n": {
                f"{x},{y}": n for (x, y), n in sorted(self.first_separating_n.items())
            },
        }

    def to_csv(self) -> str:
        lines = ["x,y,first_separating_n"]
        for (x, y), n in sorted(self.first_separating_n.items()):
            lines.append(f"{x},{y},{n}")
        for x, y in self.violations:
            lines.append(f"{x},{y},violation")
        for x, y in self.at_horizon:
            lines.append(f"{x},{y},at_horizon")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"root {self.root}  radius {self.radius}",
            f"rule: {self.horizon_rule}",
            f"checked pairs:          {self.checked_pairs}",
            f"separated pairs:        {len(self.first_separating_n)}",
            f"violations (safe range): {len(self.violations)}",
            f"at horizon (no range):   {len(self.at_horizon)}",
        ]
        return "\n".join(lines)


def dsc_check(g: Graph, v0: int = 0, radius: Optional[int] = None) -> DscReport:
    """Compare spheres of equidistant vertex pairs within the safe horizon."""
    if g.truncation is not None:
        if v0 != g.truncation.root:
            raise ValueError(
                f"root {v0} differs from the truncation root {g.truncation.root}"
            )
        if radius is None:
            radius = g.truncation.radius
        elif radius != g.truncation.radius:
            raise ValueError("radius differs from the truncation radius")
    if radius is None:
        radius = g.eccentricity(v0)

    dist = g.distances(v0)
    by_depth = {}
    for v in range(g.vertex_count):
        if dist[v] >= 0:
            by_depth.setdefault(dist[v], []).append(v)

    # sphere table: spheres[v][n] for n up to the largest needed horizon
    spheres = {}

    def sphere_of(v, n):
        rows = spheres.get(v)
        if rows is None:
            row = g.distances(v)
            rows = {}
            for u, d in enumerate(row):
                if d >= 0:
                    rows.setdefault(d, []).append(u)
            spheres[v] = rows
        return rows.get(n, [])

    violations = []
    at_horizon = []
    first_sep = {}
    checked = 0
    for depth, group_vertices in sorted(by_depth.items()):
        safe_max = radius - depth
        for i, x in enumerate(group_vertices):
            for y in group_vertices[i + 1 :]:
                checked += 1
                if safe_max < 1:
                    at_horizon.append((x, y))
                    continue
                sep = None
                for n in range(1, safe_max + 1):
                    if sphere_of(x, n) != sphere_of(y, n):
                        sep = n
                        break
                if sep is None:
                    violations.append((x, y))
                else:
                    first_sep[(x, y)] = sep
    rule = (
        "S_x(n) trusted iff n + d(root, x) <= radius; "
        "pairs compared over 1 <= n <= radius - depth"
    )
    return DscReport(
        v0, radius, rule, checked, tuple(violations), tuple(at_horizon), first_sep
    )


# ---------------------------------------------------------------------------
# Equivalence classes


@dataclass(frozen=True)
class EquivalenceClasses:
    """A partition from pairwise tests; transitivity is re-verified on output.

    ``closure_added`` lists pairs placed in one class by transitive closure
    even though their direct pairwise test was negative.
    """

    relation: str
    classes: tuple
    parameters: dict
    closure_added: tuple

    def class_of(self, v):
        for cls in self.classes:
            if v in cls:
                return cls
        raise ValueError(f"vertex {v} not in any class")

    def to_json_dict(self):
        return {
            "relation": self.relation,
            "classes": [list(c) for c in self.classes],
            "parameters": self.parameters,
            "closure_added": [list(p) for p in self.closure_added],
        }

    def to_text(self):
        lines = [f"relation {self.relation}  parameters {self.parameters}"]
        for cls in self.classes:
            lines.append("  " + " ".join(str(v) for v in cls))
        if self.closure_added:
            lines.append(f"  closure added pairs: {list(self.closure_added)}")
        return "\n".join(lines)


def _classes_from_pairwise(n, pair_fn, relation, parameters):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    positive = set()
    for s in range(n):
        for t in range(s + 1, n):
            if pair_fn(s, t):
                positive.add((s, t))
                ra, rb = find(s), find(t)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    by_root = {}
    for v in range(n):
        by_root.setdefault(find(v), []).append(v)
    classes = tuple(tuple(sorted(c)) for _, c in sorted(by_root.items()))

    closure_added = []
    for cls in classes:
        for i, s in enumerate(cls):
            for t in cls[i + 1 :]:
                if (s, t) not in positive:
                    closure_added.append((s, t))
    return EquivalenceClasses(relation, classes, parameters, tuple(closure_added))


# -- sphere equivalence -----------------------------------------------------


@dataclass(frozen=True)
class SphereEquivalenceResult:
    equivalent: bool
    in_same_orbit: bool
    matched_n0: Optional[int]
    horizon: int

    def to_json_dict(self):
        return {
            "equivalent": self.equivalent,
            "in_same_orbit": self.in_same_orbit,
            "matched_n0": self.matched_n0,
            "horizon": self.horizon,
        }


def _safe_horizon(g: Graph, u, v, ignore_truncation):
    if g.truncation is None or ignore_truncation:
        return max(g.eccentricity(u), g.eccentricity(v))
    root, radius = g.truncation.root, g.truncation.radius
    return radius - max(g.distance(root, u), g.distance(root, v))


def sphere_equivalence(
    g: Graph,
    u: int,
    v: int,
    n0_max: Optional[int] = None,
    horizon: Optional[int] = None,
    ignore_truncation: bool = False,
    group: Optional[PermGroup] = None,
) -> SphereEquivalenceResult:
    """u ~ v: same automorphism orbit and S_u(n) = S_v(n) for n0 <= n <= horizon.

    On truncations the horizon may not exceed the safe range
    radius - max(depth(u), depth(v)); pass ignore_truncation to treat the
    graph as exact.
    """
    g._check_vertex(u)
    g._check_vertex(v)
    safe = _safe_horizon(g, u, v, ignore_truncation)
    if horizon is None:
        horizon = max(safe, 0)
    elif horizon > safe:
        raise ValueError(f"horizon {horizon} exceeds the safe range {safe}")
    if n0_max is None:
        n0_max = horizon
    n0_cap = min(n0_max, horizon)
    if group is None:
        group = automorphism_group(g)
    in_orbit = v in group.orbit(u)

    matched_n0 = None
    if in_orbit:
        du, dv = g.distances(u), g.distances(v)
        # largest suffix [agree_from .. horizon] on which the spheres agree
        agree_from = horizon + 1
        for n in range(horizon, 0, -1):
            su = [w for w in range(g.vertex_count) if du[w] == n]
            sv = [w for w in range(g.vertex_count) if dv[w] == n]
            if su == sv:
                agree_from = n
            else:
                break
        if u == v:
            agree_from = 0
        if agree_from <= n0_cap:
            matched_n0 = agree_from
    return SphereEquivalenceResult(
        in_orbit and matched_n0 is not None, in_orbit, matched_n0, horizon
    )


def sphere_classes(
    g: Graph,
    n0_max: Optional[int] = None,
    horizon: Optional[int] = None,
    ignore_truncation: bool = False,
    group: Optional[PermGroup] = None,
) -> EquivalenceClasses:
    if group is None:
        group = automorphism_group(g)

    def pair_fn(s, t):
        return sphere_equivalence(
            g, s, t, n0_max=n0_max, horizon=horizon,
            ignore_truncation=ignore_truncation, group=group,
        ).equivalent

    return _classes_from_pairwise(
        g.vertex_count,
        pair_fn,
        "sphere",
        {"n0_max": n0_max, "horizon": horizon, "ignore_truncation": ignore_truncation},
    )


# -- suborbit equivalence ---------------------------------------------------


def _suborbit_mismatch_count(group: PermGroup, s, t, cap):
    """#{x : (stab_s orbit of x) != phi(stab_s orbit of x)} for phi with phi(s)=t.

    The count is the same for every such phi (phi' = phi * sigma with sigma
    stabilising s permutes each suborbit within itself); computed for all
    candidates and asserted equal.  None when no element maps s to t.
    """
    if t not in group.orbit(s):
        return None
    suborbits = [frozenset(cls) for cls in group.suborbits(s)]
    counts = set()
    for phi in group.element_list(cap):
        if phi(s) != t:
            continue
        mismatch = 0
        for cls in suborbits:
            if frozenset(phi(x) for x in cls) != cls:
                mismatch += len(cls)
        counts.add(mismatch)
    assert len(counts) == 1, "mismatch count depended on the mapping element"
    return counts.pop()


def suborbit_equivalence(
    g_or_group,
    s: int,
    t: int,
    budget: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    group: Optional[PermGroup] = None,
) -> bool:
    """s ~ t: some element maps s to t moving at most `budget` points across
    stabiliser suborbits (the finite surrogate for 'all but finitely many')."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if isinstance(g_or_group, PermGroup):
        group = g_or_group
    elif group is None:
        group = automorphism_group(g_or_group)
    count = _suborbit_mismatch_count(group, s, t, cap)
    return count is not None and count <= budget


def suborbit_classes(
    g_or_group,
    budget: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    group: Optional[PermGroup] = None,
) -> EquivalenceClasses:
    if isinstance(g_or_group, PermGroup):
        group = g_or_group
        degree = group.degree
    else:
        if group is None:
            group = automorphism_group(g_or_group)
        degree = g_or_group.vertex_count

    def pair_fn(s, t):
        count = _suborbit_mismatch_count(group, s, t, cap)
        return count is not None and count <= budget

    return _classes_from_pairwise(degree, pair_fn, "suborbit", {"budget": budget})


# spec-facing aliases: the relation is written ~_Gamma in the literature
gamma_equivalence = suborbit_equivalence
gamma_classes = suborbit_classes


@dataclass(frozen=True)
class RefinementLevel:
    group_order: int
    classes: EquivalenceClasses


@dataclass(frozen=True)
class RefinementIteration:
    """Chain Aut = G_0 >= G_1 >= ... where G_{i+1} fixes every class of the
    suborbit relation of G_i setwise; stops at a fixpoint or max_levels."""

    levels: tuple
    fixpoint_reached: bool

    @property
    def orders(self):
        return tuple(level.group_order for level in self.levels)

    def to_json_dict(self):
        return {
            "orders": list(self.orders),
            "fixpoint_reached": self.fixpoint_reached,
            "levels": [
                {"group_order": lv.group_order, "classes": lv.classes.to_json_dict()}
                for lv in self.levels
            ],
        }


def gamma_refinement_iterate(
    g: Graph,
    budget: int,
    max_levels: int = 10,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> RefinementIteration:
    group = automorphism_group(g)
    levels = []
    fixpoint = False
    for _ in range(max_levels):
        classes = suborbit_classes(group, budget, cap=cap)
        levels.append(RefinementLevel(group.order(), classes))
        class_sets = [frozenset(c) for c in classes.classes]
        kept = [
            e
            for e in group.element_list(cap)
            if all(frozenset(e(v) for v in cls) == cls for cls in class_sets)
        ]
        refined = PermGroup.from_elements(group.degree, kept)
        if refined.order() == group.order():
            fixpoint = True
            break
        group = refined
    return RefinementIteration(tuple(levels), fixpoint)


# ---------------------------------------------------------------------------
# Cartesian layers


@dataclass(frozen=True)
class LayerFixingReport:
    """For each colour-preserving automorphism of g1 x g2, whether it maps
    every g1-layer (fixed second coordinate) onto a g1-layer."""

    group_order: int
    verdicts: tuple  # (Perm, bool) pairs
    respecting_fraction: Fraction

    def to_json_dict(self):
        return {
            "group_order": self.group_order,
            "respecting_fraction": str(self.respecting_fraction),
            "elements": [
                {"perm": list(p.images), "respects_layers": ok}
                for p, ok in self.verdicts
            ],
        }

    def to_text(self):
        lines = [
            f"stabiliser order {self.group_order}  "
            f"layer-respecting fraction {self.respecting_fraction}"
        ]
        for p, ok in self.verdicts:
            lines.append(f"  {'ok  ' if ok else 'MIX '} {list(p.images)}")
        return "\n".join(lines)


def layer_fixing_report(
    g1: Graph,
    g2: Graph,
    c: Colouring,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> LayerFixingReport:
    product = cartesian_product(g1, g2)
    if len(c) != product.vertex_count:
        raise ValueError("colouring does not match the product vertex count")
    layers = {}
    for v, label in enumerate(product.labels):
        layers.setdefault(label[1], []).append(v)
    layer_sets = {frozenset(vs) for vs in layers.values()}

    stab = colouring_stabiliser(product, c)
    verdicts = []
    respecting = 0
    for e in stab.elements(cap):
        ok = all(frozenset(e(v) for v in vs) in layer_sets for vs in layers.values())
        respecting += ok
        verdicts.append((e, ok))
    return LayerFixingReport(
        stab.order(), tuple(verdicts), Fraction(respecting, len(verdicts))
    )


# ---------------------------------------------------------------------------
# Matching probability


def match_probability(n: int) -> Fraction:
    """P[two disjoint uniformly 2-coloured n-sets have equal colour-0 counts].

    Equals sum_j C(n,j)^2 / 4^n = C(2n,n) / 4^n, which is at most 1/2 for
    every n >= 1 and strictly decreasing.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        warnings.warn("match_probability(0) is degenerate; returning 1", stacklevel=2)
        return Fraction(1)
    return Fraction(math.comb(2 * n, n), 4**n)


# ---------------------------------------------------------------------------
# Growth bounds


@dataclass(frozen=True)
class GrowthBoundReport:
    """Failure-probability arithmetic for breaking the small-motion layer.

    With sphere sizes inside the annulus bounded by c * 2^((1/2-eps)*n) and
    permutations moving at most 2^j vertices, the induced permutation count
    satisfies log2 |Pi| <= log2_pi_bound, their motion on the annulus is at
    least motion_lower, and the union bound gives
    log2 P[failure] <= log2_pi_bound - motion_lower / 2 = log2_failure_bound.
    product_lower = (1 - 2^(-eps n))^n bounds the probability that every
    annulus is broken simultaneously.
    """

    n: int
    j: int
    c: float
    eps: float
    log2_pi_bound: float
    motion_lower: int
    log2_failure_bound: float
    product_lower: float

    def to_json_dict(self):
        return {
            "n": self.n,
            "j": self.j,
            "c": self.c,
            "eps": self.eps,
            "log2_pi_bound": self.log2_pi_bound,
            "motion_lower": self.motion_lower,
            "log2_failure_bound": self.log2_failure_bound,
            "product_lower": self.product_lower,
        }


def growth_bound(n: int, j: int, c: float, eps: float) -> GrowthBoundReport:
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 1 <= j <= n - 1:
        raise ValueError("j must satisfy 1 <= j <= n-1")
    if c <= 0:
        raise ValueError("c must be positive")
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie strictly between 0 and 1/2")
    two_j = 2**j
    log2_pi = 2 * math.log2(n) + two_j * (0.5 - eps) * n + two_j * math.log2(c)
    motion_lower = n * two_j
    log2_failure = -eps * two_j * n + two_j * math.log2(c) + 2 * math.log2(n)
    product_lower = (1 - 2 ** (-eps * n)) ** n
    return GrowthBoundReport(
        n, j, c, eps, log2_pi, motion_lower, log2_failure, product_lower
    )


@dataclass(frozen=True)
class GrowthClassifierReport:
    """Least c with |B(m)| <= c * 2^((1/2-eps)*sqrt(m)) for all m <= radius."""

    eps: float
    c_fit: float
    ball_sizes: tuple
    ratios: tuple
    satisfied: tuple

    def to_json_dict(self):
        return {
            "eps": self.eps,
            "c_fit": self.c_fit,
            "ball_sizes": list(self.ball_sizes),
            "ratios": list(self.ratios),
            "satisfied": list(self.satisfied),
        }


def growth_classifier(
    g: Graph, v0: int, radius: int, eps: float, c: Optional[float] = None
) -> GrowthClassifierReport:
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie strictly between 0 and 1/2")
    profile = growth_sequence(g, v0, radius)
    ratios = []
    for m, size in enumerate(profile.ball_sizes):
        ratios.append(size / (2 ** ((0.5 - eps) * math.sqrt(m))))
    c_fit = max(ratios)
    threshold = c_fit if c is None else c
    satisfied = tuple(
        size <= threshold * (2 ** ((0.5 - eps) * math.sqrt(m))) * (1 + 1e-12)
        for m, size in enumerate(profile.ball_sizes)
    )
    return GrowthClassifierReport(
        eps, c_fit, profile.ball_sizes, tuple(ratios), satisfied
    )
