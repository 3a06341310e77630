"""Vertex colourings, their stabilisers, and distinguishing probabilities.

A colouring is distinguishing when no non-identity automorphism preserves
it.  This module computes colouring stabilisers exactly, exact and Monte
Carlo distinguishing probabilities, the motion-based random-colouring
bound of Russel and Sundaram, partial-colouring preservation, and a
tree-specific search for colour-preserving automorphisms.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .autsearch import automorphism_group
from .errors import CapExceededError
from .graphs import Graph
from .groups import DEFAULT_ENUMERATION_CAP, PermGroup
from .perms import Perm
from .rng import SeededRng

#: Default cap on the number of colourings enumerated exhaustively.
DEFAULT_COLOUR_CAP = 2**20

_DIGITS = "0123456789"


@dataclass(frozen=True)
class Colouring:
    """Total map from vertices to colours 0..k-1."""

    colours: tuple
    k: int = 2

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("at least 2 colours required")
        object.__setattr__(self, "colours", tuple(self.colours))
        for c in self.colours:
            if not 0 <= c < self.k:
                raise ValueError(f"colour {c} out of range 0..{self.k - 1}")

    def __len__(self):
        return len(self.colours)

    def __getitem__(self, v):
        return self.colours[v]

    def to_string(self):
        if self.k > len(_DIGITS):
            raise ValueError("string form supports at most 10 colours")
        return "".join(_DIGITS[c] for c in self.colours)

    @classmethod
    def from_string(cls, text, k=2):
        return cls(tuple(int(ch) for ch in text.strip()), k)

    def to_json_list(self):
        return list(self.colours)


@dataclass(frozen=True)
class PartialColouring:
    """Colouring defined only on `domain`; other vertices are unconstrained."""

    domain: tuple
    colours: tuple
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "colours", tuple(self.colours))
        if len(self.domain) != len(self.colours):
            raise ValueError("domain and colours must have equal length")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain has repeated vertices")
        for c in self.colours:
            if not 0 <= c < self.k:
                raise ValueError(f"colour {c} out of range 0..{self.k - 1}")

    def colour_map(self):
        return dict(zip(self.domain, self.colours))

    def to_json_dict(self):
        return {"domain": list(self.domain), "colours": list(self.colours)}

    @classmethod
    def from_json_dict(cls, data, k=2):
        return cls(tuple(data["domain"]), tuple(data["colours"]), k)


@dataclass(frozen=True)
class DistinguishReport:
    distinguishing: bool
    witness: Optional[Perm]

    def to_json_dict(self):
        return {
            "distinguishing": self.distinguishing,
            "witness": list(self.witness.images) if self.witness else None,
        }


@dataclass(frozen=True)
class McEstimate:
    successes: int
    trials: int
    estimate: float
    stderr: float

    def to_json_dict(self):
        return {
            "successes": self.successes,
            "trials": self.trials,
            "estimate": self.estimate,
            "stderr": self.stderr,
        }


@dataclass(frozen=True)
class RusselSundaramReport:
    """(|Aut|-1) / 2^ceil(m/2) as an exact failure-probability bound.

    `applicable` records whether 2^ceil(m/2) >= |Aut|, the premise under
    which the bound is below 1 and a random search must find a
    distinguishing colouring.
    """

    bound: Fraction
    applicable: bool
    witness: Optional[Colouring]
    motion: Optional[int]
    group_order: int

    def to_json_dict(self):
        return {
            "bound": str(self.bound),
            "applicable": self.applicable,
            "witness": self.witness.to_string() if self.witness else None,
            "motion": self.motion,
            "group_order": self.group_order,
        }


def random_colouring(g: Graph, k: int = 2, rng: SeededRng = SeededRng(0)) -> Colouring:
    """Uniform iid colours for every vertex, deterministic per stream."""
    if k < 2:
        raise ValueError("at least 2 colours required")
    return Colouring(tuple(rng.integers_below(k, g.vertex_count)), k)


def colouring_stabiliser(g: Graph, c: Colouring) -> PermGroup:
    """The colour-preserving automorphisms {gamma : c(gamma(s)) = c(s) for all s}."""
    if len(c) != g.vertex_count:
        raise ValueError("colouring must be total")
    return automorphism_group(g, vertex_colours=c.colours)


def is_distinguishing(g: Graph, c: Colouring) -> DistinguishReport:
    """True iff the colouring's stabiliser is trivial; else returns a witness."""
    stab = colouring_stabiliser(g, c)
    if stab.is_trivial():
        return DistinguishReport(True, None)
    witness = next(gen for gen in stab.generators if not gen.is_identity())
    return DistinguishReport(False, witness)


def fix_probability(gamma: Perm, k: int = 2) -> Fraction:
    """P[c(gamma(s)) = c(s) for all s] for uniform c: each cycle monochromatic."""
    return Fraction(1, k ** (gamma.degree - gamma.cycle_count()))


def _colouring_index(colours, k):
    idx = 0
    for c in reversed(colours):
        idx = idx * k + c
    return idx


def distinguishing_probability_exact(
    g: Graph,
    k: int = 2,
    colour_cap: int = DEFAULT_COLOUR_CAP,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
) -> Fraction:
    """Exact fraction of k-colourings with trivial stabiliser.

    Marks, for every non-identity automorphism, the colourings it preserves
    (constant on its cycles); unmarked colourings are distinguishing.
    """
    n = g.vertex_count
    total = k**n
    if total > colour_cap:
        raise CapExceededError(
            f"{total} colourings exceed cap {colour_cap}", required=total, cap=colour_cap
        )
    aut = automorphism_group(g)
    fixed = bytearray(total)
    for gamma in aut.elements(enum_cap):
        if gamma.is_identity():
            continue
        cycs = gamma.cycles(include_fixed=True)
        # enumerate colourings constant on each cycle
        assignment = [0] * len(cycs)
        while True:
            colours = [0] * n
            for ci, cyc in enumerate(cycs):
                col = assignment[ci]
                for v in cyc:
                    colours[v] = col
            fixed[_colouring_index(colours, k)] = 1
            pos = 0
            while pos < len(cycs):
                assignment[pos] += 1
                if assignment[pos] < k:
                    break
                assignment[pos] = 0
                pos += 1
            if pos == len(cycs):
                break
    return Fraction(total - sum(fixed), total)


def distinguishing_probability_mc(
    g: Graph,
    k: int = 2,
    trials: int = 10_000,
    rng: SeededRng = SeededRng(0),
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
) -> McEstimate:
    """Monte Carlo estimate of the distinguishing probability.

    Trial t draws its colouring from rng.trial_stream(t), so results do not
    depend on execution order.  The standard error is the binomial
    sqrt(p(1-p)/trials) at the estimated p.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = g.vertex_count
    aut = automorphism_group(g)
    successes = 0
    if aut.order() <= enum_cap:
        elems = [gamma for gamma in aut.elements(enum_cap) if not gamma.is_identity()]
        if not elems:
            successes = trials
        else:
            images = np.array([list(gamma.images) for gamma in elems], dtype=np.int64)
            batch = 4096
            done = 0
            while done < trials:
                size = min(batch, trials - done)
                block = np.empty((size, n), dtype=np.int8)
                for row in range(size):
                    block[row] = rng.trial_stream(done + row).integers_below(k, n)
                preserved = (block[:, images] == block[:, None, :]).all(axis=2)
                successes += int((~preserved.any(axis=1)).sum())
                done += size
    else:
        for t in range(trials):
            c = random_colouring(g, k, rng.trial_stream(t))
            if colouring_stabiliser(g, c).is_trivial():
                successes += 1
    p = successes / trials
    return McEstimate(successes, trials, p, math.sqrt(p * (1 - p) / trials))


def russel_sundaram_bound(
    g: Graph,
    rng: SeededRng = SeededRng(0),
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
    search_attempts: int = 1000,
) -> RusselSundaramReport:
    """Bound P[random 2-colouring not distinguishing] <= (|Aut|-1) * 2^-ceil(m/2).

    A non-identity element moving s vertices has at most n - ceil(s/2)
    cycles, so it preserves a random 2-colouring with probability at most
    2^-ceil(s/2); summing over the group gives the bound (for even motion
    this is the familiar (|Aut|-1) * 2^(-m/2)).  When the premise
    2^ceil(m/2) >= |Aut| holds, the bound is below 1 and a seeded random
    search returns a distinguishing witness.
    """
    aut = automorphism_group(g)
    order = aut.order()
    if order == 1:
        return RusselSundaramReport(
            Fraction(0), True, Colouring((0,) * g.vertex_count), None, 1
        )
    m = aut.motion(enum_cap).motion
    half_up = (m + 1) // 2
    bound = Fraction(order - 1, 2**half_up)
    applicable = 2**half_up >= order
    witness = None
    if applicable:
        for attempt in range(search_attempts):
            c = random_colouring(g, 2, rng.trial_stream(attempt))
            if colouring_stabiliser(g, c).is_trivial():
                witness = c
                break
    return RusselSundaramReport(bound, applicable, witness, m, order)


# ---------------------------------------------------------------------------
# Partial colourings


def preserves_partial(gamma: Perm, pc: PartialColouring) -> bool:
    """Whether gamma preserves the partial colouring.

    gamma is preserved exactly when two total colourings c1, c2 agreeing
    with pc on its domain exist with c1(gamma(s)) = c2(s) everywhere; that
    holds iff every domain point whose image stays in the domain keeps its
    colour.  c1 and c2 need not coincide off the domain.
    """
    cmap = pc.colour_map()
    for s, col in cmap.items():
        if s >= gamma.degree:
            raise ValueError("partial colouring domain out of range")
        t = gamma(s)
        if t in cmap and cmap[t] != col:
            return False
    return True


def partial_stabiliser(
    g: Graph, pc: PartialColouring, enum_cap: int = DEFAULT_ENUMERATION_CAP
):
    """All automorphisms preserving the partial colouring.

    Not closed under composition in general, so the result is an element
    list, not a group.
    """
    aut = automorphism_group(g)
    return [gamma for gamma in aut.elements(enum_cap) if preserves_partial(gamma, pc)]


# ---------------------------------------------------------------------------
# Trees


def find_tree_automorphism(g: Graph, root: int, c: Colouring) -> Optional[Perm]:
    """A non-identity colour-preserving automorphism fixing the root, or None.

    Works on trees only: computes a canonical (colour, child-codes) code for
    every rooted subtree and swaps the first pair of equal-coded sibling
    subtrees.  Returns None exactly when all siblings have distinct codes,
    i.e. when the root-fixing colour stabiliser is trivial.
    """
    if not g.is_tree():
        raise ValueError("graph is not a tree")
    g._check_vertex(root)
    if len(c) != g.vertex_count:
        raise ValueError("colouring must be total")
    if g.vertex_count > 200:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * g.vertex_count + 1000))

    dist = g.distances(root)
    children = [[] for _ in range(g.vertex_count)]
    bfs_order = sorted(range(g.vertex_count), key=lambda v: (dist[v], v))
    for v in bfs_order:
        for u in g.adjacency[v]:
            if dist[u] == dist[v] + 1:
                children[v].append(u)

    code = {}
    for v in reversed(bfs_order):
        code[v] = (c[v], tuple(sorted(code[u] for u in children[v])))

    swap_pair = None
    for v in bfs_order:
        by_code = {}
        for u in children[v]:
            by_code.setdefault(code[u], []).append(u)
        for members in by_code.values():
            if len(members) >= 2:
                swap_pair = (members[0], members[1])
                break
        if swap_pair:
            break
    if swap_pair is None:
        return None

    images = list(range(g.vertex_count))

    def swap_subtrees(a, b):
        images[a], images[b] = b, a
        ka = sorted(children[a], key=lambda u: (code[u], u))
        kb = sorted(children[b], key=lambda u: (code[u], u))
        for ua, ub in zip(ka, kb):
            swap_subtrees(ua, ub)

    swap_subtrees(*swap_pair)
    perm = Perm(images)
    assert not perm.is_identity()
    assert perm(root) == root
    for v in range(g.vertex_count):
        assert c[perm(v)] == c[v]
        assert frozenset(perm(u) for u in g.adjacency[v]) == frozenset(g.adjacency[perm(v)])
    return perm
