"""Permutation groups via a base and strong generating set.

``PermGroup`` carries a deterministic Schreier-Sims stabiliser chain,
giving exact (big-integer) order, membership tests, capped element
enumeration, orbits, point/set stabilisers, and exact motion (minimal
support of a non-identity element).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

from .errors import CapExceededError
from .perms import Perm

#: Default cap on explicit element enumeration.
DEFAULT_ENUMERATION_CAP = 10**6

_ELEMENT_CACHE_LIMIT = 10**4


class _Level:
    __slots__ = ("point", "gens", "transversal", "orbit_order")

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.transversal = {}
        self.orbit_order = []


@dataclass(frozen=True)
class MotionReport:
    """Minimal support over non-identity elements; motion is None for the
    trivial group.  The witness attains the minimum."""

    motion: Optional[int]
    witness: Optional[Perm]
    method: str

    def to_json_dict(self):
        return {
            "motion": self.motion,
            "witness": list(self.witness.images) if self.witness else None,
            "method": self.method,
        }


class PermGroup:
    """Group generated by permutations of 0..degree-1, with a BSGS chain.

    The Schreier-Sims chain is built lazily on the first query that needs
    it; triviality is decidable from the generators alone.
    """

    def __init__(self, degree, generators, base_prefix=()):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self._base_prefix = tuple(base_prefix)
        self._levels = None
        self._chain_ready = False
        self._element_cache = None
        self._chain_lock = threading.Lock()

    def _ensure_chain(self):
        if self._chain_ready:
            return
        with self._chain_lock:
            if self._chain_ready:
                return
            levels = []
            seen = set()
            for b in self._base_prefix:
                if b in seen:
                    continue
                seen.add(b)
                levels.append(_Level(b))
            ident = Perm.identity(self.degree)
            for lv in levels:
                lv.transversal = {lv.point: ident}
                lv.orbit_order = [lv.point]
            self._levels = levels
            for g in self.generators:
                residue, j = self._strip(g, 0)
                if not residue.is_identity():
                    self._add_strong_gen(j, residue)
            self._schreier_sims()
            self._chain_ready = True

    # -- chain construction -------------------------------------------------

    def _strip(self, g, start):
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            p = g(lv.point)
            if p not in lv.transversal:
                return g, i
            g = lv.transversal[p].inverse() * g
        return g, len(self._levels)

    def _add_strong_gen(self, level_idx, g):
        if level_idx == len(self._levels):
            lv = _Level(min(g.support()))
            lv.transversal = {lv.point: Perm.identity(self.degree)}
            lv.orbit_order = [lv.point]
            self._levels.append(lv)
        self._levels[level_idx].gens.append(g)

    def _gens_for_level(self, i):
        out = []
        for lv in self._levels[i:]:
            out.extend(lv.gens)
        return out

    def _rebuild_orbit(self, i):
        lv = self._levels[i]
        gens = self._gens_for_level(i)
        trans = {lv.point: Perm.identity(self.degree)}
        order = [lv.point]
        qi = 0
        while qi < len(order):
            p = order[qi]
            qi += 1
            up = trans[p]
            for s in gens:
                q = s(p)
                if q not in trans:
                    trans[q] = s * up
                    order.append(q)
        lv.transversal = trans
        lv.orbit_order = order

    def _schreier_sims(self):
        # Bottom-up: level i is done when its orbit is closed and every
        # Schreier generator sifts to the identity through deeper levels.
        i = len(self._levels) - 1
        while i >= 0:
            self._rebuild_orbit(i)
            lv = self._levels[i]
            gens = self._gens_for_level(i)
            stall = None
            for p in lv.orbit_order:
                up = lv.transversal[p]
                for s in gens:
                    uq = lv.transversal[s(p)]
                    schreier = uq.inverse() * (s * up)
                    if schreier.is_identity():
                        continue
                    residue, j = self._strip(schreier, i + 1)
                    if not residue.is_identity():
                        self._add_strong_gen(j, residue)
                        stall = j
                        break
                if stall is not None:
                    break
            i = stall if stall is not None else i - 1

    # -- queries ------------------------------------------------------------

    @property
    def base(self):
        self._ensure_chain()
        return tuple(lv.point for lv in self._levels)

    @property
    def strong_generators(self):
        self._ensure_chain()
        return tuple(self._gens_for_level(0))

    @property
    def transversals(self):
        """Per base point: orbit point -> coset representative."""
        self._ensure_chain()
        return tuple(dict(lv.transversal) for lv in self._levels)

    def order(self):
        self._ensure_chain()
        n = 1
        for lv in self._levels:
            n *= len(lv.transversal)
        return n

    def is_trivial(self):
        # decidable without a stabiliser chain
        return all(g.is_identity() for g in self.generators)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        self._ensure_chain()
        residue, _ = self._strip(g, 0)
        return residue.is_identity()

    def elements(self, cap=DEFAULT_ENUMERATION_CAP):
        """Yield each group element exactly once; refuses above the cap."""
        order = self.order()
        if order > cap:
            raise CapExceededError(
                f"group order {order} exceeds enumeration cap {cap}",
                required=order,
                cap=cap,
            )
        self._ensure_chain()

        def rec(i):
            if i == len(self._levels):
                yield Perm.identity(self.degree)
                return
            lv = self._levels[i]
            points = [lv.point] + sorted(p for p in lv.transversal if p != lv.point)
            for p in points:
                rep = lv.transversal[p]
                for h in rec(i + 1):
                    yield rep * h

        return rec(0)

    def element_list(self, cap=DEFAULT_ENUMERATION_CAP):
        """Like elements() but materialized (and cached for small groups)."""
        if self._element_cache is not None:
            if self.order() > cap:
                raise CapExceededError(
                    f"group order {self.order()} exceeds enumeration cap {cap}",
                    required=self.order(),
                    cap=cap,
                )
            return self._element_cache
        elems = list(self.elements(cap))
        if len(elems) <= _ELEMENT_CACHE_LIMIT:
            self._element_cache = elems
        return elems

    def orbit(self, s):
        """The orbit of a point, as a sorted tuple."""
        if not 0 <= s < self.degree:
            raise ValueError(f"invalid point {s}")
        gens = self.strong_generators
        seen = {s}
        queue = [s]
        while queue:
            p = queue.pop()
            for g in gens:
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return tuple(sorted(seen))

    def orbits(self):
        """All orbits on 0..degree-1, sorted by smallest element."""
        remaining = set(range(self.degree))
        out = []
        while remaining:
            s = min(remaining)
            orb = self.orbit(s)
            out.append(orb)
            remaining.difference_update(orb)
        return tuple(out)

    def stabiliser_generators(self, s):
        """Schreier generators for the stabiliser of a point."""
        gens = self.strong_generators
        trans = {s: Perm.identity(self.degree)}
        order = [s]
        qi = 0
        while qi < len(order):
            p = order[qi]
            qi += 1
            for g in gens:
                q = g(p)
                if q not in trans:
                    trans[q] = g * trans[p]
                    order.append(q)
        out = []
        seen = set()
        for p in order:
            up = trans[p]
            for g in gens:
                sg = trans[g(p)].inverse() * (g * up)
                if not sg.is_identity() and sg.images not in seen:
                    seen.add(sg.images)
                    out.append(sg)
        return tuple(out)

    def suborbits(self, s):
        """Orbit partition of all points under the stabiliser of s."""
        stab_gens = self.stabiliser_generators(s)
        remaining = set(range(self.degree))
        out = []
        while remaining:
            v = min(remaining)
            seen = {v}
            queue = [v]
            while queue:
                p = queue.pop()
                for g in stab_gens:
                    q = g(p)
                    if q not in seen:
                        seen.add(q)
                        queue.append(q)
            out.append(tuple(sorted(seen)))
            remaining.difference_update(seen)
        return tuple(out)

    def pointwise_stabiliser(self, points):
        """The subgroup fixing every given point, via a base change."""
        points = tuple(dict.fromkeys(points))
        if not points:
            return self
        chain = PermGroup(self.degree, self.strong_generators, base_prefix=points)
        chain._ensure_chain()
        gens = chain._gens_for_level(len(points))
        return PermGroup(self.degree, gens)

    def setwise_stabiliser(self, points, cap=DEFAULT_ENUMERATION_CAP):
        """The subgroup mapping the given set onto itself (capped enumeration)."""
        target = frozenset(points)
        kept = [g for g in self.elements(cap) if frozenset(g(p) for p in target) == target]
        return PermGroup.from_elements(self.degree, kept)

    @classmethod
    def from_elements(cls, degree, elements):
        """Group generated by the given elements, with redundant ones dropped."""
        gens = []
        group = cls(degree, [])
        for e in elements:
            if not group.contains(e):
                gens.append(e)
                group = cls(degree, gens)
        return group

    # -- motion -------------------------------------------------------------

    def motion(self, cap=DEFAULT_ENUMERATION_CAP) -> MotionReport:
        """Exact minimal support of a non-identity element.

        Enumerates when the order is within the cap, otherwise runs an exact
        depth-first search over the stabiliser chain, pruning by the number
        of already-determined moved points.
        """
        self._ensure_chain()
        if self.is_trivial():
            return MotionReport(None, None, "none")
        if self.order() <= cap:
            best = None
            witness = None
            for g in self.elements(cap):
                if g.is_identity():
                    continue
                supp = len(g.support())
                if best is None or supp < best:
                    best, witness = supp, g
            return MotionReport(best, witness, "enumeration")
        return self._motion_backtrack()

    def _motion_backtrack(self) -> MotionReport:
        levels = self._levels
        n = self.degree
        k = len(levels)
        # fixed_at[i]: points unmoved by every generator at levels >= i; their
        # final image is already decided by the partial product at depth i.
        moved = set()
        fixed_at = [None] * (k + 1)
        fixed_at[k] = tuple(range(n))
        for i in range(k - 1, -1, -1):
            for g in levels[i].gens:
                moved.update(g.support())
            fixed_at[i] = tuple(s for s in range(n) if s not in moved)

        best = n + 1
        witness = None

        def dfs(i, partial):
            nonlocal best, witness
            if i == k:
                if not partial.is_identity():
                    supp = len(partial.support())
                    if supp < best:
                        best, witness = supp, partial
                return
            lv = levels[i]
            points = [lv.point] + sorted(p for p in lv.transversal if p != lv.point)
            for p in points:
                g = partial * lv.transversal[p]
                images = g.images
                lower = 0
                for s in fixed_at[i + 1]:
                    if images[s] != s:
                        lower += 1
                        if lower >= best:
                            break
                if lower >= best:
                    continue
                dfs(i + 1, g)

        dfs(0, Perm.identity(n))
        return MotionReport(best, witness, "backtrack")

    # -- misc ----------------------------------------------------------------

    def to_json_dict(self):
        return {
            "degree": self.degree,
            "generators": [list(g.images) for g in self.generators],
            "order": self.order(),
        }

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def schreier_sims(generators, degree=None) -> PermGroup:
    """Build a PermGroup (with its stabiliser chain) from generators."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree required for the trivial group")
        degree = gens[0].degree
    return PermGroup(degree, gens)
