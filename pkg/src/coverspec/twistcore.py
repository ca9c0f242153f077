"""Twisted actions of a free group on a finite group.

For two homomorphisms ``u, v`` from a free group of rank ``s`` to ``G`` the
twisted action lets a generator ``x_i`` act on the elements of ``G`` by
``x ↦ u(x_i) · x · v(x_i)⁻¹``.  A common fixed point ``x0`` is exactly an
element with ``u = x0 v x0⁻¹`` on every generator.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .permgroup import FiniteGroup, Perm, from_cycles, inverse, mul


class TwistError(ValueError):
    pass


class RankMismatch(TwistError):
    pass


class TargetMismatch(TwistError):
    pass


@dataclass(frozen=True)
class HomSpec:
    target: FiniteGroup
    images: tuple[Perm, ...]

    def __post_init__(self):
        for g in self.images:
            if g not in self.target:
                raise TwistError(f"image {g} is not in the target group")

    @property
    def rank(self) -> int:
        return len(self.images)

    @classmethod
    def parse(cls, target: FiniteGroup, data: str | list) -> HomSpec:
        """Images as a JSON list, each image a list of 0-based cycles."""
        if isinstance(data, str):
            data = json.loads(data)
        return cls(target, tuple(from_cycles(target.degree, cyc) for cyc in data))

    def conjugate(self, w: Perm) -> HomSpec:
        """The map ``w⁻¹ u w``."""
        wi = inverse(w)
        return HomSpec(self.target, tuple(mul(mul(wi, g), w) for g in self.images))


@dataclass(frozen=True)
class TwistedAction:
    group: FiniteGroup
    # one permutation of element indices per free generator
    table: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.table)

    def fixed_points(self, i: int) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.table[i]) if x == y)

    def common_fixed_points(self) -> frozenset[int]:
        out = frozenset(range(self.group.order))
        for i in range(self.rank):
            out &= self.fixed_points(i)
        return out

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(self.group.order):
            if start in seen:
                continue
            orbit, todo = [start], [start]
            seen.add(start)
            while todo:
                x = todo.pop()
                for perm in self.table:
                    y = perm[x]
                    if y not in seen:
                        seen.add(y)
                        orbit.append(y)
                        todo.append(y)
            out.append(sorted(orbit))
        return out


def _mult_table(G: FiniteGroup) -> list[list[int]]:
    t = getattr(G, "_twist_mult", None)
    if t is None:
        idx, els = G.index, G.elements
        t = [[idx[mul(a, b)] for b in els] for a in els]
        G._twist_mult = t
    return t


def twisted_action(u: HomSpec, v: HomSpec) -> TwistedAction:
    if u.target is not v.target:
        raise TargetMismatch("u and v must have the same target group")
    if u.rank != v.rank:
        raise RankMismatch(f"source ranks differ: {u.rank} != {v.rank}")
    G = u.target
    M = _mult_table(G)
    table = []
    for a, b in zip(u.images, v.images):
        ai, bi = G.index[a], G.index[inverse(b)]
        table.append(tuple(M[M[ai][x]][bi] for x in range(G.order)))
    return TwistedAction(G, tuple(table))


def conjugacy_via_fixed_point(u: HomSpec, v: HomSpec) -> Perm | None:
    """Some ``x0`` with ``u(g) = x0 v(g) x0⁻¹`` on every generator, or None."""
    fixed = twisted_action(u, v).common_fixed_points()
    if not fixed:
        return None
    return u.target.elements[min(fixed)]


def simultaneous_conjugator(u: HomSpec, v: HomSpec) -> Perm | None:
    """Direct search over ``G``; independent of the twisted action."""
    for x in u.target.elements:
        xi = inverse(x)
        if all(a == mul(mul(x, b), xi) for a, b in zip(u.images, v.images)):
            return x
    return None


def all_homspecs(G: FiniteGroup, rank: int, first: Sequence[Perm] | None = None) -> Iterator[HomSpec]:
    pools = [list(G.elements)] * rank
    if rank and first is not None:
        pools = [list(first)] + pools[1:]
    for imgs in itertools.product(*pools):
        yield HomSpec(G, tuple(imgs))


@dataclass(frozen=True)
class LemmaCheck:
    group: str
    pairs: int
    conjugate_pairs: int
    mismatches: int


def exhaustive_lemma_check(G: FiniteGroup, max_rank: int = 2, prune: bool = True) -> LemmaCheck:
    """Compare the fixed-point test with direct search on every pair of maps of
    rank ``≤ max_rank``.  With ``prune`` the first image of ``u`` runs over
    class representatives only; both sides are invariant under conjugating u."""
    reps = [c.representative for c in G.classes]
    pairs = conj = bad = 0
    for s in range(max_rank + 1):
        us = list(all_homspecs(G, s, reps if prune else None))
        vs = list(all_homspecs(G, s))
        for u in us:
            for v in vs:
                x0 = conjugacy_via_fixed_point(u, v)
                direct = simultaneous_conjugator(u, v)
                pairs += 1
                if x0 is not None:
                    conj += 1
                    if any(a != mul(mul(x0, b), inverse(x0)) for a, b in zip(u.images, v.images)):
                        bad += 1
                        continue
                if (x0 is None) != (direct is None):
                    bad += 1
    return LemmaCheck(G.describe(), pairs, conj, bad)
