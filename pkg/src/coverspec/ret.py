"""Generating tuples with product one in prescribed classes, and their
count modulo simultaneous conjugation (Nielsen classes)."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .permgroup import FiniteGroup, Perm, inverse, mul

DEFAULT_SEARCH_CAP = 10**8


class SearchCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TupleSearchResult:
    found: tuple[Perm, ...] | None
    nielsen_count: int | None
    tuples_checked: int
    pruned_nodes: int


def _members(G: FiniteGroup, cid: int) -> list[Perm]:
    return [G.elements[i] for i in sorted(G.classes[cid].members)]


def _check_args(G: FiniteGroup, class_ids: Sequence[int], cap: int, reps_first: bool) -> None:
    if len(class_ids) < 2:
        raise ValueError("at least two classes are required")
    for c in class_ids:
        if G.classes[c].element_order == 1:
            raise ValueError("classes must be nontrivial")
    sizes = [G.classes[c].size for c in class_ids[:-1]]
    if reps_first:
        sizes[0] = 1
    work = math.prod(sizes)
    if work > cap:
        raise SearchCapExceeded(f"search space {work} exceeds cap {cap}")


def _product(gs: Sequence[Perm], n: int) -> Perm:
    acc = tuple(range(n))
    for g in gs:
        acc = mul(acc, g)
    return acc


def is_valid_tuple(G: FiniteGroup, gs: Sequence[Perm], class_ids: Sequence[int]) -> bool:
    """Independent check of the three defining conditions."""
    if len(gs) != len(class_ids):
        return False
    if any(G.class_of(g) != c for g, c in zip(gs, class_ids)):
        return False
    if _product(gs, G.degree) != G.identity:
        return False
    return G.generates(list(gs))


def _enumerate(G: FiniteGroup, class_ids: Sequence[int], first: list[Perm], stop_first: bool):
    members = [_members(G, c) for c in class_ids[:-1]]
    members[0] = first
    last = class_ids[-1]
    n = G.degree
    checked = 0
    pruned = 0
    stack = [(0, tuple(range(n)), ())]
    # depth-first over partial products
    while stack:
        depth, prod, chosen = stack.pop()
        if depth == len(members):
            checked += 1
            g_last = inverse(prod)
            if G.class_of(g_last) != last:
                pruned += 1
                continue
            gs = chosen + (g_last,)
            if not G.generates(list(gs)):
                pruned += 1
                continue
            yield gs, checked, pruned
            if stop_first:
                return
            continue
        for g in reversed(members[depth]):
            stack.append((depth + 1, mul(prod, g), chosen + (g,)))
    yield None, checked, pruned


def find_tuple(G: FiniteGroup, class_ids: Sequence[int], cap: int = DEFAULT_SEARCH_CAP) -> TupleSearchResult:
    """Existence search; the first entry ranges over one representative only
    since conjugating a solution gives a solution."""
    class_ids = list(class_ids)
    _check_args(G, class_ids, cap, reps_first=True)
    first = [G.classes[class_ids[0]].representative]
    checked = pruned = 0
    for gs, checked, pruned in _enumerate(G, class_ids, first, stop_first=True):
        if gs is not None:
            return TupleSearchResult(gs, None, checked, pruned)
    return TupleSearchResult(None, None, checked, pruned)


def all_tuples(G: FiniteGroup, class_ids: Sequence[int], cap: int = DEFAULT_SEARCH_CAP) -> list[tuple[Perm, ...]]:
    class_ids = list(class_ids)
    _check_args(G, class_ids, cap, reps_first=False)
    out = []
    for gs, _, _ in _enumerate(G, class_ids, _members(G, class_ids[0]), stop_first=False):
        if gs is not None:
            out.append(gs)
    return out


def conjugation_orbits(G: FiniteGroup, tuples: Sequence[tuple[Perm, ...]]) -> list[list[tuple[Perm, ...]]]:
    """Orbits of simultaneous conjugation, explored with the group generators."""
    remaining = set(tuples)
    gens = [(g, inverse(g)) for g in G.generators]
    orbits = []
    for t in tuples:
        if t not in remaining:
            continue
        remaining.discard(t)
        orbit = [t]
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for g, gi in gens:
                y = tuple(mul(mul(gi, h), g) for h in x)
                if y in remaining:
                    remaining.discard(y)
                    orbit.append(y)
                    queue.append(y)
        orbits.append(orbit)
    return orbits


def nielsen_count(G: FiniteGroup, class_ids: Sequence[int], cap: int = DEFAULT_SEARCH_CAP) -> int:
    return len(conjugation_orbits(G, all_tuples(G, class_ids, cap)))


def search(G: FiniteGroup, class_ids: Sequence[int], count: bool = False,
           cap: int = DEFAULT_SEARCH_CAP) -> TupleSearchResult:
    found = find_tuple(G, class_ids, cap)
    if not count:
        return found
    tuples = all_tuples(G, class_ids, cap)
    return TupleSearchResult(found.found, len(conjugation_orbits(G, tuples)),
                             found.tuples_checked, found.pruned_nodes)
