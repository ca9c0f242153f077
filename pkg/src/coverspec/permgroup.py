"""Finite permutation groups stored by full enumeration.

Permutations are tuples of images on ``0..n-1``.  Products compose as maps:
``mul(g, h)`` sends ``x`` to ``g(h(x))``, so ``g1 g2 g3 = 1`` means applying
``g3`` first.  This matches the tuples printed for the genus-0 covers, e.g.
``(1 2), (2 3 4), (4 3 2 1)`` in S4 multiplies to the identity.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 10**6
DEFAULT_RANK_CAP = 10**4


class GroupError(ValueError):
    pass


class OrderCapExceeded(GroupError):
    pass


class RankSearchCapExceeded(GroupError):
    pass


class NotPrime(GroupError):
    pass


class NoSuchClass(GroupError):
    pass


class SplitClassAmbiguous(GroupError):
    pass


# ---------------------------------------------------------------------------
# permutation helpers


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(g[x] for x in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def power(g: Perm, k: int) -> Perm:
    n = len(g)
    if k < 0:
        g, k = inverse(g), -k
    result = identity(n)
    base = g
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def perm_order(g: Perm) -> int:
    return math.lcm(*cycle_type(g)) if g else 1


def cycles(g: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(g)
    out = []
    for start in range(len(g)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = g[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = g[x]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(g)), reverse=True))


def from_cycles(n: int, cycle_list: Iterable[Sequence[int]]) -> Perm:
    img = list(range(n))
    for cyc in cycle_list:
        cyc = list(cyc)
        if len(set(cyc)) != len(cyc) or any(not 0 <= x < n for x in cyc):
            raise GroupError(f"bad cycle {cyc} for degree {n}")
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def format_cycles(g: Perm, one_based: bool = False) -> str:
    off = 1 if one_based else 0
    parts = ["(" + " ".join(str(x + off) for x in c) + ")" for c in cycles(g) if len(c) > 1]
    return "".join(parts) or "()"


def check_perm(g: Sequence[int], n: int) -> Perm:
    g = tuple(g)
    if len(g) != n or sorted(g) != list(range(n)):
        raise GroupError(f"{g} is not a permutation of degree {n}")
    return g


def partition_label(parts: Sequence[int]) -> str:
    """Cycle-type name such as ``[5^1,1^1]`` (parts in decreasing order)."""
    counts: dict[int, int] = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    return "[" + ",".join(f"{k}^{counts[k]}" for k in sorted(counts, reverse=True)) + "]"


def parse_partition_label(label: str) -> tuple[int, ...]:
    body = label.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise NoSuchClass(f"not a cycle-type label: {label}")
    parts: list[int] = []
    for item in body[1:-1].split(","):
        item = item.strip()
        if not item:
            continue
        k, _, m = item.partition("^")
        parts.extend([int(k)] * int(m or 1))
    return tuple(sorted(parts, reverse=True))


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupClass:
    id: int
    representative: Perm
    size: int
    element_order: int
    name: str
    members: frozenset[int] = field(repr=False, compare=False, default=frozenset())


class FiniteGroup:
    """A permutation group with every element enumerated."""

    def __init__(self, degree: int, generators: Sequence[Perm], elements: list[Perm],
                 kind: str = "perm", params: dict | None = None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.kind = kind
        self.params = params or {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.index

    def __repr__(self) -> str:
        return f"FiniteGroup({self.describe()}, order={self.order})"

    def describe(self) -> str:
        if self.kind in ("sym", "alt", "dihedral"):
            return f"{self.kind}({self.params.get('n')})"
        if self.kind == "psl2":
            return f"psl2({self.params['p']})"
        if self.kind == "cyclic_product":
            return f"cyclic_product({self.params['orders']})"
        return f"{self.kind}(degree={self.degree})"

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    @cached_property
    def element_orders(self) -> list[int]:
        return [perm_order(g) for g in self.elements]

    def mul_idx(self, i: int, j: int) -> int:
        return self.index[mul(self.elements[i], self.elements[j])]

    def inv_idx(self, i: int) -> int:
        return self.index[inverse(self.elements[i])]

    @cached_property
    def _class_data(self) -> tuple[list[GroupClass], list[int]]:
        n = self.order
        class_of = [-1] * n
        raw: list[list[int]] = []
        gen_pairs = [(g, inverse(g)) for g in self.generators]
        for i in range(n):
            if class_of[i] >= 0:
                continue
            cid = len(raw)
            class_of[i] = cid
            members = [i]
            queue = deque([self.elements[i]])
            while queue:
                x = queue.popleft()
                for g, gi in gen_pairs:
                    y = mul(mul(gi, x), g)
                    j = self.index[y]
                    if class_of[j] < 0:
                        class_of[j] = cid
                        members.append(j)
                        queue.append(y)
            raw.append(members)
        infos = []
        for members in raw:
            rep = min(self.elements[j] for j in members)
            infos.append((self.element_orders[members[0]], len(members), rep, members))
        infos.sort(key=lambda t: (t[0], t[1], t[2]))
        names = self._class_names([(o, s, r) for o, s, r, _ in infos])
        classes = []
        remap = [0] * n
        for cid, (o, s, rep, members) in enumerate(infos):
            classes.append(GroupClass(cid, rep, s, o, names[cid], frozenset(members)))
            for j in members:
                remap[j] = cid
        return classes, remap

    def _class_names(self, infos: list[tuple[int, int, Perm]]) -> list[str]:
        if self.kind in ("sym", "alt"):
            types = [cycle_type(r) for _, _, r in infos]
            names = []
            for k, t in enumerate(types):
                label = partition_label(t)
                same = [j for j, u in enumerate(types) if u == t]
                if len(same) > 1:
                    # split A_n class: the one with the lexicographically least member is "A"
                    label += "AB"[sorted(same, key=lambda j: infos[j][2]).index(k)]
                names.append(label)
            return names
        names = []
        counters: dict[int, int] = {}
        for o, _, _ in infos:
            k = counters.get(o, 0)
            counters[o] = k + 1
            names.append(f"{o}{_letters(k)}")
        return names

    @property
    def classes(self) -> list[GroupClass]:
        return self._class_data[0]

    def class_of_index(self, i: int) -> int:
        return self._class_data[1][i]

    def class_of(self, g: Perm) -> int:
        return self._class_data[1][self.index[tuple(g)]]

    def class_by_name(self, name: str) -> GroupClass:
        for c in self.classes:
            if c.name == name:
                return c
        if self.kind in ("sym", "alt"):
            tag = name[-1] if name[-1] in "AB" and name.rstrip("AB").endswith("]") else ""
            base = name[: len(name) - len(tag)] if tag else name
            return cycle_type_class(self, parse_partition_label(base), tag or None)
        raise NoSuchClass(f"no class named {name!r} in {self.describe()}")

    @cached_property
    def center(self) -> list[int]:
        return [c.representative for c in self.classes if c.size == 1]

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(self.generators, 2))

    def generated_order(self, gens: Sequence[Perm], stop_at: int | None = None) -> int:
        return len(closure(self.degree, gens, cap=stop_at or self.order))

    def generates(self, gens: Sequence[Perm]) -> bool:
        if not gens:
            return self.order == 1
        return len(closure(self.degree, gens, cap=self.order)) == self.order


def _letters(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("A") + r) + s
    return s


def closure(degree: int, gens: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP) -> list[Perm]:
    """Breadth-first enumeration of the group generated by ``gens``."""
    e = identity(degree)
    gens = [tuple(g) for g in gens if tuple(g) != e]
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    return out


def generate(degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_ORDER_CAP,
             kind: str = "perm", params: dict | None = None) -> FiniteGroup:
    gens = [check_perm(g, degree) for g in generators]
    elements = closure(degree, gens, cap=cap)
    return FiniteGroup(degree, gens, elements, kind=kind, params=params)


# ---------------------------------------------------------------------------
# constructors


def sym(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("n must be positive")
    gens = []
    if n >= 2:
        gens.append(from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(from_cycles(n, [tuple(range(n))]))
    return generate(n, gens or [identity(n)], cap=cap, kind="sym", params={"n": n})


def alt(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("n must be positive")
    gens = [from_cycles(n, [(0, 1, k)]) for k in range(2, n)]
    return generate(n, gens or [identity(n)], cap=cap, kind="alt", params={"n": n})


def cyclic_product(orders: Sequence[int], cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Direct product of cyclic groups acting on a disjoint union of cycles."""
    degree = sum(orders)
    gens = []
    off = 0
    for d in orders:
        if d < 1:
            raise GroupError("cyclic factor orders must be positive")
        gens.append(from_cycles(degree, [tuple(range(off, off + d))]) if d > 1 else identity(degree))
        off += d
    return generate(max(degree, 1), gens or [identity(1)], cap=cap, kind="cyclic_product",
                    params={"orders": list(orders)})


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on the vertices of an ``n``-gon."""
    if n < 2:
        raise GroupError("dihedral(n) needs n >= 2")
    if n == 2:
        g = generate(4, [from_cycles(4, [(0, 1)]), from_cycles(4, [(2, 3)])], cap=cap)
        g.kind, g.params = "dihedral", {"n": 2}
        return g
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generate(n, [rot, ref], cap=cap, kind="dihedral", params={"n": n})


def quaternion8() -> FiniteGroup:
    """Q8 in its regular representation."""
    # elements: (sign, unit) with units 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    idx = {e: i for i, e in enumerate(elems)}

    def left(a):
        img = []
        for b in elems:
            s, u = table[(a[1], b[1])]
            img.append(idx[(a[0] * b[0] * s, u)])
        return tuple(img)

    g = generate(8, [left((1, "i")), left((1, "j"))], kind="quaternion8", params={})
    return g


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def psl2(p: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """PSL_2(F_p) acting on the projective line ``{0..p-1, ∞=p}``."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    inf = p

    def act(a, b, c, d):
        img = []
        for z in range(p + 1):
            if z == inf:
                num, den = a, c
            else:
                num, den = (a * z + b) % p, (c * z + d) % p
            img.append(inf if den % p == 0 else (num * pow(den, -1, p)) % p)
        return tuple(img)

    gens = [act(1, 1, 0, 1), act(0, p - 1, 1, 0)]
    return generate(p + 1, gens, cap=cap, kind="psl2", params={"p": p})


def group_from_spec(spec: dict, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from its JSON description."""
    kind = spec.get("kind")
    if kind == "sym":
        return sym(int(spec["n"]), cap=cap)
    if kind == "alt":
        return alt(int(spec["n"]), cap=cap)
    if kind == "psl2":
        return psl2(int(spec["p"]), cap=cap)
    if kind == "dihedral":
        return dihedral(int(spec["n"]), cap=cap)
    if kind in ("quaternion8", "quaternion"):
        return quaternion8()
    if kind in ("cyclic", "cyclic_product"):
        orders = spec.get("orders") or [int(spec["n"])]
        return cyclic_product([int(d) for d in orders], cap=cap)
    if kind == "perm":
        degree = int(spec["degree"])
        gens = [from_cycles(degree, cyc) for cyc in spec["generators"]]
        return generate(degree, gens, cap=cap)
    raise GroupError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# class lookups, maximal cyclic subgroups, rank


def cycle_type_class(G: FiniteGroup, partition: Sequence[int], tag: str | None = None) -> GroupClass:
    if G.kind not in ("sym", "alt"):
        raise NoSuchClass("cycle-type lookup needs sym(n) or alt(n)")
    n = G.params["n"]
    parts = tuple(sorted((int(x) for x in partition), reverse=True))
    if sum(parts) < n:
        parts = parts + (1,) * (n - sum(parts))
    if sum(parts) != n:
        raise NoSuchClass(f"{list(partition)} is not a partition of {n}")
    matches = [c for c in G.classes if cycle_type(c.representative) == parts]
    if not matches:
        raise NoSuchClass(f"no class of cycle type {partition_label(parts)} in {G.describe()}")
    if len(matches) == 1:
        return matches[0]
    if tag is None:
        raise SplitClassAmbiguous(f"{partition_label(parts)} splits in {G.describe()}; tag A or B needed")
    for c in matches:
        if c.name.endswith(tag):
            return c
    raise NoSuchClass(f"bad tag {tag!r}")


def cyclic_subgroup(G: FiniteGroup, i: int) -> frozenset[int]:
    g = G.elements[i]
    out = {G.index[G.identity]}
    x = g
    while x != G.identity:
        out.add(G.index[x])
        x = mul(x, g)
    return frozenset(out)


@dataclass(frozen=True)
class MaximalCyclicData:
    nu: int
    representatives: list[GroupClass]
    subgroups: list[frozenset[int]]


def maximal_cyclic_classes(G: FiniteGroup) -> MaximalCyclicData:
    """Conjugacy classes of maximal cyclic subgroups.

    ``<g^p>`` for a prime ``p`` dividing ``|g|`` is strictly inside ``<g>``;
    a cyclic subgroup is maximal iff it never arises that way.  Two cyclic
    subgroups are conjugate iff their generator sets meet the same classes.
    """
    n = G.order
    orders = G.element_orders
    not_max = set()
    sub_key: dict[frozenset[int], int] = {}
    for i in range(n):
        o = orders[i]
        for p in _prime_divisors(o):
            not_max.add(cyclic_subgroup(G, G.index[power(G.elements[i], p)]))
    reps: dict[frozenset[int], int] = {}
    subgroups = []
    for i in range(n):
        if orders[i] == 1 and n > 1:
            continue
        H = cyclic_subgroup(G, i)
        if H in not_max or H in sub_key:
            continue
        sub_key[H] = i
        gen_classes = frozenset(G.class_of_index(j) for j in H if orders[j] == orders[i])
        if gen_classes not in reps:
            reps[gen_classes] = i
            subgroups.append(H)
    rep_classes = sorted({G.class_of_index(i) for i in reps.values()})
    classes = [G.classes[c] for c in rep_classes]
    return MaximalCyclicData(len(reps), classes, subgroups)


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def rank(G: FiniteGroup, cap: int = DEFAULT_RANK_CAP) -> int:
    """Minimal number of generators, by exhaustive search."""
    if G.order > cap:
        raise RankSearchCapExceeded(f"order {G.order} exceeds rank-search cap {cap}")
    if G.order == 1:
        return 0
    e_idx = G.index[G.identity]
    firsts = [G.index[c.representative] for c in G.classes if c.element_order > 1]
    others = [i for i in range(G.order) if i != e_idx]
    k = 1
    while True:
        for first in firsts:
            for rest in itertools.combinations(others, k - 1):
                gens = [G.elements[first]] + [G.elements[j] for j in rest]
                if G.generates(gens):
                    return k
        k += 1


def derived_subgroup(G: FiniteGroup) -> list[Perm]:
    comms = {mul(mul(inverse(a), inverse(b)), mul(a, b)) for a in G.elements for b in G.elements}
    return closure(G.degree, sorted(comms))


def abelianization(G: FiniteGroup) -> FiniteGroup:
    """``G/[G, G]`` as a permutation group on the cosets of the derived subgroup."""
    D = set(derived_subgroup(G))
    cosets: list[frozenset[Perm]] = []
    where: dict[Perm, int] = {}
    for g in G.elements:
        if g in where:
            continue
        c = frozenset(mul(g, d) for d in D)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    reps = [next(iter(c)) for c in cosets]
    gens = [tuple(where[mul(g, r)] for r in reps) for g in G.generators]
    return generate(len(cosets), gens)
