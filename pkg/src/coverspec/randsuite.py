"""Seeded random specialization instances and the checks run on them.

Class tuples are drawn from genuine generating product-one tuples, so every
instance is the ramification data of an actual Galois cover.  ``T0`` is
either generic or built to hit a branch point with a chosen multiplicity.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classtable import ClassTable, ClassTuple, from_group, tuple_prec
from .covers import RamificationData
from .permgroup import FiniteGroup, alt, cyclic_product, dihedral, inverse, mul, sym
from .qarith import (
    INF,
    ConstantFunction,
    P1Q,
    PolyQ,
    RatFunc,
    mobius,
    reduce_ratfunc,
)
from .specialize import normalized_counts, specialize_cover, specialized_genus

DEFAULT_SEED = 20240611

_POOL = {
    "Z2xZ2": lambda: cyclic_product([2, 2]),
    "S3": lambda: sym(3),
    "D8": lambda: dihedral(4),
    "A4": lambda: alt(4),
    "S4": lambda: sym(4),
    "D10": lambda: dihedral(5),
    "Z6": lambda: cyclic_product([6]),
    "Z8": lambda: cyclic_product([8]),
    "Z2xZ4": lambda: cyclic_product([2, 4]),
    "A5": lambda: alt(5),
}
_CYCLIC = ["Z6", "Z8"]


@lru_cache(maxsize=None)
def pool_group(name: str) -> tuple[FiniteGroup, ClassTable]:
    G = _POOL[name]()
    return G, from_group(G)


def random_rational(rng: random.Random, size: int = 4) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_poly(rng: random.Random, deg: int, size: int = 3) -> PolyQ:
    coeffs = [rng.randint(-size, size) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-size, size)
    return PolyQ(coeffs + [lead])


def random_branch_points(rng: random.Random, r: int, allow_inf: bool = True) -> list[P1Q]:
    pts: list[P1Q] = []
    if allow_inf and rng.random() < 0.4:
        pts.append(INF)
    while len(pts) < r:
        t = random_rational(rng)
        if t not in pts:
            pts.append(t)
    rng.shuffle(pts)
    return pts


def random_generating_tuple(rng: random.Random, G: FiniteGroup, r: int, tries: int = 400):
    """Random ``(g_1, …, g_r)`` with product one, nontrivial entries, generating G."""
    e = G.identity
    for _ in range(tries):
        gs = [rng.choice(G.elements) for _ in range(r - 1)]
        prod = e
        for g in gs:
            prod = mul(prod, g)
        gs.append(inverse(prod))
        if any(g == e for g in gs):
            continue
        if G.generates(gs):
            return gs
    return None


def random_cover(rng: random.Random, r: int | None = None) -> RamificationData:
    r = r if r is not None else rng.randint(2, 6)
    while True:
        name = rng.choice(_CYCLIC if r == 2 else list(_POOL))
        G, table = pool_group(name)
        gs = random_generating_tuple(rng, G, r)
        if gs is None:
            continue
        ids = tuple(G.class_of(g) for g in gs)
        pts = tuple(random_branch_points(rng, r))
        return RamificationData(table, G.order, ClassTuple(table, ids), pts)


def random_t0(rng: random.Random, N: int, branch_points) -> RatFunc:
    """Generic, designed to meet a branch point with multiplicity ``m``, or a
    pure power ``t + c·U^N``."""
    while True:
        mode = rng.choice(["generic", "designed", "designed", "power"])
        try:
            if mode == "generic":
                a = random_poly(rng, N)
                b = random_poly(rng, rng.randint(0, N))
                if rng.random() < 0.5:
                    a, b = b, a
            elif mode == "power":
                t = rng.choice(branch_points)
                c = random_rational(rng) or Fraction(1)
                mono = PolyQ([0] * N + [c])
                if t is INF:
                    a, b = PolyQ([1]), mono
                else:
                    a, b = mono + PolyQ([t]), PolyQ([1])
            else:
                t = rng.choice(branch_points)
                m = rng.randint(1, N)
                u = random_rational(rng)
                lin = PolyQ([-u, 1]) ** m
                h = random_poly(rng, N - m)
                if t is INF:
                    a, b = random_poly(rng, N), lin * h
                else:
                    b = random_poly(rng, rng.randint(0, N))
                    a = b * PolyQ([t]) + lin * h
            T0 = reduce_ratfunc(a, b)
        except ConstantFunction:
            continue
        if 1 <= T0.N <= N:
            return T0


def random_mobius(rng: random.Random) -> RatFunc:
    while True:
        al, be, ga, de = (rng.randint(-3, 3) for _ in range(4))
        if al * de - be * ga:
            return mobius(al, be, ga, de)


@dataclass
class InstanceResult:
    seed_index: int
    cover: dict
    T0: str
    N: int
    r_T0: int
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_instance(R: RamificationData, T0: RatFunc, rng: random.Random | None = None) -> dict[str, bool]:
    rep = specialize_cover(R, T0)
    b = rep.bounds
    checks = {
        "identity_1": rep.identities_ok,
        "inequality_2": rep.inequality_two_ok,
        "upper_rN": rep.r_T0 <= b.upper_rN,
        "lower_b1": rep.r_T0 >= math.ceil(b.lower_b1),
        "lower_b1_strict": rep.r_T0 == 0 or rep.r_T0 > b.lower_b1_strict,
        "lower_b2": R.r < 4 or rep.r_T0 >= b.lower_b2,
        "survivors_prec": tuple_prec(R.classes, rep.survivor_tuple())[0],
        "inertia_orders": all(sv.inertia_order > 1 for sv in rep.survivors()),
        "normalized_path": normalized_counts(R, T0) == [(f.p, f.q, f.s) for f in rep.fibers],
    }
    if b.genus_upper is not None:
        g_T0 = specialized_genus(rep, R, assume_no_group_drop=True)
        checks["genus_upper"] = g_T0 <= b.genus_upper
        checks["genus_lower"] = g_T0 >= b.genus_lower
    if rng is not None:
        mu = random_mobius(rng)
        pre = specialize_cover(R, T0.compose(mu))
        checks["degree1_invariance"] = (
            pre.r_T0 == rep.r_T0 and pre.survivor_multiset() == rep.survivor_multiset())
    return checks


def run_property_suite(seed: int = DEFAULT_SEED, count: int = 200, max_N: int = 6) -> list[InstanceResult]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        R = random_cover(rng)
        N = rng.randint(1, max_N)
        T0 = random_t0(rng, N, list(R.branch_points))
        checks = check_instance(R, T0, rng)
        rep_r = specialize_cover(R, T0).r_T0
        out.append(InstanceResult(k, R.to_json(), str(T0), T0.N, rep_r, checks))
    return out


def no_collision_instance(rng: random.Random, max_N: int = 4, tries: int = 100):
    """A cover together with ``T0`` unramified over every branch point."""
    R = random_cover(rng)
    for _ in range(tries):
        N = rng.randint(1, max_N)
        a, b = random_poly(rng, N), random_poly(rng, rng.randint(0, N - 1) if N > 1 else 0)
        try:
            T0 = reduce_ratfunc(a, b)
        except ConstantFunction:
            continue
        rep = specialize_cover(R, T0)
        if all(f.p == T0.N for f in rep.fibers):
            return R, T0, rep
    return None


def summarize(results: list[InstanceResult]) -> dict:
    names = sorted({k for res in results for k in res.checks})
    return {
        "instances": len(results),
        "passed": sum(res.ok for res in results),
        "per_check": {n: sum(res.checks.get(n, True) for res in results) for n in names},
        "failures": [
            {"index": res.seed_index, "cover": res.cover, "T0": res.T0,
             "failed": [k for k, v in res.checks.items() if not v]}
            for res in results if not res.ok
        ],
    }
