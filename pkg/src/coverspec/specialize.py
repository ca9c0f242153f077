"""Specializing a Galois cover along a rational function ``T0 ∈ Q(U)``.

Over a branch point ``t_i`` with ramification index ``e_i`` every point ``u``
of the fiber ``T0⁻¹(t_i)`` has a multiplicity ``α = ord_u(T0 - t_i)``.  The
specialized cover is branched at ``u`` iff ``e_i`` does not divide ``α``, and
its inertia there is generated by ``g_i^α``.  Fibers are computed exactly as
squarefree factor data over Q, including the point at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classtable import ClassTable, ClassTuple
from .covers import (
    CoverError,
    NegativeGenus,
    NonIntegralGenus,
    RamificationData,
    epsilon_of,
    genus_from_indices,
)
from .qarith import (
    INF,
    ConstantFunction,
    FiberEntry,
    FiberProfile,
    P1Q,
    PolyQ,
    RatFunc,
    expand_points,
    fiber_profile,
    format_p1,
    format_rat,
    mobius,
    reduce_ratfunc,
)


class SpecializationError(ValueError):
    pass


class EmptyRamification(SpecializationError):
    pass


class GroupDropNotSupported(SpecializationError):
    pass


class NormalizationFailed(SpecializationError):
    pass


def inertia_power_class(cls: int, alpha: int, table: ClassTable) -> tuple[int, int]:
    """Class of ``g^alpha`` for ``g`` in ``cls`` and its element order."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    e = table.order(cls)
    return table.power_class(cls, alpha), e // math.gcd(e, alpha)


@dataclass(frozen=True)
class Survivor:
    entry: FiberEntry
    alpha: int
    inertia_order: int
    inertia_class: int
    points: int

    def coordinates(self) -> list | None:
        """Explicit points when every irreducible piece has degree ≤ 2."""
        if self.entry.factor is None:
            return [INF]
        return expand_points(self.entry.factor)


@dataclass(frozen=True)
class BranchFiber:
    branch_point: P1Q
    class_id: int
    e: int
    profile: FiberProfile
    p: int
    q: int
    s: int
    m: tuple[int, ...]   # multiplicities of surviving multiple points (one per point)
    n: tuple[int, ...]   # multiplicities of dropped points
    survivors: tuple[Survivor, ...]

    @property
    def identity_one(self) -> bool:
        return self.p + sum(self.m) + sum(self.n) == self.profile.N


@dataclass(frozen=True)
class Bounds:
    upper_rN: int
    lower_b1: Fraction
    lower_b1_strict: Fraction
    lower_b2: int
    genus_upper: int | None
    genus_lower: Fraction | None

    def to_json(self) -> dict:
        return {
            "upper_rN": self.upper_rN,
            "lower_b1": format_rat(self.lower_b1),
            "lower_b1_strict": format_rat(self.lower_b1_strict),
            "lower_b2": self.lower_b2,
            "genus_upper": self.genus_upper,
            "genus_lower": None if self.genus_lower is None else format_rat(self.genus_lower),
        }


def compute_bounds(r: int, epsilon: Fraction, e_inf: int, N: int, d: int,
                   g: int | None) -> Bounds:
    """Exact values of the bounds on ``r_T0`` and ``g_T0``.

    ``lower_b1_strict`` is the quantity ``(r - ε - 2) N + 2`` that ``r_T0``
    exceeds whenever ``r_T0 > 0``; ``lower_b2`` is meaningful for ``r >= 4``;
    ``genus_lower`` assumes the group does not drop.
    """
    if r < 1:
        raise EmptyRamification("bounds need at least one branch point")
    if N < 1:
        raise ValueError("N >= 1 required")
    epsilon = Fraction(epsilon)
    strict = (r - epsilon - 2) * N + 2
    b1 = strict / (1 - Fraction(1, e_inf))
    return Bounds(
        upper_rN=r * N,
        lower_b1=b1,
        lower_b1_strict=strict,
        lower_b2=(r - 4) * N + 4,
        genus_upper=None if g is None else N * (g + d - 1),
        genus_lower=None if g is None else g + Fraction(d, 4) * (N - 1) * (r - 4),
    )


@dataclass(frozen=True)
class SpecializationReport:
    N: int
    fibers: tuple[BranchFiber, ...]
    r_T0: int
    bounds: Bounds
    identities_ok: bool
    ramification_sum: int   # left-hand side of the global inequality
    table: ClassTable = field(repr=False, compare=False)

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(f.p for f in self.fibers)

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(f.q for f in self.fibers)

    @property
    def s(self) -> tuple[int, ...]:
        return tuple(f.s for f in self.fibers)

    @property
    def inequality_two_ok(self) -> bool:
        return self.ramification_sum <= 2 * self.N - 2

    def survivors(self) -> list[Survivor]:
        return [sv for f in self.fibers for sv in f.survivors]

    def survivor_tuple(self) -> ClassTuple:
        """Inertia classes of the specialized cover, one entry per branch point."""
        ids = []
        for sv in self.survivors():
            ids.extend([sv.inertia_class] * sv.points)
        return ClassTuple(self.table, tuple(ids))

    def survivor_multiset(self) -> list[tuple[int, int]]:
        return sorted((sv.inertia_order, sv.inertia_class) for sv in self.survivors()
                      for _ in range(sv.points))

    def survivor_points(self) -> list:
        """Coordinates of all branch points of the specialized cover when each
        lies in Q or a quadratic field; raises if some factor is larger."""
        pts = []
        for sv in self.survivors():
            c = sv.coordinates()
            if c is None:
                raise SpecializationError(f"factor {sv.entry.factor} has an irreducible piece of degree > 2")
            pts.extend(c)
        return pts

    def to_json(self) -> dict:
        t = self.table
        return {
            "N": self.N,
            "r_T0": self.r_T0,
            "identities_ok": self.identities_ok,
            "inequality_2": {"lhs": self.ramification_sum, "rhs": 2 * self.N - 2},
            "bounds": self.bounds.to_json(),
            "per_branch": [
                {
                    "branch_point": format_p1(f.branch_point),
                    "class": t.name(f.class_id),
                    "e": f.e,
                    "profile": [
                        {"multiplicity": en.multiplicity, "points": en.degree, "factor": en.describe()}
                        for en in f.profile.entries
                    ],
                    "p": f.p,
                    "q": f.q,
                    "s": f.s,
                    "survivors": [
                        {
                            "point": sv.entry.describe(),
                            "points": sv.points,
                            "alpha": sv.alpha,
                            "inertia_order": sv.inertia_order,
                            "inertia_class": t.name(sv.inertia_class),
                        }
                        for sv in f.survivors
                    ],
                }
                for f in self.fibers
            ],
        }


def _split_fiber(profile: FiberProfile, cls: int, table: ClassTable) -> BranchFiber:
    e = table.order(cls)
    p = q = s = 0
    m: list[int] = []
    n: list[int] = []
    survivors = []
    for entry in profile.entries:
        alpha = entry.multiplicity
        if alpha % e == 0:
            s += entry.degree
            n.extend([alpha] * entry.degree)
            continue
        if alpha == 1:
            p += entry.degree
        else:
            q += entry.degree
            m.extend([alpha] * entry.degree)
        pc, order = inertia_power_class(cls, alpha, table)
        survivors.append(Survivor(entry, alpha, order, pc, entry.degree))
    return BranchFiber(profile.t, cls, e, profile, p, q, s, tuple(m), tuple(n), tuple(survivors))


def _safe_genus(R: RamificationData) -> int | None:
    try:
        return genus_from_indices(R.d, R.e)
    except (NonIntegralGenus, NegativeGenus):
        return None


def specialize_cover(R: RamificationData, T0: RatFunc) -> SpecializationReport:
    if R.branch_points is None:
        raise CoverError("specialization needs rational branch points")
    if T0.N < 1:
        raise ConstantFunction("T0 is constant")
    N = T0.N
    fibers = tuple(
        _split_fiber(fiber_profile(T0, t), c, R.table)
        for t, c in zip(R.branch_points, R.classes.ids)
    )
    r_T0 = sum(f.p + f.q for f in fibers)
    ram = sum(sum(x - 1 for x in f.m) + sum(x - 1 for x in f.n) for f in fibers)
    bounds = compute_bounds(R.r, epsilon_of(R.e), max(R.e), N, R.d, _safe_genus(R)) if R.r else None
    return SpecializationReport(
        N=N,
        fibers=fibers,
        r_T0=r_T0,
        bounds=bounds,
        identities_ok=all(f.identity_one for f in fibers),
        ramification_sum=ram,
        table=R.table,
    )


def specialized_genus(report: SpecializationReport, R: RamificationData,
                      assume_no_group_drop: bool = False) -> int:
    """Genus of the specialized cover by Riemann–Hurwitz over its branch points.

    Valid only when the group does not shrink; the caller must assert that.
    """
    if not assume_no_group_drop:
        raise GroupDropNotSupported("pass assume_no_group_drop=True to assert d_T0 = d")
    d = R.d
    total = Fraction(-2 * d)
    for sv in report.survivors():
        total += sv.points * Fraction(d, sv.inertia_order) * (sv.inertia_order - 1)
    if total.denominator != 1 or total.numerator % 2:
        raise NonIntegralGenus(f"2g-2 = {total}")
    return (int(total) + 2) // 2


# ---------------------------------------------------------------------------
# normalized path: move ∞ off the branch locus first, then count affine roots


def _mobius_inverse_image(t: P1Q, theta: Fraction) -> Fraction:
    """Image of ``t`` under ``T ↦ 1/(T - theta)``."""
    if t is INF:
        return Fraction(0)
    return 1 / (t - theta)


def _pick_outside(avoid: Sequence, start: int = 0) -> Fraction:
    k = start
    while True:
        for cand in (Fraction(k), Fraction(-k - 1), Fraction(1, k + 2)):
            if cand not in avoid:
                return cand
        k += 1


def normalized_counts(R: RamificationData, T0: RatFunc) -> list[tuple[int, int, int]]:
    """``(p_i, q_i, s_i)`` through a Möbius change of coordinates on both
    lines so that neither ``∞`` nor ``T0(∞)`` is a branch point; only affine
    roots are then counted.  Used to cross-check :func:`specialize_cover`."""
    pts = list(R.branch_points)
    finite = [t for t in pts if t is not INF]
    theta = _pick_outside(finite)
    chi_inv = reduce_ratfunc(PolyQ([1]), PolyQ([-theta, 1]))   # 1/(T - theta)
    new_pts = [_mobius_inverse_image(t, theta) for t in pts]
    u0 = None
    k = 0
    while u0 is None:
        cand = Fraction(k)
        if T0(cand) not in pts:
            u0 = cand
        k += 1
    chi_prime = mobius(u0, 1, 1, 0)                              # u0 + 1/U
    T1 = chi_inv.compose(T0.compose(chi_prime))
    if T1(INF) in new_pts:
        raise NormalizationFailed("T1(∞) is still a branch point")
    out = []
    for t, cls in zip(new_pts, R.classes.ids):
        e = R.table.order(cls)
        poly = T1.a - T1.b * t
        if poly.degree != T1.N:
            raise NormalizationFailed("∞ lies in a branch fiber after normalization")
        p = q = s = 0
        for entry in fiber_profile(T1, t).entries:
            if entry.factor is None:
                raise NormalizationFailed("unexpected point at infinity")
            if entry.multiplicity == 1:
                p += entry.degree
            elif entry.multiplicity % e:
                q += entry.degree
            else:
                s += entry.degree
        out.append((p, q, s))
    return out
