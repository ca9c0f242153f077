"""Ramification data of Galois covers of the projective line."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classtable import ClassTable, ClassTuple, TableMismatch, from_declaration, from_group, tuple_prec
from .permgroup import group_from_spec
from .qarith import INF, P1Q, format_p1, parse_p1


class CoverError(ValueError):
    pass


class NonIntegralGenus(CoverError):
    pass


class NegativeGenus(CoverError):
    pass


class GenusSideConditionViolated(CoverError):
    pass


class DuplicateBranchPoints(CoverError):
    pass


@dataclass(frozen=True)
class RamificationData:
    table: ClassTable
    d: int
    classes: ClassTuple
    branch_points: tuple[P1Q, ...] | None = None

    def __post_init__(self):
        if self.classes.table is not self.table:
            raise TableMismatch("class tuple belongs to another table")
        for e in self.e:
            if self.d % e:
                raise CoverError(f"ramification index {e} does not divide d = {self.d}")
        if self.branch_points is not None:
            if len(self.branch_points) != self.r:
                raise CoverError("need one branch point per class")
            seen = set()
            for t in self.branch_points:
                key = "inf" if t is INF else t
                if key in seen:
                    raise DuplicateBranchPoints(f"branch point {format_p1(t)} repeated")
                seen.add(key)

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def e(self) -> tuple[int, ...]:
        return tuple(self.table.order(c) for c in self.classes.ids)

    @classmethod
    def build(cls, table: ClassTable, classes: Sequence[str | int],
              branch_points: Sequence | None = None, d: int | None = None) -> RamificationData:
        if d is None:
            if table.group is None:
                raise CoverError("d is required for declared tables")
            d = table.group.order
        pts = None if branch_points is None else tuple(parse_p1(t) for t in branch_points)
        return cls(table, d, ClassTuple.of(table, classes), pts)

    def to_json(self) -> dict:
        out = {"group": self.table.group_name, "d": self.d, "classes": self.classes.names()}
        if self.branch_points is not None:
            out["branch_points"] = [format_p1(t) for t in self.branch_points]
        return out


def ramification_from_json(data: dict, table: ClassTable | None = None) -> RamificationData:
    """``{"group": {...}, "classes": [...], "branch_points": [...]}``; a declared
    table may be given inline under ``"table"`` together with ``"d"``."""
    if table is None:
        if "table" in data:
            table = from_declaration(data["table"])
        else:
            table = from_group(group_from_spec(data["group"]))
    d = data.get("d")
    return RamificationData.build(table, data["classes"], data.get("branch_points"),
                                  None if d is None else int(d))


@dataclass(frozen=True)
class RhInvariants:
    epsilon: Fraction
    e_inf: int
    genus: int


def epsilon_of(e: Sequence[int]) -> Fraction:
    return sum((Fraction(1, x) for x in e), Fraction(0))


def genus_from_indices(d: int, e: Sequence[int]) -> int:
    """Galois Riemann–Hurwitz: ``2g - 2 = d (r - 2 - ε)``."""
    two_g_minus_2 = d * (len(e) - 2 - epsilon_of(e))
    if two_g_minus_2.denominator != 1 or two_g_minus_2.numerator % 2:
        raise NonIntegralGenus(f"2g-2 = {two_g_minus_2} is not an even integer")
    g = (int(two_g_minus_2) + 2) // 2
    if g < 0:
        raise NegativeGenus(f"genus {g} < 0")
    return g


def rh_invariants(R: RamificationData) -> RhInvariants:
    e = R.e
    return RhInvariants(epsilon_of(e), max(e, default=0), genus_from_indices(R.d, e))


@dataclass(frozen=True)
class ExceptionalCase:
    name: str
    group: str
    e: tuple[int, ...]


def classify_indices(d: int, e: Sequence[int]) -> ExceptionalCase | None:
    """Genus-0 Galois covers: trivial, cyclic with two branch points, or one of
    the five triangle families."""
    try:
        if genus_from_indices(d, e) != 0:
            return None
    except (NonIntegralGenus, NegativeGenus):
        return None
    es = tuple(sorted(e))
    r = len(es)
    if r == 0:
        return ExceptionalCase("trivial", "1", es) if d == 1 else None
    if r == 2 and es[0] == es[1] == d:
        return ExceptionalCase("cyclic", f"Z/{d}", es)
    if r == 3:
        if es == (2, 2, 2):
            return ExceptionalCase("klein", "(Z/2)^2", es)
        if es == (2, 3, 3):
            return ExceptionalCase("tetrahedral", "A4", es)
        if es == (2, 3, 4):
            return ExceptionalCase("octahedral", "S4", es)
        if es == (2, 3, 5):
            return ExceptionalCase("icosahedral", "A5", es)
        if es[:2] == (2, 2) and es[2] >= 3:
            return ExceptionalCase("dihedral", f"D{2 * es[2]}", es)
    return None


def classify_genus_zero(R: RamificationData) -> ExceptionalCase | None:
    return classify_indices(R.d, R.e)


def invariants_prec(A: RamificationData, B: RamificationData, same_group: bool = False) -> bool:
    """Necessary condition for B to be a specialization of A: ``r_A <= r_B``
    and ``C_A ≺ C_B``.  A false result certifies non-specialization."""
    if A.table is not B.table:
        raise TableMismatch("comparisons are only supported within one group")
    if not same_group and genus_from_indices(A.d, A.e) == 0:
        raise GenusSideConditionViolated(
            "source cover has genus 0; pass same_group=True to assert G_A = G_B")
    if A.r > B.r:
        return False
    return tuple_prec(A.classes, B.classes)[0]


def strict_growth(r: int, epsilon: Fraction, N: int, proper_cover: bool) -> bool:
    """Whether one of the sufficient conditions for ``r_T0 > r`` holds."""
    if N < 2:
        raise ValueError("N >= 2 required")
    epsilon = Fraction(epsilon)
    return (
        r >= 5
        or (proper_cover and epsilon <= Fraction(r - 2, 2))
        or (N >= 4 and r == 4 and epsilon <= Fraction(3, 2))
        or (N >= 4 and r == 3 and epsilon <= Fraction(3, 4))
    )
