"""Conjugacy-class tables: power maps, Z-closures, the very-different
relation and the class-tuple pre-order.

A table is either computed from a :class:`~coverspec.permgroup.FiniteGroup`
(every fact known) or declared from data (facts known only as far as the
declaration asserts them).  Queries that the data cannot settle raise
:class:`UnknownRelation`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .permgroup import FiniteGroup, power


class ClassTableError(ValueError):
    pass


class InconsistentDeclaration(ClassTableError):
    pass


class TableMismatch(ClassTableError):
    pass


class UnknownRelation(ClassTableError):
    """The declared data does not decide the query."""


@dataclass(frozen=True)
class ClassInfo:
    id: int
    name: str
    element_order: int
    size: int | None = None


@dataclass
class ClassTable:
    group_name: str
    classes: list[ClassInfo]
    z_closure: dict[int, frozenset[int]]
    complete: dict[int, bool]
    power_map: dict[tuple[int, int], int] = field(default_factory=dict)
    source: str = "computed"
    citation: str = ""
    # every class whose order is a multiple of one of these is listed
    exhaustive_multiples: frozenset[int] = frozenset()
    group: FiniteGroup | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._by_name = {c.name: c.id for c in self.classes}

    # -- lookups --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def is_computed(self) -> bool:
        return self.source == "computed"

    @property
    def identity_class(self) -> int:
        for c in self.classes:
            if c.element_order == 1:
                return c.id
        raise InconsistentDeclaration("no identity class")

    def id_of(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.classes):
                raise KeyError(name)
            return name
        if name in self._by_name:
            return self._by_name[name]
        if self.group is not None:
            return self.group.class_by_name(name).id
        raise KeyError(f"no class named {name!r} in table {self.group_name}")

    def name(self, cid: int) -> str:
        return self.classes[cid].name

    def order(self, cid: int) -> int:
        return self.classes[cid].element_order

    def names(self, ids: Iterable[int]) -> list[str]:
        return [self.name(i) for i in ids]

    def nontrivial(self) -> list[int]:
        return [c.id for c in self.classes if c.element_order > 1]

    def power_class(self, cid: int, k: int) -> int:
        """Class of ``g^k`` for ``g`` in class ``cid``."""
        o = self.order(cid)
        k %= o
        if (cid, k) in self.power_map:
            return self.power_map[(cid, k)]
        if self.group is not None:
            rep = self.group.classes[cid].representative
            return self.group.class_of(power(rep, k))
        if k == 0:
            return self.identity_class
        if k == 1:
            return cid
        # a complete closure holds every power; one candidate of the right order settles it
        want = o // math.gcd(o, k)
        if self.complete.get(cid):
            cands = [m for m in self.z_closure[cid] if self.order(m) == want]
            if len(cands) == 1:
                return cands[0]
        raise UnknownRelation(f"power {k} of {self.name(cid)} not declared")

    # -- closure membership ---------------------------------------------

    def in_closure(self, member: int, of: int) -> bool:
        """Whether class ``member`` lies in ``of^Z``; may raise UnknownRelation."""
        if member in self.z_closure[of]:
            return True
        if self.order(of) % self.order(member) != 0 or self.complete[of]:
            return False
        raise UnknownRelation(
            f"closure of {self.name(of)} is partial; membership of {self.name(member)} undecided")

    # -- very different -------------------------------------------------

    def very_different_status(self, a: int, b: int) -> tuple[bool | None, str]:
        """Three-valued ``a # b`` with an explanation."""
        for c0 in range(len(self.classes)):
            if a in self.z_closure[c0] and b in self.z_closure[c0]:
                return False, f"both lie in {self.name(c0)}^Z"
        if self.is_computed:
            return True, "no class has both in its Z-closure"
        m = math.lcm(self.order(a), self.order(b))
        listed = any(m % q == 0 for q in self.exhaustive_multiples)
        candidates = [c.id for c in self.classes if c.element_order % m == 0]
        if not listed:
            return None, f"table does not list every class of order divisible by {m}"
        partial = [self.name(c) for c in candidates if not self.complete[c]]
        if partial:
            return None, f"closures of {', '.join(partial)} are partial"
        return True, f"no listed class of order divisible by {m} covers both"

    def very_different(self, a: int | str, b: int | str) -> bool:
        a, b = self.id_of(a), self.id_of(b)
        value, reason = self.very_different_status(a, b)
        if value is None:
            raise UnknownRelation(reason)
        return value

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "group": self.group_name,
            "source": self.citation or self.source,
            "classes": [
                {
                    "name": c.name,
                    "order": c.element_order,
                    "z_closure": sorted(self.names(self.z_closure[c.id]),
                                        key=lambda n: (-self.order(self.id_of(n)), n)),
                    "complete": self.complete[c.id],
                    **({"size": c.size} if c.size is not None else {}),
                }
                for c in self.classes
            ],
            **({"exhaustive_multiples": sorted(self.exhaustive_multiples)}
               if self.exhaustive_multiples else {}),
        }


def from_group(G: FiniteGroup) -> ClassTable:
    classes = [ClassInfo(c.id, c.name, c.element_order, c.size) for c in G.classes]
    power_map: dict[tuple[int, int], int] = {}
    closure: dict[int, frozenset[int]] = {}
    for c in G.classes:
        seen = set()
        for k in range(c.element_order):
            pc = G.class_of(power(c.representative, k))
            power_map[(c.id, k)] = pc
            seen.add(pc)
        closure[c.id] = frozenset(seen)
    return ClassTable(
        group_name=G.describe(),
        classes=classes,
        z_closure=closure,
        complete={c.id: True for c in classes},
        power_map=power_map,
        source="computed",
        group=G,
    )


def from_declaration(data: dict) -> ClassTable:
    """Validate and load a declared table (see docs/formats.md)."""
    raw = data.get("classes") or []
    names = [c["name"] for c in raw]
    if len(set(names)) != len(names):
        raise InconsistentDeclaration("duplicate class names")
    classes = [ClassInfo(i, c["name"], int(c["order"]), c.get("size")) for i, c in enumerate(raw)]
    by_name = {c.name: c.id for c in classes}
    ident = [c.id for c in classes if c.element_order == 1]
    if len(ident) != 1:
        raise InconsistentDeclaration("exactly one class of order 1 (the identity) is required")
    e = ident[0]
    closure: dict[int, frozenset[int]] = {}
    complete: dict[int, bool] = {}
    for c, entry in zip(classes, raw):
        members = set()
        for n in entry.get("z_closure", [c.name]):
            if n not in by_name:
                raise InconsistentDeclaration(f"{c.name}: closure names unknown class {n!r}")
            members.add(by_name[n])
        if e not in members:
            raise InconsistentDeclaration(f"{c.name}: closure must contain the identity class")
        if c.id not in members:
            raise InconsistentDeclaration(f"{c.name}: closure must contain the class itself")
        for m in members:
            if c.element_order % classes[m].element_order:
                raise InconsistentDeclaration(
                    f"{c.name}: member {classes[m].name} has order not dividing {c.element_order}")
        closure[c.id] = frozenset(members)
        complete[c.id] = bool(entry.get("complete", False))
    power_map: dict[tuple[int, int], int] = {}
    for c, entry in zip(classes, raw):
        for k, target in (entry.get("powers") or {}).items():
            k = int(k) % c.element_order
            if target not in by_name:
                raise InconsistentDeclaration(f"{c.name}: power map names unknown class {target!r}")
            t = by_name[target]
            expected = c.element_order // math.gcd(c.element_order, k)
            if classes[t].element_order != expected:
                raise InconsistentDeclaration(
                    f"{c.name}^{k} must have order {expected}, declared {target}")
            if t not in closure[c.id]:
                if complete[c.id]:
                    raise InconsistentDeclaration(
                        f"{c.name}: power {target} contradicts the complete closure")
                closure[c.id] = closure[c.id] | {t}
            power_map[(c.id, k)] = t
    # closures are power-closed: members of a member's closure belong too
    for c in classes:
        for m in list(closure[c.id]):
            extra = closure[m] - closure[c.id]
            if extra and complete[c.id]:
                raise InconsistentDeclaration(
                    f"{c.name}: complete closure misses {sorted(classes[x].name for x in extra)}"
                    f" from the closure of {classes[m].name}")
            closure[c.id] = closure[c.id] | closure[m]
    return ClassTable(
        group_name=str(data.get("group", "declared")),
        classes=classes,
        z_closure=closure,
        complete=complete,
        power_map=power_map,
        source="declared",
        citation=str(data.get("source", "")),
        exhaustive_multiples=frozenset(int(x) for x in data.get("exhaustive_multiples", [])),
    )


def load_declaration(path: str | Path) -> ClassTable:
    return from_declaration(json.loads(Path(path).read_text()))


def monster_snippet() -> ClassTable:
    """The shipped Monster class data (only the classes the argument uses)."""
    return load_declaration(Path(__file__).with_name("data") / "monster.json")


# ---------------------------------------------------------------------------
# class tuples


@dataclass(frozen=True)
class ClassTuple:
    table: ClassTable = field(compare=False, repr=False)
    ids: tuple[int, ...]

    def __post_init__(self):
        e = self.table.identity_class
        if e in self.ids:
            raise ValueError("class tuples may not contain the identity class")

    @classmethod
    def of(cls, table: ClassTable, names: Sequence[str | int]) -> ClassTuple:
        return cls(table, tuple(table.id_of(n) for n in names))

    def __len__(self) -> int:
        return len(self.ids)

    def names(self) -> list[str]:
        return self.table.names(self.ids)

    def __str__(self) -> str:
        return "(" + ", ".join(self.names()) + ")"


def tuple_prec(cf: ClassTuple, cl: ClassTuple) -> tuple[bool, dict[int, int]]:
    """``cf ≺ cl``: every entry of ``cl`` lies in the Z-closure of an entry of
    ``cf``.  Returns the verdict and a witness map (position in ``cl`` →
    position in ``cf``); the map is partial when the verdict is false."""
    if cf.table is not cl.table:
        raise TableMismatch("tuples come from different class tables")
    table = cf.table
    witness: dict[int, int] = {}
    failed = False
    undecided: list[str] = []
    for j, c in enumerate(cl.ids):
        reasons = []
        for i, f in enumerate(cf.ids):
            try:
                if table.in_closure(c, f):
                    witness[j] = i
                    break
            except UnknownRelation as exc:
                reasons.append(str(exc))
        else:
            if reasons:
                undecided.extend(reasons)
            else:
                failed = True
    if failed:
        return False, witness
    if undecided:
        raise UnknownRelation("; ".join(undecided))
    return True, witness
