"""End-to-end replays of the worked examples.  Each function returns a
JSON-ready report; ``status`` is ``ok`` or ``unknown``."""
from __future__ import annotations

from typing import Callable

from .classtable import ClassTuple, from_group, monster_snippet
from .covers import RamificationData, classify_genus_zero, genus_from_indices
from .obstruction import family_verdict, monster_refined, psl2_refined
from .permgroup import (
    FiniteGroup,
    alt,
    cyclic_product,
    dihedral,
    format_cycles,
    from_cycles,
    inverse,
    mul,
    sym,
)
from .qarith import cross_ratio_orbit, format_p1, parse_ratfunc, simplify
from .ret import is_valid_tuple, search
from .specialize import specialize_cover, specialized_genus


def _c1(n: int, cycles) -> tuple:
    """Permutation from 1-based cycles."""
    return from_cycles(n, [[x - 1 for x in c] for c in cycles])


def _fmt(z) -> str:
    return format_p1(z) if not hasattr(z, "d") else str(z)


def _orbit_strings(orbit) -> list[str]:
    return sorted(_fmt(simplify(z)) for z in orbit)


def klein_t2() -> dict:
    G = cyclic_product([2, 2])
    table = from_group(G)
    R = RamificationData.build(table, ["2A", "2B", "2C"], ["0", "1", "inf"])
    T0 = parse_ratfunc("U^2")
    rep = specialize_cover(R, T0)
    pts = sorted(rep.survivor_points())
    return {
        "status": "ok",
        "cover": R.to_json(),
        "T0": str(T0),
        "r_T0": rep.r_T0,
        "survivor_points": [format_p1(p) for p in pts],
        "report": rep.to_json(),
    }


def d2n_crossratio() -> dict:
    G = dihedral(5)
    table = from_group(G)
    pts = ["0", "1", "-1", "1/5"]
    R = RamificationData.build(table, ["2A"] * 4, pts)
    T0 = parse_ratfunc("U^2/(2U^2-2U+1)")
    rep = specialize_cover(R, T0)
    survivors = rep.survivor_points()
    orb_sp = cross_ratio_orbit(*survivors)
    orb_src = cross_ratio_orbit(*[R.branch_points[i] for i in range(4)])
    disjoint = not (set(orb_sp) & set(orb_src))
    g = genus_from_indices(R.d, R.e)
    return {
        "status": "ok",
        "cover": R.to_json(),
        "T0": str(T0),
        "r_T0": rep.r_T0,
        "p": list(rep.p),
        "q": list(rep.q),
        "s": list(rep.s),
        "inertia_orders": sorted(sv.inertia_order for sv in rep.survivors()),
        "survivor_points": [_fmt(simplify(z)) for z in survivors],
        "source_genus": g,
        "specialized_genus": specialized_genus(rep, R, assume_no_group_drop=True),
        "bounds": rep.bounds.to_json(),
        "orbit_specialized": _orbit_strings(orb_sp),
        "orbit_source": _orbit_strings(orb_src),
        "verdict": "non-isomorphic" if disjoint else "undecided",
    }


def psl2_19() -> dict:
    v = psl2_refined(19)
    return {"status": "ok" if v.obstructed is not None else "unknown", **v.to_json()}


def monster() -> dict:
    v = monster_refined(monster_snippet())
    return {"status": "ok" if v.obstructed is not None else "unknown", **v.to_json()}


# the explicit generating triples (1-based cycles); dihedral ones use s, s·r, r⁻¹
EXCEPTIONAL = {
    "A4": (lambda: alt(4), 4, [[(1, 2), (3, 4)], [(1, 2, 3)], [(2, 3, 4)]]),
    "S4": (lambda: sym(4), 4, [[(1, 2)], [(2, 3, 4)], [(4, 3, 2, 1)]]),
    "A5": (lambda: alt(5), 5, [[(1, 5), (3, 4)], [(1, 2, 4)], [(5, 4, 3, 2, 1)]]),
}


def _tuple_report(name: str, G: FiniteGroup, gs) -> dict:
    table = from_group(G)
    ids = [G.class_of(g) for g in gs]
    found = search(G, ids, count=True)
    e = [table.order(c) for c in ids]
    case = classify_genus_zero(RamificationData(table, G.order, ClassTuple(table, tuple(ids))))
    return {
        "case": name,
        "group": G.describe(),
        "order": G.order,
        "e": e,
        "classes": table.names(ids),
        "tuple": [format_cycles(g, one_based=True) for g in gs],
        "tuple_valid": is_valid_tuple(G, gs, ids),
        "genus": genus_from_indices(G.order, e),
        "classification": None if case is None else case.name,
        "found": found.found is not None,
        "nielsen_count": found.nielsen_count,
        "rigid": found.nielsen_count == 1,
    }


def exceptional_list() -> dict:
    rows = []
    G = cyclic_product([2, 2])
    table = from_group(G)
    ids = [table.id_of(n) for n in ("2A", "2B", "2C")]
    rows.append(_tuple_report("(Z/2)^2", G, search(G, ids).found))
    for name, (make, n, cyc) in EXCEPTIONAL.items():
        rows.append(_tuple_report(name, make(), [_c1(n, c) for c in cyc]))
    for n in (3, 4, 5):
        G = dihedral(n)
        r, s = G.generators[0], G.generators[1]
        rows.append(_tuple_report(f"D{2 * n}", G, [s, mul(s, r), inverse(r)]))
    ok = all(row["rigid"] and row["genus"] == 0 and row["tuple_valid"] for row in rows)
    return {"status": "ok", "all_rigid": ok, "cases": rows}


def rigid_s4() -> dict:
    make, n, cyc = EXCEPTIONAL["S4"]
    return {"status": "ok", **_tuple_report("S4", make(), [_c1(n, c) for c in cyc])}


def sn_catalog() -> dict:
    rows = []
    for kind in ("sym", "alt"):
        for n in range(5, 9):
            v = family_verdict(kind, n)
            rows.append({"group": f"{kind}({n})", **v.to_json()})
    unknown = any(r["obstructed"] is None for r in rows)
    return {"status": "unknown" if unknown else "ok", "results": rows}


REPROS: dict[str, Callable[[], dict]] = {
    "klein-t2": klein_t2,
    "d2n-crossratio": d2n_crossratio,
    "psl2-19": psl2_19,
    "monster": monster,
    "rigid-s4": rigid_s4,
    "exceptional-list": exceptional_list,
    "sn-catalog": sn_catalog,
}


def run_repro(name: str) -> dict:
    if name not in REPROS:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(REPROS)}")
    out = REPROS[name]()
    out["name"] = name
    return out
