"""``cover-spec`` command line.

Exit codes: 0 success, 1 error, 2 verdict unknown with the given data.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import obstruction as obs
from .classtable import UnknownRelation, from_group, load_declaration, monster_snippet
from .covers import (
    classify_indices,
    epsilon_of,
    genus_from_indices,
    invariants_prec,
    ramification_from_json,
)
from .permgroup import FiniteGroup, format_cycles, group_from_spec, maximal_cyclic_classes, rank
from .qarith import format_rat, parse_ratfunc
from .randsuite import DEFAULT_SEED, run_property_suite, summarize
from .repro import REPROS, run_repro
from .ret import search
from .specialize import GroupDropNotSupported, specialize_cover, specialized_genus
from .twistcore import HomSpec, conjugacy_via_fixed_point, twisted_action

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def load_json_arg(value: str) -> Any:
    """Inline JSON or a path to a JSON file."""
    text = value.strip()
    if text[:1] in "{[":
        return json.loads(text)
    return json.loads(Path(value).read_text())


def _group(value: str) -> FiniteGroup:
    return group_from_spec(load_json_arg(value))


def _class_list(value: str) -> list[str]:
    text = value.strip()
    if text.startswith("["):
        return [str(x) for x in json.loads(text)]
    return [x.strip() for x in text.split(";" if ";" in text else " ") if x.strip()]


# -- commands ---------------------------------------------------------------


def cmd_group_info(args) -> dict:
    G = _group(args.group)
    mc = maximal_cyclic_classes(G)
    return {
        "group": G.describe(),
        "order": G.order,
        "abelian": G.is_abelian(),
        "center_order": len(G.center),
        "classes": [
            {"name": c.name, "order": c.element_order, "size": c.size,
             "representative": format_cycles(c.representative)}
            for c in G.classes
        ],
        "nu": mc.nu,
        "maximal_cyclic_generators": [c.name for c in mc.representatives],
        "rank": rank(G, cap=args.rank_cap),
    }


def _verdict(v: obs.Verdict) -> dict:
    return {"status": "unknown" if v.obstructed is None else "ok", **v.to_json()}


def cmd_criterion(args) -> dict:
    return _verdict(obs.criterion_check(obs.load_catalog(load_json_arg(args.catalog))))


def cmd_nurk(args) -> dict:
    return _verdict(obs.nu_rk_test(_group(args.group), rank_cap=args.rank_cap))


def cmd_psl2(args) -> dict:
    return _verdict(obs.psl2_refined(args.p))


def cmd_monster(args) -> dict:
    table = load_declaration(args.table) if args.table else monster_snippet()
    return _verdict(obs.monster_refined(table))


def cmd_specialize(args) -> dict:
    R = ramification_from_json(load_json_arg(args.cover))
    T0 = parse_ratfunc(args.t0)
    rep = specialize_cover(R, T0)
    out = {"status": "ok", "T0": str(T0), **rep.to_json()}
    if args.assume_no_group_drop:
        out["genus"] = {"g_T0": specialized_genus(rep, R, assume_no_group_drop=True),
                        "assumes_no_group_drop": True}
    return out


def cmd_ret(args) -> dict:
    G = _group(args.group)
    table = from_group(G)
    ids = [table.id_of(c) for c in _class_list(args.classes)]
    res = search(G, ids, count=args.count, cap=args.cap)
    return {
        "status": "ok",
        "group": G.describe(),
        "classes": table.names(ids),
        "found": None if res.found is None else [format_cycles(g) for g in res.found],
        "nielsen_count": res.nielsen_count,
        "rigid": None if res.nielsen_count is None else res.nielsen_count == 1,
        "tuples_checked": res.tuples_checked,
        "pruned_nodes": res.pruned_nodes,
    }


def cmd_genus(args) -> dict:
    if args.cover:
        R = ramification_from_json(load_json_arg(args.cover))
        d, e = R.d, list(R.e)
    else:
        if args.d is None or args.e is None:
            raise ValueError("give --cover, or both --d and --e")
        d, e = args.d, [int(x) for x in args.e.replace(",", " ").split()]
    g = genus_from_indices(d, e)
    case = classify_indices(d, e)
    return {
        "status": "ok",
        "d": d,
        "e": e,
        "epsilon": format_rat(epsilon_of(e)),
        "e_inf": max(e, default=0),
        "genus": g,
        "genus_zero_case": None if case is None else {"name": case.name, "group": case.group},
    }


def cmd_compare(args) -> dict:
    a, b = load_json_arg(args.a), load_json_arg(args.b)
    A = ramification_from_json(a)
    if "table" in a:
        if b.get("table", a["table"]) != a["table"]:
            raise ValueError("both covers must use the same declared table")
    elif a.get("group") != b.get("group"):
        raise ValueError("both covers must name the same group")
    B = ramification_from_json(b, table=A.table)
    verdict = invariants_prec(A, B, same_group=args.same_group)
    return {
        "status": "ok",
        "a": A.to_json(),
        "b": B.to_json(),
        "prec": verdict,
        "meaning": ("necessary condition holds" if verdict
                    else "b is not a specialization of a"),
    }


def cmd_twist(args) -> dict:
    G = _group(args.group)
    u, v = HomSpec.parse(G, args.u), HomSpec.parse(G, args.v)
    act = twisted_action(u, v)
    x0 = conjugacy_via_fixed_point(u, v)
    return {
        "status": "ok",
        "group": G.describe(),
        "rank": u.rank,
        "fixed_points": len(act.common_fixed_points()),
        "orbit_sizes": sorted(len(o) for o in act.orbits()),
        "conjugate": x0 is not None,
        "conjugator": None if x0 is None else format_cycles(x0),
    }


def cmd_repro(args) -> dict:
    return run_repro(args.name)


def cmd_property_suite(args) -> dict:
    res = run_property_suite(seed=args.seed, count=args.count)
    s = summarize(res)
    return {"status": "ok" if s["passed"] == s["instances"] else "failed", "seed": args.seed, **s}


# -- rendering --------------------------------------------------------------


def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cover-spec", description="Specialization of Galois covers of P^1.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = add("group-info", cmd_group_info, "classes, nu and rank of a group")
    sp.add_argument("--group", required=True, help="group spec JSON or file")
    sp.add_argument("--rank-cap", type=int, default=10**4)

    sp = add("criterion", cmd_criterion, "very-different clique criterion on a catalog")
    sp.add_argument("--catalog", required=True)

    sp = add("nurk", cmd_nurk, "test nu(G) >= rk(G) + 2")
    sp.add_argument("--group", required=True)
    sp.add_argument("--rank-cap", type=int, default=10**4)

    sp = add("psl2", cmd_psl2, "refined argument for PSL_2(F_p)")
    sp.add_argument("--p", type=int, required=True)

    sp = add("monster", cmd_monster, "Monster argument on declared class data")
    sp.add_argument("--table", help="declared table JSON (default: shipped snippet)")

    sp = add("specialize", cmd_specialize, "specialize a cover along T0")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--t0", required=True, help='e.g. "U^2/(2U^2-2U+1)" or {"a":[..],"b":[..]}')
    sp.add_argument("--assume-no-group-drop", action="store_true",
                    help="also report the specialized genus")

    sp = add("ret", cmd_ret, "search generating product-one tuples")
    sp.add_argument("--group", required=True)
    sp.add_argument("--classes", required=True, help='JSON list or space separated names')
    sp.add_argument("--count", action="store_true", help="also count Nielsen classes")
    sp.add_argument("--cap", type=int, default=10**8)

    sp = add("genus", cmd_genus, "Galois Riemann-Hurwitz genus and genus-0 case")
    sp.add_argument("--cover")
    sp.add_argument("--d", type=int)
    sp.add_argument("--e", help="ramification indices, e.g. 2,3,5")

    sp = add("compare", cmd_compare, "invariant pre-order between two covers")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--same-group", action="store_true", help="assert the groups coincide")

    sp = add("twist", cmd_twist, "twisted action and conjugacy of two maps")
    sp.add_argument("--group", required=True)
    sp.add_argument("--u", required=True, help="images as JSON list of cycle lists")
    sp.add_argument("--v", required=True)

    sp = add("repro", cmd_repro, "replay a worked example")
    sp.add_argument("name", choices=sorted(REPROS))

    sp = add("property-suite", cmd_property_suite, "seeded random specialization checks")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--count", type=int, default=200)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
        code = EXIT_UNKNOWN if out.get("status") == "unknown" else EXIT_OK
        if out.get("status") == "failed":
            code = EXIT_ERROR
    except (UnknownRelation, obs.UndecidablePair) as exc:
        out, code = {"status": "unknown", "reason": str(exc)}, EXIT_UNKNOWN
    except GroupDropNotSupported as exc:
        out, code = {"status": "error", "error": str(exc)}, EXIT_ERROR
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        out, code = {"status": "error", "error": f"{type(exc).__name__}: {msg}"}, EXIT_ERROR
    text = dump_json(out) if args.json else render_text(out)
    stream = sys.stderr if code == EXIT_ERROR and not args.json else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
