"""Deterministic command line front end.

Commands are grouped as `finsite <group> <command>`; every command reads
JSON documents, dispatches to one library operation, and renders the
result either as a machine document (--format json, canonically ordered)
or as a fixed-width table. Exit codes separate mathematics from plumbing:
0 when every verdict in the output passed, 1 when a verified property
failed (with witnesses in the output), 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Mapping, Sequence

from . import fincat, linalg, modrep, sheaves, sieves, topology, torsion, typen
from .errors import (
    CyclicQuiver,
    FieldMismatch,
    FinsiteError,
    InfiniteFieldUnsupported,
    InvalidSieve,
    NotAGroupTable,
    NotAPoset,
    ShapeMismatch,
    SizeBudgetExceeded,
    UnknownObject,
    ValidationFailed,
    WrongDomain,
)

# input-shaped failures: the command never got a well-formed question
_INPUT_ERRORS = (
    ValidationFailed, UnknownObject, WrongDomain, InvalidSieve,
    CyclicQuiver, NotAPoset, NotAGroupTable, ShapeMismatch, FieldMismatch,
    InfiniteFieldUnsupported, SizeBudgetExceeded,
    ValueError, KeyError, OSError, json.JSONDecodeError,
)

_NAMED_TOPOLOGIES = ("trivial", "maximal", "dense", "atomic")


# ---------------------------------------------------------------------------
# input resolution

def _builtin_category(name: str, budget: fincat.SizeBudget) -> fincat.FiniteCategory:
    if name == "quiver2":
        return fincat.build_quiver_category(
            ["x", "y"], [("f", "x", "y"), ("g", "x", "y")],
            name="quiver2", budget=budget)
    if name.startswith("chain"):
        n = int(name[len("chain"):])
        objs = [str(i) for i in range(n)]
        return fincat.build_poset_category(
            objs, [(str(i), str(i + 1)) for i in range(n - 1)],
            name=name, budget=budget)
    if name == "diamond":
        return fincat.build_poset_category(
            ["0", "a", "b", "1"],
            [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            name="diamond", budget=budget)
    if name == "idem_monoid":
        return fincat.build_monoid_category(
            [[0, 1], [1, 1]], element_names=["1", "e"], name="idem_monoid")
    if name.startswith("trunc_fi:"):
        return fincat.build_trunc_fi_category(int(name.split(":")[1]),
                                              budget=budget)
    if name.startswith("trunc_vi:"):
        _, q, n = name.split(":")
        return fincat.build_trunc_vi_category(int(q), int(n), budget=budget)
    if name.startswith("orbit:"):
        return fincat.build_standard_category(
            "orbit", {"group": name.split(":")[1]}, budget=budget)
    raise ValueError(f"unknown builtin category {name!r}")


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _resolve_category(spec: str, budget: fincat.SizeBudget) -> fincat.FiniteCategory:
    if spec.endswith(".json") or "/" in spec:
        return fincat.validate_category(_load_json(spec), budget)
    return _builtin_category(spec, budget)


def _resolve_topology(cat: fincat.FiniteCategory,
                      spec: str) -> topology.GrothendieckTopology:
    if spec in _NAMED_TOPOLOGIES:
        return topology.named_topology(cat, spec)
    return topology.topology_from_doc(cat, _load_json(spec))


def _resolve_module(cat: fincat.FiniteCategory, path: str) -> modrep.KModule:
    return modrep.module_from_doc(cat, _load_json(path))


def _resolve_spec(raw: str) -> typen.DSpec:
    doc = json.loads(raw) if raw.lstrip().startswith("{") else _load_json(raw)
    return typen.spec_from_doc(doc)


def _budget(args) -> fincat.SizeBudget:
    if getattr(args, "budget", None) is None:
        return fincat.DEFAULT_BUDGET
    return fincat.SizeBudget(max_objects=args.budget,
                             max_morphisms=args.budget)


# ---------------------------------------------------------------------------
# rendering

def _plain(value):
    """Recursively turn report payloads into JSON-serializable data."""
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_plain(v) for v in items]
    if isinstance(value, sieves.Sieve):
        return {"base": value.base, "members": list(value.members)}
    return value


def _json_text(doc) -> str:
    return json.dumps(_plain(doc), sort_keys=True, indent=2) + "\n"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    cols = len(headers)
    widths = [len(headers[i]) for i in range(cols)]
    for row in rows:
        for i in range(cols):
            widths[i] = max(widths[i], len(row[i]))
    def fmt(row):
        return "  ".join(cell.ljust(widths[i])
                         for i, cell in enumerate(row)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines) + "\n"


def _kv_table(pairs: Sequence[tuple[str, str]]) -> str:
    return _table(("field", "value"), [(k, v) for k, v in pairs])


def _sieve_label(s: sieves.Sieve) -> str:
    if not s.members:
        return "{}"
    return "{" + ", ".join(s.members) + "}"


def _bool(value: bool) -> str:
    return "true" if value else "false"


# ---------------------------------------------------------------------------
# torsion-pair descriptors for census tables

def _class_descriptors(cat: fincat.FiniteCategory,
                       j: topology.GrothendieckTopology) -> tuple[str, str]:
    """Support predicates for the torsion and torsion-free classes.

    Read off the minimal covering sieves: a maximal minimum forces the
    value to vanish on the torsion side, an empty minimum forces it on
    the free side, and a proper sieve contributes its generators. A
    generator condition whose targets are already forced to zero is
    implied and dropped.
    """
    smin = {x: topology.minimal_covering_sieve(cat, j, x)
            for x in cat.objects}
    t_zero = [x for x in cat.objects if sieves.is_maximal(cat, smin[x])]
    t_conds = [f"V_{x} = 0" for x in t_zero]
    for x in cat.objects:
        s = smin[x]
        if sieves.is_maximal(cat, s) or not s.members:
            continue
        gens = sieves.minimal_generators(cat, s)
        if all(cat.cod[g] in t_zero for g in gens):
            continue
        t_conds.extend(f"V_{g} = 0" for g in gens)
    f_conds = []
    kernel_conds = []
    f_zero = [x for x in cat.objects if not smin[x].members]
    f_conds.extend(f"V_{x} = 0" for x in f_zero)
    for x in cat.objects:
        s = smin[x]
        if sieves.is_maximal(cat, s) or not s.members:
            continue
        gens = sieves.minimal_generators(cat, s)
        kernel_conds.append(
            " ∩ ".join(f"ker V_{g}" for g in gens) + " = 0")
    f_conds.extend(kernel_conds)

    def render(conds, zeroed):
        if not conds:
            return "all"
        if len(zeroed) == len(cat.objects):
            return "0"
        return ", ".join(conds)

    return render(t_conds, t_zero), render(f_conds, f_zero)


def _topology_display_name(cat: fincat.FiniteCategory,
                           j: topology.GrothendieckTopology) -> str | None:
    for kind in ("trivial", "dense", "maximal"):
        try:
            if topology.named_topology(cat, kind) == j:
                return kind
        except FinsiteError:
            continue
    return None


# ---------------------------------------------------------------------------
# command handlers: each returns (exit_code, document, table_text)

def _cmd_category_validate(args) -> tuple[int, Any, str]:
    budget = _budget(args)
    try:
        cat = _resolve_category(args.category, budget)
    except ValidationFailed as err:
        doc = {"ok": False,
               "violations": [{"kind": v.kind, "witness": list(v.witness),
                               "detail": v.detail}
                              for v in err.violations]}
        rows = [(v["kind"], " ".join(v["witness"]), v["detail"])
                for v in doc["violations"]]
        return 1, doc, _table(("kind", "witness", "detail"), rows)
    doc = {"ok": True, "name": cat.name,
           "objects": len(cat.objects), "morphisms": len(cat.morphisms)}
    text = _kv_table([("ok", "true"), ("name", cat.name),
                      ("objects", str(len(cat.objects))),
                      ("morphisms", str(len(cat.morphisms)))])
    return 0, doc, text


def _cmd_category_build(args) -> tuple[int, Any, str]:
    params = json.loads(args.params) if args.params else {}
    cat = fincat.build_standard_category(args.kind, params, _budget(args))
    doc = fincat.category_to_doc(cat)
    text = _kv_table([("name", cat.name),
                      ("objects", " ".join(cat.objects)),
                      ("morphisms", str(len(cat.morphisms)))])
    return 0, doc, text


def _cmd_topology_enumerate(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    tops = topology.enumerate_topologies(cat, max_sieves=args.max_sieves)
    entries = []
    for i, j in enumerate(tops, start=1):
        t_desc, f_desc = _class_descriptors(cat, j)
        entries.append({
            "index": i,
            "name": _topology_display_name(cat, j),
            "covers": topology.topology_to_doc(j)["covers"],
            "torsion_class": t_desc,
            "torsion_free_class": f_desc,
        })
    doc = {"category": cat.name, "count": len(tops), "topologies": entries}
    lines = [f"{len(tops)} topologies on {cat.name}", ""]
    cover_rows = []
    for entry, j in zip(entries, tops):
        smin = {x: topology.minimal_covering_sieve(cat, j, x)
                for x in cat.objects}
        cover_rows.append(
            [str(entry["index"]), entry["name"] or "-"]
            + [_sieve_label(smin[x]) for x in cat.objects])
    lines.append(_table(["#", "name"] + [f"min_cover({x})"
                                         for x in cat.objects], cover_rows))
    pair_rows = [[str(e["index"]), e["name"] or "-",
                  e["torsion_class"], e["torsion_free_class"]]
                 for e in entries]
    lines.append(_table(("#", "name", "T(J)", "F(J)"), pair_rows))
    return 0, doc, "\n".join(lines)


def _cmd_topology_check(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    report = topology.check_axioms(cat, j, max_sieves=args.max_sieves)
    doc = {
        "is_topology": report.is_topology,
        "maximal_ok": report.maximal_ok,
        "stability_ok": report.stability_ok,
        "transitivity_ok": report.transitivity_ok,
        "inclusion_closed": report.inclusion_closed,
        "intersection_closed": report.intersection_closed,
        "witnesses": report.witnesses,
    }
    text = _kv_table([
        ("is_topology", _bool(report.is_topology)),
        ("maximal_ok", _bool(report.maximal_ok)),
        ("stability_ok", _bool(report.stability_ok)),
        ("transitivity_ok", _bool(report.transitivity_ok)),
        ("inclusion_closed", _bool(report.inclusion_closed)),
        ("intersection_closed", _bool(report.intersection_closed)),
    ])
    return (0 if report.is_topology else 1), doc, text


def _cmd_topology_named(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = topology.named_topology(cat, args.name)
    doc = topology.topology_to_doc(j)
    rows = [(x, "; ".join(_sieve_label(s) for s in j.covers_at(x)))
            for x in cat.objects]
    return 0, doc, _table(("object", "covers"), rows)


def _cmd_topology_rigidity(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    report = topology.rigidity(cat, j)
    doc = {
        "rigid": report.rigid,
        "irreducibles": list(report.irreducibles),
        "minimal_covers": (None if report.minimal_covers is None else
                           {x: list(s.members)
                            for x, s in report.minimal_covers.items()}),
        "failures": [list(f) for f in report.failures],
    }
    pairs = [("rigid", _bool(report.rigid)),
             ("irreducibles", " ".join(report.irreducibles) or "-")]
    if report.failures:
        pairs.extend(("failure", f"{y}: {_sieve_label(sieves.Sieve(y, m))}")
                     for y, m in report.failures)
    return (0 if report.rigid else 1), doc, _kv_table(pairs)


def _cmd_torsion_submodule(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    v = _resolve_module(cat, args.module)
    sub, incl = torsion.torsion_submodule(cat, j, v)
    doc = {
        "dims": dict(sub.dims),
        "module_dims": dict(v.dims),
        "inclusion": {x: linalg.mat_to_strings(v.field, incl.components[x])
                      for x in cat.objects},
    }
    rows = [(x, str(sub.dims[x]), str(v.dims[x])) for x in cat.objects]
    return 0, doc, _table(("object", "torsion_dim", "module_dim"), rows)


def _cmd_torsion_classify(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    v = _resolve_module(cat, args.module)
    report = torsion.torsion_class(cat, j, v)
    doc = report.to_doc()
    pairs = [("classification", report.classification)]
    pairs.extend((f"torsion_dim({x})", str(report.dims[x]))
                 for x in cat.objects)
    return 0, doc, _kv_table(pairs)


def _cmd_torsion_pair(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    field = modrep.parse_field_label(args.field)
    report = torsion.verify_torsion_pair(cat, j, field=field,
                                         sample_count=args.samples,
                                         seed=args.seed)
    doc = report.to_doc()
    pairs = [("passed", _bool(report.passed)),
             ("hom_vanishes", _bool(report.hom_vanishes)),
             ("closed_under_submodules", _bool(report.closed_under_submodules)),
             ("closed_under_quotients", _bool(report.closed_under_quotients)),
             ("quotients_torsion_free", _bool(report.quotients_torsion_free)),
             ("sample_count", str(report.sample_count))]
    return (0 if report.passed else 1), doc, _kv_table(pairs)


def _cmd_torsion_roundtrip(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    field = modrep.parse_field_label(args.field)
    if not field.is_finite:
        raise InfiniteFieldUnsupported(
            "the annihilator round trip enumerates vectors; pick Fp:P")
    agrees, doc = torsion.nullstellensatz_roundtrip(cat, j, field.p)
    pairs = [("agrees", _bool(agrees))]
    pairs.extend((f"realized({x})", str(n))
                 for x, n in sorted(doc["realized_counts"].items()))
    return (0 if agrees else 1), doc, _kv_table(pairs)


def _cmd_sheaf_check(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    v = _resolve_module(cat, args.module)
    verdict = sheaves.sheaf_verdict(cat, j, v)
    doc = verdict.to_doc()
    pairs = [("separated", _bool(verdict.separated)),
             ("sheaf", _bool(verdict.sheaf)),
             ("saturated", _bool(verdict.saturated.saturated)),
             ("perpendicular", _bool(verdict.perpendicular.perpendicular)),
             ("consistent", "true" if verdict.consistent else "INCONSISTENT")]
    return (0 if verdict.consistent else 1), doc, _kv_table(pairs)


def _cmd_sheaf_sheafify(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    v = _resolve_module(cat, args.module)
    sh, unit = sheaves.sheafify(cat, j, v)
    doc = {
        "module": modrep.module_to_doc(sh),
        "unit": {x: linalg.mat_to_strings(v.field, unit.components[x])
                 for x in cat.objects},
    }
    rows = [(x, str(v.dims[x]), str(sh.dims[x])) for x in cat.objects]
    return 0, doc, _table(("object", "input_dim", "sheaf_dim"), rows)


def _cmd_sheaf_equivalence(args) -> tuple[int, Any, str]:
    cat = _resolve_category(args.category, _budget(args))
    j = _resolve_topology(cat, args.topology)
    field = modrep.parse_field_label(args.field)
    report = sheaves.verify_rigid_equivalence(cat, j, field=field,
                                              sample_count=args.samples,
                                              seed=args.seed)
    doc = report.to_doc()
    pairs = [("passed", _bool(report.passed)),
             ("irreducibles", " ".join(report.irreducibles) or "-"),
             ("sample_count", str(report.sample_count))]
    return (0 if report.passed else 1), doc, _kv_table(pairs)


def _cmd_typen_validate(args) -> tuple[int, Any, str]:
    spec = _resolve_spec(args.spec)
    outcome = typen.validate_spec(spec, horizon=args.horizon)
    doc = outcome.to_doc()
    doc["rigid"] = typen.rigid_spec(spec) if outcome.valid else None
    pairs = [("valid", _bool(outcome.valid)),
             ("recurrence_ok", _bool(outcome.recurrence_ok)),
             ("pieces_ok", _bool(outcome.pieces_ok)),
             ("violation", outcome.violation or "-"),
             ("rigid", "-" if doc["rigid"] is None else _bool(doc["rigid"]))]
    return (0 if outcome.valid else 1), doc, _kv_table(pairs)


def _cmd_typen_census(args) -> tuple[int, Any, str]:
    census = typen.spec_census(args.horizon)
    doc = census.to_doc()
    text = (f"generic: {len(census.generic)},"
            f" nongeneric: {len(census.nongeneric)}\n")
    return 0, doc, text


def _cmd_typen_pullback(args) -> tuple[int, Any, str]:
    rank = None if args.rank in ("empty", "none") else int(args.rank)
    s = typen.symbolic_pullback(args.object, rank, args.deg)
    doc = {"n": s.n, "rank": s.rank, "display": repr(s)}
    return 0, doc, repr(s) + "\n"


def _cmd_typen_crosscheck(args) -> tuple[int, Any, str]:
    spec = _resolve_spec(args.spec)
    report = typen.truncation_crosscheck(spec, args.horizon)
    doc = report.to_doc()
    pairs = [("passed", _bool(report.passed)),
             ("sieve_inventory_ok", _bool(report.sieve_inventory_ok)),
             ("pullback_agreement_ok", _bool(report.pullback_agreement_ok)),
             ("stability_ok", _bool(report.stability_ok)),
             ("transitivity", report.transitivity)]
    return (0 if report.passed else 1), doc, _kv_table(pairs)


# ---------------------------------------------------------------------------
# parser assembly

def _add_category(p, required: bool = True):
    p.add_argument("--category", required=required,
                   help="category document path or builtin name")
    p.add_argument("--budget", type=int, default=None,
                   help="size budget for objects and morphisms")


def _add_topology(p):
    p.add_argument("--topology", required=True,
                   help="topology document path or one of: "
                        + "|".join(_NAMED_TOPOLOGIES))


def _add_sampling(p):
    p.add_argument("--field", default="Fp:2", help="Q or Fp:P")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)


def _sub(group, name: str) -> argparse.ArgumentParser:
    # --format is declared top-level but accepted trailing as well; SUPPRESS
    # keeps the leaf from clobbering what the top parser already wrote
    p = group.add_parser(name)
    p.add_argument("--format", choices=("json", "table"),
                   default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finsite",
        description="Cover rules, torsion pairs, and sheaves on finite"
                    " categories.")
    parser.add_argument("--format", choices=("json", "table"),
                        default="table")
    groups = parser.add_subparsers(dest="group", required=True)

    cat_group = groups.add_parser("category").add_subparsers(
        dest="command", required=True)
    p = _sub(cat_group, "validate")
    _add_category(p)
    p.set_defaults(handler=_cmd_category_validate)
    p = _sub(cat_group, "build")
    p.add_argument("--kind", required=True,
                   help="poset|free_acyclic_quiver|orbit|trunc_fi|trunc_vi")
    p.add_argument("--params", default="",
                   help="JSON object of builder parameters")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(handler=_cmd_category_build)

    top_group = groups.add_parser("topology").add_subparsers(
        dest="command", required=True)
    p = _sub(top_group, "enumerate")
    _add_category(p)
    p.add_argument("--max-sieves", type=int, default=4096)
    p.set_defaults(handler=_cmd_topology_enumerate)
    p = _sub(top_group, "check")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--max-sieves", type=int, default=4096)
    p.set_defaults(handler=_cmd_topology_check)
    p = _sub(top_group, "named")
    _add_category(p)
    p.add_argument("--name", required=True, choices=_NAMED_TOPOLOGIES)
    p.set_defaults(handler=_cmd_topology_named)
    p = _sub(top_group, "rigidity")
    _add_category(p)
    _add_topology(p)
    p.set_defaults(handler=_cmd_topology_rigidity)

    tor_group = groups.add_parser("torsion").add_subparsers(
        dest="command", required=True)
    p = _sub(tor_group, "submodule")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--module", required=True)
    p.set_defaults(handler=_cmd_torsion_submodule)
    p = _sub(tor_group, "classify")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--module", required=True)
    p.set_defaults(handler=_cmd_torsion_classify)
    p = _sub(tor_group, "pair")
    _add_category(p)
    _add_topology(p)
    _add_sampling(p)
    p.set_defaults(handler=_cmd_torsion_pair)
    p = _sub(tor_group, "roundtrip")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--field", default="Fp:2", help="Fp:P (finite only)")
    p.set_defaults(handler=_cmd_torsion_roundtrip)

    sh_group = groups.add_parser("sheaf").add_subparsers(
        dest="command", required=True)
    p = _sub(sh_group, "check")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--module", required=True)
    p.set_defaults(handler=_cmd_sheaf_check)
    p = _sub(sh_group, "sheafify")
    _add_category(p)
    _add_topology(p)
    p.add_argument("--module", required=True)
    p.set_defaults(handler=_cmd_sheaf_sheafify)
    p = _sub(sh_group, "equivalence")
    _add_category(p)
    _add_topology(p)
    _add_sampling(p)
    p.set_defaults(handler=_cmd_sheaf_equivalence)

    ty_group = groups.add_parser("typen").add_subparsers(
        dest="command", required=True)
    p = _sub(ty_group, "validate")
    p.add_argument("--spec", required=True,
                   help="spec document path or inline JSON")
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(handler=_cmd_typen_validate)
    p = _sub(ty_group, "census")
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=_cmd_typen_census)
    p = _sub(ty_group, "pullback")
    p.add_argument("--object", type=int, required=True)
    p.add_argument("--rank", required=True,
                   help="natural number, or empty for the empty sieve")
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(handler=_cmd_typen_pullback)
    p = _sub(ty_group, "crosscheck")
    p.add_argument("--spec", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=_cmd_typen_crosscheck)

    return parser


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Parse and dispatch; return (exit code, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message to stderr
        return (2 if exc.code else 0), ""
    try:
        code, doc, table_text = args.handler(args)
    except _INPUT_ERRORS as err:
        return 2, f"error: {err}\n"
    except FinsiteError as err:
        return 1, f"{type(err).__name__}: {err}\n"
    if args.format == "json":
        return code, _json_text(doc)
    return code, table_text


def main() -> int:
    code, text = run(sys.argv[1:])
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
