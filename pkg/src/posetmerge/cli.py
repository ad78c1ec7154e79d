"""``posetmerge`` command line.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import counting, tables
from .bijections import (
    coloring_from_json,
    coloring_to_json,
    coloring_to_merging,
    merging_to_coloring,
    merging_to_pp,
    pp_from_json,
    pp_to_json,
    pp_to_merging,
)
from .errors import CapacityError, DomainError, LabelError, PosetMergeError
from .fca import (
    all_concepts,
    context_from_json,
    context_to_json,
    contraordinal_scale,
    dual_context,
    extent_label,
    ordinal_scale,
    read_cxt,
    write_cxt,
)
from .galois import (
    GaloisConnection,
    brute_force_galois,
    galois_boolean_chain_rows,
    galois_chain_rows,
    galois_to_json,
    render_table,
)
from .merging import enumerate_mergings, merging_from_json, merging_to_dot, merging_to_json
from .order import Poset, QuasiOrder, make_antichain, make_boolean_lattice, make_chain, poset_from_json

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    try:
        return json.loads(_read_source(path))
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def parse_poset_spec(spec: str, prefix: str, allow_boolean: bool = False) -> QuasiOrder:
    """``chain:n``, ``antichain:m``, ``boolean:m`` (when allowed) or ``@path`` to poset JSON."""
    if spec.startswith("@"):
        return poset_from_json(_load_json(spec[1:]))
    kind, sep, num = spec.partition(":")
    builders: dict[str, Callable[[int, str], Poset]] = {"chain": make_chain, "antichain": make_antichain}
    if allow_boolean:
        builders["boolean"] = make_boolean_lattice
    if not sep or kind not in builders or not num.isdigit():
        raise UsageError(f"bad poset spec {spec!r}; expected {' | '.join(k + ':<n>' for k in builders)} or @<file>")
    return builders[kind](int(num), prefix)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> None:
    _emit(json.dumps(obj, indent=None, separators=(",", ":")))


# count

COUNTERS = {
    "chains": ("m", "n"),
    "antichains": ("m", "n"),
    "antichain-chain": ("m", "n"),
    "pp": ("m", "n", "l"),
    "galois-chains": ("m", "n"),
    "galois-boolean": ("m", "n"),
}


def cmd_count(args) -> int:
    needed = COUNTERS[args.family]
    vals = {}
    for name in needed:
        v = getattr(args, name)
        if v is None:
            raise UsageError(f"count {args.family} needs --{name}")
        vals[name] = v
    fn = {
        "chains": counting.count_chain_mergings,
        "antichains": counting.count_antichain_mergings,
        "antichain-chain": counting.count_antichain_chain,
        "pp": counting.macmahon,
        "galois-chains": counting.count_galois_chains,
        "galois-boolean": counting.count_galois_boolean_chain,
    }[args.family]
    _emit(str(fn(*(vals[k] for k in needed))))
    return EXIT_OK


# enumerate


def cmd_enumerate(args) -> int:
    p = parse_poset_spec(args.p, "a")
    q = parse_poset_spec(args.q, "b")
    mergings = enumerate_mergings(p, q, proper_only=args.proper)
    if args.format == "count":
        _emit(str(len(mergings)))
    elif args.format == "json":
        _dump([merging_to_json(m) for m in mergings])
    elif args.format == "dot":
        if not all(m.proper for m in mergings) or not (isinstance(p, Poset) and isinstance(q, Poset)):
            raise DomainError("dot output needs --proper and posets on both sides")
        sys.stdout.write("".join(merging_to_dot(m, f"merging{k}") for k, m in enumerate(mergings)))
    else:
        for k, m in enumerate(mergings):
            r = " ".join(f"{x}<{y}" for x, y in m.r.pairs()) or "-"
            s = " ".join(f"{y}<{x}" for y, x in m.s.pairs()) or "-"
            _emit(f"{k}\tR: {r}\tS: {s}\t{'proper' if m.proper else 'improper'}")
    return EXIT_OK


# map


def cmd_map(args) -> int:
    data = _load_json(args.input)
    if args.direction == "pp-to-merging":
        _dump(merging_to_json(pp_to_merging(pp_from_json(data))))
    elif args.direction == "merging-to-pp":
        _dump(pp_to_json(merging_to_pp(merging_from_json(data))))
    elif args.direction == "coloring-to-merging":
        _dump(merging_to_json(coloring_to_merging(coloring_from_json(data))))
    else:
        _dump(coloring_to_json(merging_to_coloring(merging_from_json(data))))
    return EXIT_OK


# verify


def cmd_verify(args) -> int:
    reports = [tables.verify(w) for w in (args.which or list(tables.VERIFIERS))]
    for rep in reports:
        if args.verbose:
            for line in rep.lines:
                _emit(line)
        _emit(rep.summary())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DOMAIN


# galois


def _galois_rows(left: str, right: str) -> list[tuple[str, GaloisConnection]]:
    lk, _, ln = left.partition(":")
    rk, _, rn = right.partition(":")
    if lk == "chain" and rk == "chain" and ln.isdigit() and rn.isdigit():
        rows = galois_chain_rows(int(ln), int(rn))
        return [("".join(map(str, pp.flat)) or "-", g) for pp, _, g in rows]
    if lk == "boolean" and rk == "chain" and ln.isdigit() and rn.isdigit():
        if int(rn) < 1:
            raise DomainError("the chain side needs at least one element")
        rows = galois_boolean_chain_rows(int(ln), int(rn) - 1)
        return [("".join(map(str, c.v1 + c.v2)) or "-", g) for c, _, g in rows]
    p = parse_poset_spec(left, "a", allow_boolean=True)
    q = parse_poset_spec(right, "b", allow_boolean=True)
    if not (isinstance(p, Poset) and isinstance(q, Poset)):
        raise DomainError("Galois connections need posets on both sides")
    return [(str(k), GaloisConnection(p, q, f, g)) for k, (f, g) in enumerate(brute_force_galois(p, q))]


def cmd_galois(args) -> int:
    rows = _galois_rows(args.left, args.right)
    if args.format == "count":
        _emit(str(len(rows)))
    elif args.format == "json":
        _dump([galois_to_json(g) for _, g in rows])
    else:
        sys.stdout.write(render_table(rows))
    return EXIT_OK


# scale / concepts


def cmd_scale(args) -> int:
    p = parse_poset_spec(args.p, args.prefix, allow_boolean=True)
    ctx = {"ordinal": ordinal_scale, "contraordinal": contraordinal_scale}[args.kind](p)
    if args.dual:
        ctx = dual_context(ctx)
    if args.format == "json":
        _dump(context_to_json(ctx))
    else:
        sys.stdout.write(write_cxt(ctx))
    return EXIT_OK


def cmd_concepts(args) -> int:
    text = _read_source(args.context)
    if text.lstrip().startswith("{"):
        try:
            ctx = context_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON ({exc.msg})") from None
    else:
        ctx = read_cxt(text)
    lattice = all_concepts(ctx)
    if args.format == "count":
        _emit(str(len(lattice)))
    elif args.format == "json":
        _dump([{"extent": sorted(c.extent, key=ctx.objects.index), "intent": sorted(c.intent, key=ctx.attributes.index)} for c in lattice.concepts])
    else:
        for i, c in enumerate(lattice.concepts):
            ext = extent_label(lattice, i)
            intent = "{" + ",".join(sorted(c.intent, key=ctx.attributes.index)) + "}"
            _emit(f"{i}\t{ext}\t{intent}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="posetmerge", description="Count, enumerate and cross-check mergings of chains and antichains.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="closed-form counts")
    c.add_argument("family", choices=sorted(COUNTERS))
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--l", type=int)
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list mergings of two posets")
    e.add_argument("--p", required=True, help="chain:n | antichain:m | @file.json")
    e.add_argument("--q", required=True, help="chain:n | antichain:m | @file.json")
    e.add_argument("--proper", action="store_true", help="only proper mergings")
    e.add_argument("--format", choices=["table", "json", "dot", "count"], default="table")
    e.set_defaults(func=cmd_enumerate)

    mp = sub.add_parser("map", help="apply one of the bijections")
    mp.add_argument("direction", choices=["pp-to-merging", "merging-to-pp", "coloring-to-merging", "merging-to-coloring"])
    mp.add_argument("--input", required=True, help="JSON file, or - for stdin")
    mp.set_defaults(func=cmd_map)

    v = sub.add_parser("verify", help="regenerate and check the worked tables")
    vsub = v.add_subparsers(dest="what", required=True)
    va = vsub.add_parser("appendix", help="tables A to E")
    va.add_argument("--which", action="append", choices=list(tables.VERIFIERS), help="repeatable; default all")
    va.add_argument("--verbose", action="store_true", help="print every regenerated row")
    va.set_defaults(func=cmd_verify)

    g = sub.add_parser("galois", help="Galois connections")
    gsub = g.add_subparsers(dest="what", required=True)
    ge = gsub.add_parser("enumerate")
    ge.add_argument("--left", required=True, help="chain:m | boolean:m | antichain:m | @file.json")
    ge.add_argument("--right", required=True, help="chain:n | boolean:n | antichain:n | @file.json")
    ge.add_argument("--format", choices=["table", "json", "count"], default="table")
    ge.set_defaults(func=cmd_galois)

    s = sub.add_parser("scale", help="ordinal or contraordinal scale of a poset")
    s.add_argument("--p", required=True)
    s.add_argument("--kind", choices=["ordinal", "contraordinal"], default="contraordinal")
    s.add_argument("--dual", action="store_true")
    s.add_argument("--prefix", default="a")
    s.add_argument("--format", choices=["cxt", "json"], default="cxt")
    s.set_defaults(func=cmd_scale)

    k = sub.add_parser("concepts", help="concepts of a context (.cxt or JSON)")
    k.add_argument("--context", required=True, help="file, or - for stdin")
    k.add_argument("--format", choices=["table", "json", "count"], default="table")
    k.set_defaults(func=cmd_concepts)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"posetmerge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"posetmerge: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (PosetMergeError, LabelError) as exc:
        print(f"posetmerge: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
