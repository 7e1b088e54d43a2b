"""Command-line interface.

Exit codes: 0 success / law holds / predicate true, 1 law violated /
predicate false, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from natdd import lawcheck, syntax
from natdd.diagram import interpret_bdd, interpret_zdd, labels_of, respects_order
from natdd.sentential import (
    bdd_to_sdd,
    interpret_sdd,
    interpret_zsdd,
    is_partition_sdd,
    is_strongly_deterministic_sdd,
    is_strongly_deterministic_zsdd,
    vars_of,
    zdd_to_zsdd,
)
from natdd.setfun import Universe, tau, tau_inv
from natdd.vtree import respects_vtree_sdd, respects_vtree_zsdd, vtree_of_order

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _text(arg: str) -> str:
    """Inline text, or the contents of a file when written as ``@path``."""
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    return arg


def _universe(args, names_in_term: frozenset[str]) -> Universe:
    if args.universe is not None:
        return syntax.parse_universe(_text(args.universe))
    u = Universe(names_in_term)
    print(f"warning: no --universe given, using the term's names: {','.join(u.names) or '(empty)'}",
          file=sys.stderr)
    return u


def _parse_kind(kind: str, text: str):
    if kind in ("bdd", "zdd"):
        return syntax.parse_diagram(text)
    return syntax.parse_sdd(text) if kind == "sdd" else syntax.parse_zsdd(text)


def _term_names(kind: str, term) -> frozenset[str]:
    return labels_of(term) if kind in ("bdd", "zdd") else vars_of(term)


_SDD_MARKS = frozenset({"T", "!"})
_ZSDD_MARKS = frozenset({"E", "+-"})


def _sentential(text: str, kind: str):
    """Parse an SDD or ZSDD.

    ``auto`` looks for language-specific tokens (``T``/``!`` versus
    ``E``/``+-``) and falls back to SDD when the text has neither.
    """
    if kind == "auto":
        try:
            toks = {tok for tok, _ in syntax.Tokens(text).toks}
        except syntax.ParseError:
            toks = set()
        sdd, zsdd = bool(toks & _SDD_MARKS), bool(toks & _ZSDD_MARKS)
        if sdd and zsdd:
            raise UsageError("term mixes SDD and ZSDD syntax; pass --kind")
        kind = "zsdd" if zsdd else "sdd"
    if kind == "sdd":
        return "sdd", syntax.parse_sdd(text)
    return "zsdd", syntax.parse_zsdd(text)


def _emit(args, text: str, record: dict) -> None:
    if args.format == "records":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def cmd_interpret(args) -> int:
    term = _parse_kind(args.kind, _text(args.term))
    u = _universe(args, _term_names(args.kind, term))
    fn = {"bdd": interpret_bdd, "zdd": interpret_zdd, "sdd": interpret_sdd, "zsdd": interpret_zsdd}[args.kind]
    result = fn(term, u)
    _emit(args, syntax.format_combination_set(result),
          {"kind": args.kind, "universe": list(u.names), "combinations": [list(c) for c in result.sorted()]})
    return EXIT_OK


def _budget(args) -> lawcheck.EnumBudget:
    base = lawcheck.default_budget(args.kind)
    return lawcheck.EnumBudget(
        max_universe_size=base.max_universe_size if args.max_size is None else args.max_size,
        max_depth=base.max_depth if args.max_depth is None else args.max_depth,
        max_terms=args.max_terms,
        random_seed=args.seed,
        max_width=base.max_width if args.max_width is None else args.max_width,
        samples=args.samples,
    )


def cmd_check(args) -> int:
    if args.prop24:
        if args.kind is not None:
            raise UsageError("--prop24 takes no kind")
        steps = lawcheck.prop24_trace()
        ok = all(s.holds for s in steps)
        lines = [f"{'ok' if s.holds else 'FAIL'}: {s.claim}" for s in steps]
        lines.append("prop24: verified" if ok else "prop24: NOT verified")
        _emit(args, "\n".join(lines),
              {"prop24": ok, "steps": [{"claim": s.claim, "holds": s.holds} for s in steps]})
        return EXIT_OK if ok else EXIT_FALSE
    if args.kind is None:
        raise UsageError("check needs a kind (bdd, zdd, sdd, zsdd) or --prop24")
    functor = args.functor or lawcheck.NATURAL_FUNCTOR[args.kind]
    budget = _budget(args)
    try:
        if args.closure:
            if args.restricted is None:
                raise UsageError("--closure needs --restricted")
            report = lawcheck.sweep_closure(args.kind, args.restricted, budget, strategy=args.strategy)
        else:
            report = lawcheck.sweep(args.kind, functor, budget, args.restricted, args.strategy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, lawcheck.report_text(report), lawcheck.report_record(report))
    return EXIT_OK if report.holds else EXIT_FALSE


def cmd_predicate(args) -> int:
    text = _text(args.term)
    name = args.name
    if name == "respects-order":
        if args.order is None:
            raise UsageError("respects-order needs --order")
        d = syntax.parse_diagram(text)
        result = respects_order(d, syntax.parse_order(_text(args.order)))
    elif name == "respects-vtree":
        if args.vtree is None:
            raise UsageError("respects-vtree needs --vtree")
        kind, term = _sentential(text, args.kind)
        v = syntax.parse_vtree(_text(args.vtree))
        result = respects_vtree_sdd(term, v) if kind == "sdd" else respects_vtree_zsdd(term, v)
    elif name == "strongly-deterministic":
        kind, term = _sentential(text, args.kind)
        u = _universe(args, vars_of(term))
        check = is_strongly_deterministic_sdd if kind == "sdd" else is_strongly_deterministic_zsdd
        result = check(term, u)
    else:
        if args.kind == "zsdd":
            raise UsageError("partition is defined for SDDs only")
        term = syntax.parse_sdd(text)
        result = is_partition_sdd(term, _universe(args, vars_of(term)))
    _emit(args, "true" if result else "false", {"predicate": name, "result": result})
    return EXIT_OK if result else EXIT_FALSE


def cmd_convert(args) -> int:
    text = _text(args.input)
    d = args.direction
    if d == "cs-to-bf":
        u = syntax.parse_universe(_text(args.universe)) if args.universe is not None else None
        out = syntax.format_boolean_function(tau(syntax.parse_combination_set(text, u)))
    elif d == "bf-to-cs":
        u = syntax.parse_universe(_text(args.universe)) if args.universe is not None else None
        out = syntax.format_combination_set(tau_inv(syntax.parse_boolean_function(text, u)))
    elif d == "order-to-vtree":
        out = syntax.format_vtree(vtree_of_order(syntax.parse_order(text)))
    elif d == "bdd-to-sdd":
        out = syntax.format_sdd(bdd_to_sdd(syntax.parse_diagram(text)))
    else:
        out = syntax.format_zsdd(zdd_to_zsdd(syntax.parse_diagram(text)))
    _emit(args, out, {"direction": d, "output": out})
    return EXIT_OK


def _map_arg(args, domain: Universe):
    target = syntax.parse_universe(_text(args.target)) if args.target is not None else None
    return syntax.parse_map(_text(args.map), domain, target)


def cmd_relabel(args) -> int:
    term = _parse_kind(args.kind, _text(args.term))
    f = syntax.parse_map(_text(args.map))
    moved = lawcheck.relabel(args.kind, f, term)
    out = lawcheck.format_term(args.kind, moved)
    _emit(args, out, {"kind": args.kind, "output": out})
    return EXIT_OK


def cmd_square(args) -> int:
    term = _parse_kind(args.kind, _text(args.term))
    u = _universe(args, _term_names(args.kind, term))
    f = _map_arg(args, u)
    report = lawcheck.check_square(args.kind, args.functor, f, term)
    if report.holds:
        moved = lawcheck.interpret(args.kind, lawcheck.relabel(args.kind, f, term), f.codomain)
        value = syntax.format_combination_set(moved)
        if args.functor == "contravariant":
            value = syntax.format_boolean_function(tau(moved))
        _emit(args, f"holds: {value}", {"holds": True, "value": value})
        return EXIT_OK
    _emit(args, lawcheck.report_text(report), lawcheck.report_record(report))
    return EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="natdd", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "records"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpret", parents=[fmt], help="read a term as a combination set")
    p.add_argument("kind", choices=lawcheck.KINDS)
    p.add_argument("term", help="term text or @path")
    p.add_argument("--universe")
    p.set_defaults(run=cmd_interpret)

    p = sub.add_parser("check", parents=[fmt], help="sweep a naturality square")
    p.add_argument("kind", nargs="?", choices=lawcheck.KINDS)
    p.add_argument("--functor", choices=lawcheck.FUNCTORS)
    p.add_argument("--restricted", choices=lawcheck.RESTRICTIONS)
    p.add_argument("--closure", action="store_true",
                   help="check that relabelling preserves the restriction instead")
    p.add_argument("--prop24", action="store_true",
                   help="verify that the two double power set functors are not isomorphic")
    p.add_argument("--max-size", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--max-width", type=int)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=("classes", "literal"), default="classes")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("predicate", parents=[fmt], help="test a structural predicate")
    p.add_argument("name", choices=("respects-order", "respects-vtree", "strongly-deterministic", "partition"))
    p.add_argument("term")
    p.add_argument("--order")
    p.add_argument("--vtree")
    p.add_argument("--universe")
    p.add_argument("--kind", choices=("auto", "sdd", "zsdd"), default="auto")
    p.set_defaults(run=cmd_predicate)

    p = sub.add_parser("convert", parents=[fmt], help="convert between representations")
    p.add_argument("direction", choices=("cs-to-bf", "bf-to-cs", "order-to-vtree", "bdd-to-sdd", "zdd-to-zsdd"))
    p.add_argument("input")
    p.add_argument("--universe")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("relabel", parents=[fmt], help="apply a map to a term's labels")
    p.add_argument("kind", choices=lawcheck.KINDS)
    p.add_argument("term")
    p.add_argument("--map", required=True, help="'x -> y' entries separated by newlines or ';', or @path")
    p.set_defaults(run=cmd_relabel)

    p = sub.add_parser("square", parents=[fmt], help="check one naturality square")
    p.add_argument("kind", choices=lawcheck.KINDS)
    p.add_argument("term")
    p.add_argument("--map", required=True)
    p.add_argument("--functor", choices=lawcheck.FUNCTORS, required=True)
    p.add_argument("--universe", help="source universe (the map's domain)")
    p.add_argument("--target", help="target universe (defaults to the map's image)")
    p.set_defaults(run=cmd_square)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, ValueError) as exc:
        # ParseError and UniverseError are ValueErrors.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
