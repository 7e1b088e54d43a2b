"""Parsing and printing of the textual term formats.

Grammar (whitespace-insensitive, names match ``[A-Za-z_][A-Za-z0-9_]*``)::

    diagram  := 0 | 1 | ( name diagram diagram )
    sdd      := T | F | name | (! name) | (or (sdd sdd)+)
    zsdd     := F | E | name | (+- name) | (or (zsdd zsdd)+)
    vtree    := name | ( vtree vtree )
    combiset := { ({ name* })* }
    names    := name (, name)*          -- universes and total orders
    map      := name -> name  (one per line, or separated by ;)

Printing is canonical: combinations are listed by size and then
lexicographically, decomposition pairs in the fixed term order.
"""
from __future__ import annotations

import re
from typing import Iterable

from natdd.diagram import Diagram, NodeStore, TotalOrder, default_store
from natdd.sentential import (
    BOT,
    EPS,
    TOP,
    Bot,
    Decomp,
    Eps,
    NegLit,
    PmVar,
    PosLit,
    PosVar,
    Top,
    ZDecomp,
)
from natdd.setfun import (
    BooleanFunction,
    CombinationSet,
    FiniteMap,
    Universe,
    combo_sort_key,
)
from natdd.vtree import Leaf, VNode, Vtree

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"\s*(?:(\+-|->|[(){}!,;01])|([A-Za-z_][A-Za-z0-9_]*))")
SDD_RESERVED = frozenset({"T", "F"})
ZSDD_RESERVED = frozenset({"F", "E"})


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int]] = []
        pos = 0
        while True:
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip():
                    at = pos + len(rest) - len(rest.lstrip())
                    raise ParseError(f"unexpected character {text[at]!r}", at)
                break
            tok = m.group(1) or m.group(2)
            self.toks.append((tok, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self, ahead: int = 0) -> str | None:
        j = self.i + ahead
        return self.toks[j][0] if j < len(self.toks) else None

    def pos(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def name(self, reserved: frozenset[str] = frozenset()) -> str:
        at = self.pos()
        tok = self.take()
        if not NAME_RE.match(tok) or tok in reserved:
            raise ParseError(f"expected a variable name, found {tok!r}", at)
        return tok

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r}", self.pos())


def _whole(parse, text: str, *args):
    toks = Tokens(text)
    value = parse(toks, *args)
    toks.done()
    return value


# -- diagrams ---------------------------------------------------------------

def _diagram(toks: Tokens, store: NodeStore) -> Diagram:
    tok = toks.peek()
    if tok in ("0", "1"):
        toks.take()
        return store.terminal(int(tok))
    toks.take("(")
    label = toks.name()
    lo = _diagram(toks, store)
    hi = _diagram(toks, store)
    toks.take(")")
    return store.decision(label, lo, hi)


def parse_diagram(text: str, store: NodeStore | None = None) -> Diagram:
    return _whole(_diagram, text, store or default_store)


def format_diagram(d: Diagram) -> str:
    memo: dict[int, str] = {0: "0", 1: "1"}

    def go(ref: int) -> str:
        if ref not in memo:
            a, lo, hi = d.store.node(ref)
            memo[ref] = f"({a} {go(lo)} {go(hi)})"
        return memo[ref]

    return go(d.ref)


# -- SDD / ZSDD ---------------------------------------------------------------

def _sdd(toks: Tokens):
    tok = toks.peek()
    if tok == "T":
        toks.take()
        return TOP
    if tok == "F":
        toks.take()
        return BOT
    if tok != "(":
        return PosLit(toks.name(SDD_RESERVED))
    toks.take("(")
    if toks.peek() == "!":
        toks.take()
        lit = NegLit(toks.name(SDD_RESERVED))
        toks.take(")")
        return lit
    return Decomp(_pairs(toks, _sdd))


def _zsdd(toks: Tokens):
    tok = toks.peek()
    if tok == "E":
        toks.take()
        return EPS
    if tok == "F":
        toks.take()
        return BOT
    if tok != "(":
        return PosVar(toks.name(ZSDD_RESERVED))
    toks.take("(")
    if toks.peek() == "+-":
        toks.take()
        var = PmVar(toks.name(ZSDD_RESERVED))
        toks.take(")")
        return var
    return ZDecomp(_pairs(toks, _zsdd))


def _pairs(toks: Tokens, item) -> list:
    """Parse ``or (p s)+ )`` after the opening parenthesis."""
    at = toks.pos()
    if toks.take() != "or":
        raise ParseError("expected 'or', '!' or '+-' after '('", at)
    pairs = []
    while toks.peek() == "(":
        toks.take("(")
        p = item(toks)
        s = item(toks)
        toks.take(")")
        pairs.append((p, s))
    if not pairs:
        raise ParseError("a decomposition needs at least one (prime sub) pair", toks.pos())
    toks.take(")")
    return pairs


def parse_sdd(text: str):
    return _whole(_sdd, text)


def parse_zsdd(text: str):
    return _whole(_zsdd, text)


def _format_term(t) -> str:
    if isinstance(t, Top):
        return "T"
    if isinstance(t, Bot):
        return "F"
    if isinstance(t, Eps):
        return "E"
    if isinstance(t, (PosLit, PosVar)):
        return t.name
    if isinstance(t, NegLit):
        return f"(! {t.name})"
    if isinstance(t, PmVar):
        return f"(+- {t.name})"
    if isinstance(t, (Decomp, ZDecomp)):
        body = " ".join(f"({_format_term(p)} {_format_term(s)})" for p, s in t.pairs)
        return f"(or {body})"
    raise TypeError(f"not an SDD or ZSDD term: {t!r}")


def format_sdd(s) -> str:
    return _format_term(s)


def format_zsdd(z) -> str:
    return _format_term(z)


# -- vtrees -------------------------------------------------------------------

def _vtree(toks: Tokens) -> Vtree:
    if toks.peek() != "(":
        return Leaf(toks.name())
    toks.take("(")
    left = _vtree(toks)
    right = _vtree(toks)
    toks.take(")")
    try:
        return VNode(left, right)
    except ValueError as exc:
        raise ParseError(str(exc), toks.pos()) from None


def parse_vtree(text: str) -> Vtree:
    return _whole(_vtree, text)


def format_vtree(v: Vtree) -> str:
    if isinstance(v, Leaf):
        return v.name
    return f"({format_vtree(v.left)} {format_vtree(v.right)})"


# -- combination sets -----------------------------------------------------------

def _combiset(toks: Tokens) -> list[frozenset[str]]:
    toks.take("{")
    combos = []
    while toks.peek() == "{":
        toks.take("{")
        members = []
        while toks.peek() != "}":
            members.append(toks.name())
        toks.take("}")
        combos.append(frozenset(members))
    toks.take("}")
    return combos


def parse_combination_set(text: str, universe: Universe | None = None) -> CombinationSet:
    """Parse ``{{a}{a b}}``; without a universe, use the names that occur."""
    combos = _whole(_combiset, text)
    if universe is None:
        universe = Universe(frozenset().union(*combos))
    return CombinationSet(universe, combos)


def parse_boolean_function(text: str, universe: Universe | None = None) -> BooleanFunction:
    """Same syntax as a combination set, optionally tagged with a leading ``bf``."""
    body = text.strip()
    if body.startswith("bf"):
        body = body[2:]
    cs = parse_combination_set(body, universe)
    return BooleanFunction(cs.universe, cs.combos)


def format_family(family: Iterable[Iterable[str]]) -> str:
    items = sorted((frozenset(c) for c in family), key=combo_sort_key)
    return "{" + "".join("{" + " ".join(sorted(c)) + "}" for c in items) + "}"


def format_combination_set(p: CombinationSet) -> str:
    return format_family(p.combos)


def format_boolean_function(g: BooleanFunction) -> str:
    return "bf " + format_family(g.accepted)


# -- names, orders, maps ----------------------------------------------------------

def parse_names(text: str) -> tuple[str, ...]:
    if not text.strip():
        return ()
    names = []
    toks = Tokens(text)
    names.append(toks.name())
    while toks.peek() == ",":
        toks.take(",")
        names.append(toks.name())
    toks.done()
    return tuple(names)


def parse_universe(text: str) -> Universe:
    names = parse_names(text)
    if len(set(names)) != len(names):
        raise ParseError("universe lists a name twice", 0)
    return Universe(names)


def parse_order(text: str) -> TotalOrder:
    names = parse_names(text)
    if len(set(names)) != len(names):
        raise ParseError("order lists a name twice", 0)
    return TotalOrder(names)


def format_names(names: Iterable[str]) -> str:
    return ",".join(names)


def parse_map(text: str, domain: Universe | None = None, codomain: Universe | None = None) -> FiniteMap:
    """Parse ``x -> y`` entries separated by newlines or semicolons."""
    toks = Tokens(text)
    table: dict[str, str] = {}
    while toks.peek() is not None:
        if toks.peek() == ";":
            toks.take()
            continue
        at = toks.pos()
        x = toks.name()
        toks.take("->")
        y = toks.name()
        if x in table and table[x] != y:
            raise ParseError(f"{x!r} is mapped twice", at)
        table[x] = y
    dom = domain if domain is not None else Universe(table)
    cod = codomain if codomain is not None else Universe(set(table.values()))
    return FiniteMap(dom, cod, table)


def format_map(f: FiniteMap) -> str:
    return "\n".join(f"{x} -> {y}" for x, y in f.table)
