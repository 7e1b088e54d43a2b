"""Exhaustive naturality checks over small universes.

A naturality square for a term language compares, for a map ``f: X -> Y``
and a term ``t`` over ``X``::

    interpret_Y(relabel(f, t))   vs   action(f, interpret_X(t))

where ``action`` is the direct-image action on combination sets
(``covariant``) or the preimage-of-preimage action on Boolean functions
(``contravariant``).

Sweeps quantify over every universe pair up to a size bound, every map
(or every monotone map / vtree embedding for restricted sweeps) and every
term up to a depth bound.  The literal term spaces explode quickly (about a
million diagrams of depth 3 over three variables, far more SDDs), so the
default ``"classes"`` strategy enumerates terms up to an equivalence that
cannot change the outcome: two terms are identified when they have the same
source reading, the same reading after relabelling, and the same filter
signature.  Each of these is determined by the corresponding data of the
immediate subterms, so building candidates only from one representative
per class reaches every class that the literal enumeration would reach.
Every class representative is an actual term, checked through the public
interpreters.  The ``"literal"`` strategy walks the raw enumeration and is
used to cross-check the class strategy on smaller budgets.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Callable, Iterable, Iterator

from natdd import diagram as dg
from natdd import sentential as sn
from natdd.diagram import Diagram, NodeStore, TotalOrder
from natdd.setfun import (
    BooleanFunction,
    CombinationSet,
    FiniteMap,
    Universe,
    all_combination_sets,
    bf_map,
    cs_map,
    full_powerset,
    image_family,
    powerset_family,
    preimage_family,
    tau,
)
from natdd.vtree import (
    VNode,
    Vtree,
    enumerate_embeddings,
    enumerate_vtrees,
    is_embedding,
    leaves,
    respects,
    subtrees,
)

KINDS = ("bdd", "zdd", "sdd", "zsdd")
FUNCTORS = ("covariant", "contravariant")
RESTRICTIONS = ("order", "vtree", "deterministic", "partition")
UNIVERSE_NAMES = "abcdefgh"

# The functor each interpretation is natural for.
NATURAL_FUNCTOR = {"bdd": "contravariant", "zdd": "covariant", "sdd": "contravariant", "zsdd": "covariant"}


@dataclass(frozen=True)
class EnumBudget:
    max_universe_size: int = 3
    max_depth: int = 3
    max_terms: int | None = None
    random_seed: int = 0
    max_width: int = 2
    samples: int = 0

    def __post_init__(self) -> None:
        for name in ("max_universe_size", "max_depth", "max_width", "samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_terms is not None and self.max_terms < 0:
            raise ValueError("max_terms must be non-negative")
        if self.max_universe_size > len(UNIVERSE_NAMES):
            raise ValueError(f"universes are capped at {len(UNIVERSE_NAMES)} elements")


def default_budget(kind: str) -> EnumBudget:
    if kind in ("bdd", "zdd"):
        return EnumBudget(max_universe_size=3, max_depth=3)
    return EnumBudget(max_universe_size=2, max_depth=3, max_width=2)


def universe_of_size(n: int) -> Universe:
    return Universe(UNIVERSE_NAMES[:n])


# -- dispatch -------------------------------------------------------------------

def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def interpret(kind: str, term, u: Universe) -> CombinationSet:
    _check_kind(kind)
    if kind == "bdd":
        return dg.interpret_bdd(term, u)
    if kind == "zdd":
        return dg.interpret_zdd(term, u)
    if kind == "sdd":
        return sn.interpret_sdd(term, u)
    return sn.interpret_zsdd(term, u)


def relabel(kind: str, f: FiniteMap, term):
    _check_kind(kind)
    if kind in ("bdd", "zdd"):
        return dg.relabel(f, term)
    if kind == "sdd":
        return sn.relabel_sdd(f, term)
    return sn.relabel_zsdd(f, term)


# -- reports ----------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    f: FiniteMap
    term: Any
    lhs: CombinationSet | BooleanFunction
    rhs: CombinationSet | BooleanFunction
    source: Any = None  # total order or vtree the term was drawn against
    target: Any = None


@dataclass(frozen=True)
class SquareReport:
    kind: str
    functor: str
    holds: bool
    witness: Witness | None = None
    checked: int = 0
    restrict: str | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("a report carries a witness exactly when the square fails")


def check_square(kind: str, functor: str, f: FiniteMap, term) -> SquareReport:
    """Compare both paths around one naturality square."""
    if functor not in FUNCTORS:
        raise ValueError(f"unknown functor {functor!r}; expected one of {FUNCTORS}")
    moved = interpret(kind, relabel(kind, f, term), f.codomain)
    source = interpret(kind, term, f.domain)
    if functor == "covariant":
        lhs, rhs = moved, cs_map(f, source)
    else:
        lhs, rhs = tau(moved), bf_map(f, tau(source))
    if lhs == rhs:
        return SquareReport(kind, functor, True, checked=1)
    return SquareReport(kind, functor, False, Witness(f, term, lhs, rhs), checked=1)


def verify_witness(report: SquareReport) -> bool:
    """Recompute both sides from the stored map and term."""
    w = report.witness
    if w is None:
        return False
    again = check_square(report.kind, report.functor, w.f, w.term)
    return (not again.holds) and again.witness.lhs == w.lhs and again.witness.rhs == w.rhs


# -- enumeration --------------------------------------------------------------------

def enumerate_maps(x: Universe, y: Universe) -> Iterator[FiniteMap]:
    """All ``|y| ** |x|`` maps, in lexicographic order of their image tuples."""
    for images in product(y.names, repeat=len(x)):
        yield FiniteMap(x, y, dict(zip(x.names, images)))


def enumerate_diagrams(u: Universe, depth: int, store: NodeStore | None = None) -> Iterator[Diagram]:
    """Every diagram over ``u`` with at most ``depth`` decision levels.

    Diagrams come out level by level without repeats.  They are built in a
    fresh node store unless one is given.
    """
    store = store or NodeStore()
    everything = [store.terminal(0), store.terminal(1)]
    yield from everything
    fresh = set(d.ref for d in everything)
    for _ in range(depth):
        new = []
        for a in u.names:
            for lo in everything:
                for hi in everything:
                    if lo.ref in fresh or hi.ref in fresh:
                        new.append(store.decision(a, lo, hi))
        if not new:
            break
        yield from new
        everything += new
        fresh = set(d.ref for d in new)


def _sdd_atoms(u: Universe) -> list:
    out = [sn.BOT, sn.TOP]
    for x in u.names:
        out += [sn.NegLit(x), sn.PosLit(x)]
    return out


def _zsdd_atoms(u: Universe) -> list:
    out = [sn.BOT, sn.EPS]
    for x in u.names:
        out += [sn.PosVar(x), sn.PmVar(x)]
    return out


def _decomps(make, reps: list, fresh: set, width: int, pair_ok=None) -> Iterator:
    pairs = [(p, s) for p in reps for s in reps if pair_ok is None or pair_ok(p, s)]
    is_new = [p in fresh or s in fresh for p, s in pairs]
    for w in range(1, width + 1):
        for idx in combinations(range(len(pairs)), w):
            if any(is_new[i] for i in idx):
                yield make([pairs[i] for i in idx])


def _enumerate_sentential(atoms: list, make, depth: int, width: int) -> Iterator:
    everything = list(atoms)
    yield from everything
    fresh = set(everything)
    for _ in range(depth):
        new = list(_decomps(make, everything, fresh, width))
        if not new:
            break
        yield from new
        everything += new
        fresh = set(new)


def enumerate_sdds(u: Universe, depth: int, width: int = 2) -> Iterator:
    """Every SDD over ``u`` up to ``depth`` nested decompositions of at most ``width`` pairs."""
    return _enumerate_sentential(_sdd_atoms(u), sn.Decomp, depth, width)


def enumerate_zsdds(u: Universe, depth: int, width: int = 2) -> Iterator:
    return _enumerate_sentential(_zsdd_atoms(u), sn.ZDecomp, depth, width)


def enumerate_terms(kind: str, u: Universe, depth: int, width: int = 2) -> Iterator:
    _check_kind(kind)
    if kind in ("bdd", "zdd"):
        return enumerate_diagrams(u, depth)
    if kind == "sdd":
        return enumerate_sdds(u, depth, width)
    return enumerate_zsdds(u, depth, width)


def random_diagram(names: Iterable[str], depth: int, rng: random.Random, store: NodeStore | None = None) -> Diagram:
    names = sorted(names)
    store = store or dg.default_store

    def go(k: int) -> Diagram:
        if k == 0 or not names or rng.random() < 0.15:
            return store.terminal(rng.randint(0, 1))
        return store.decision(rng.choice(names), go(k - 1), go(k - 1))

    return go(depth)


def _random_sentential(atoms: list, make, depth: int, rng: random.Random, width: int):
    def go(k: int):
        if k == 0 or rng.random() < 0.2:
            return rng.choice(atoms)
        n = rng.randint(1, max(1, width))
        return make([(go(k - 1), go(k - 1)) for _ in range(n)])

    return go(depth)


def random_sdd(names: Iterable[str], depth: int, rng: random.Random, width: int = 2):
    return _random_sentential(_sdd_atoms(Universe(names)), sn.Decomp, depth, rng, width)


def random_zsdd(names: Iterable[str], depth: int, rng: random.Random, width: int = 2):
    return _random_sentential(_zsdd_atoms(Universe(names)), sn.ZDecomp, depth, rng, width)


def random_term(kind: str, names: Iterable[str], depth: int, rng: random.Random, width: int = 2):
    if kind in ("bdd", "zdd"):
        return random_diagram(names, depth, rng)
    if kind == "sdd":
        return random_sdd(names, depth, rng, width)
    return random_zsdd(names, depth, rng, width)


# -- per-map probes ----------------------------------------------------------------

class _Probe:
    """Memoized readings of source terms and their relabellings under one map."""

    def __init__(self, kind: str, f: FiniteMap, store: NodeStore | None):
        self.kind = kind
        self.f = f
        self.store = store
        self.src_memo: dict = {}
        self.dst_memo: dict = {}
        self.rel_memo: dict = {}

    def source(self, t) -> frozenset:
        k = self.kind
        if k == "bdd":
            return dg.bdd_family(t, self.f.domain, self.src_memo)
        if k == "zdd":
            return dg.zdd_family(t, self.src_memo)
        if k == "sdd":
            return sn.sdd_family(t, self.f.domain, self.src_memo)
        return sn.zsdd_family(t, self.src_memo)

    def moved(self, t):
        if self.kind in ("bdd", "zdd"):
            return dg.relabel_unchecked(self.f, t, self.rel_memo, self.store)
        make = sn.Decomp if self.kind == "sdd" else sn.ZDecomp
        return sn._relabel(self.f, t, self.rel_memo, make)

    def target(self, t) -> frozenset:
        k = self.kind
        if k == "bdd":
            return dg.bdd_family(t, self.f.codomain, self.dst_memo)
        if k == "zdd":
            return dg.zdd_family(t, self.dst_memo)
        if k == "sdd":
            return sn.sdd_family(t, self.f.codomain, self.dst_memo)
        return sn.zsdd_family(t, self.dst_memo)


class _Restriction:
    """Source filter, its class signature, and (for closure checks) the
    predicate the relabelled term must satisfy."""

    def __init__(self, kind: str, name: str | None, source=None, target=None):
        self.kind, self.name, self.source, self.target = kind, name, source, target
        self.src_memo: dict = {}
        self.dst_memo: dict = {}
        self._labels: dict = {}
        if name == "vtree":
            self._src_nodes = list(subtrees(source))
            self._dst_nodes = list(subtrees(target))
            self._src_inner = [n for n in self._src_nodes if isinstance(n, VNode)]

    # labels of a diagram from those of its children (children are always seen first)
    def labels(self, d: Diagram) -> frozenset:
        r = self._labels.get((d.store, d.ref))
        if r is None:
            r = dg.labels_of(d)
            self._labels[(d.store, d.ref)] = r
        return r

    def keep(self, t, probe: _Probe) -> bool:
        """Hereditary source filter, checked at the root only: the class
        strategy only builds terms whose subterms already passed."""
        n = self.name
        if n is None:
            return True
        if n == "order":
            if t.is_terminal:
                return True
            rank = self.source.rank
            return all(c.is_terminal or rank(t.label) < rank(c.label) for c in (t.lo, t.hi))
        if n == "vtree":
            return respects(t, self.source, self.src_memo)
        if not isinstance(t, (sn.Decomp, sn.ZDecomp)):
            return True
        primes = [probe.source(p) for p, _ in t.pairs]
        if not sn._primes_disjoint(primes):
            return False
        if n == "partition":
            return frozenset().union(*primes) == powerset_family(probe.f.domain.elements)
        return True

    def keep_full(self, t, u: Universe) -> bool:
        """The same filter, evaluated from scratch on a whole term."""
        n = self.name
        if n is None:
            return True
        if n == "order":
            return dg.respects_order(t, self.source)
        if n == "vtree":
            return respects(t, self.source)
        if n == "deterministic":
            if self.kind == "sdd":
                return sn.is_strongly_deterministic_sdd(t, u)
            return sn.is_strongly_deterministic_zsdd(t, u)
        return sn.is_partition_sdd(t, u)

    def pair_ok(self, p, s) -> bool:
        # A pair can sit in a vtree-respecting decomposition only if it
        # fits some internal node on its own.
        return any(
            respects(p, n.left, self.src_memo) and respects(s, n.right, self.src_memo)
            for n in self._src_inner
        )

    def signature(self, t):
        if self.name == "order":
            return None if t.is_terminal else self.labels(t)
        if self.name == "vtree":
            return frozenset(
                i for i, n in enumerate(self._src_nodes) if respects(t, n, self.src_memo)
            )
        return None

    def target_holds(self, moved, probe: _Probe) -> bool:
        n = self.name
        if n == "order":
            return dg.respects_order(moved, self.target)
        if n == "vtree":
            return respects(moved, self.target, self.dst_memo)
        y = probe.f.codomain
        if n == "deterministic":
            if self.kind == "sdd":
                return sn.is_strongly_deterministic_sdd(moved, y)
            return sn.is_strongly_deterministic_zsdd(moved, y)
        return sn.is_partition_sdd(moved, y)

    def target_signature(self, moved, probe: _Probe):
        if self.name == "order":
            return self.target_holds(moved, probe)
        if self.name == "vtree":
            return frozenset(
                i for i, n in enumerate(self._dst_nodes) if respects(moved, n, self.dst_memo)
            )
        return self.target_holds(moved, probe)


def _atoms(kind: str, u: Universe, store: NodeStore | None) -> list:
    if kind in ("bdd", "zdd"):
        return [store.terminal(0), store.terminal(1)]
    return _sdd_atoms(u) if kind == "sdd" else _zsdd_atoms(u)


def _extend(kind: str, u: Universe, reps: list, fresh: list, width: int, pair_ok, store) -> Iterator:
    if kind in ("bdd", "zdd"):
        fresh_refs = set(d.ref for d in fresh)
        for a in u.names:
            for lo in reps:
                for hi in reps:
                    if lo.ref in fresh_refs or hi.ref in fresh_refs:
                        yield store.decision(a, lo, hi)
    else:
        make = sn.Decomp if kind == "sdd" else sn.ZDecomp
        yield from _decomps(make, reps, set(fresh), width, pair_ok)


def _classes(kind: str, u: Universe, depth: int, width: int, key: Callable, keep: Callable,
             pair_ok, store) -> Iterator:
    """One representative term for each class reachable within ``depth``."""
    seen: set = set()
    reps: list = []
    fresh: list = []
    for t in _atoms(kind, u, store):
        if keep(t):
            k = key(t)
            if k not in seen:
                seen.add(k)
                fresh.append(t)
                yield t
    reps += fresh
    for _ in range(depth):
        if not fresh:
            break
        new = []
        for t in _extend(kind, u, reps, fresh, width, pair_ok, store):
            if not keep(t):
                continue
            k = key(t)
            if k not in seen:
                seen.add(k)
                new.append(t)
                yield t
        reps += new
        fresh = new


# -- map/context enumeration for sweeps ---------------------------------------------

def _validate_restriction(kind: str, restrict: str | None) -> None:
    if restrict is None:
        return
    if restrict not in RESTRICTIONS:
        raise ValueError(f"unknown restriction {restrict!r}; expected one of {RESTRICTIONS}")
    allowed = {
        "order": ("bdd", "zdd"),
        "vtree": ("sdd", "zsdd"),
        "deterministic": ("sdd", "zsdd"),
        "partition": ("sdd",),
    }[restrict]
    if kind not in allowed:
        raise ValueError(f"restriction {restrict!r} does not apply to {kind}")


def _contexts(kind: str, restrict: str | None, budget: EnumBudget,
              injective: bool | None = None) -> Iterator[tuple[FiniteMap, Any, Any]]:
    """(map, source structure, target structure) triples, in a fixed order.

    ``injective`` selects only injective (True) or only non-injective
    (False) maps; None keeps both, except that strongly deterministic ZSDDs
    default to injective maps.
    """
    if injective is None and restrict == "deterministic" and kind == "zsdd":
        injective = True
    sizes = range(budget.max_universe_size + 1)
    for m, n in product(sizes, sizes):
        x, y = universe_of_size(m), universe_of_size(n)
        if restrict == "order":
            ox, oy = TotalOrder(x.names), TotalOrder(y.names)
            for f in enumerate_maps(x, y):
                if dg.is_strictly_monotone(f, ox, oy):
                    yield f, ox, oy
        elif restrict == "vtree":
            for v in enumerate_vtrees(x):
                for w in enumerate_vtrees(y):
                    for f in enumerate_embeddings(v, w, max_leaves=len(UNIVERSE_NAMES)):
                        yield f, v, w
        else:
            for f in enumerate_maps(x, y):
                if injective is None or f.is_injective() == injective:
                    yield f, None, None




class _Terms:
    """Terms to check under one map: class representatives or the literal stream."""

    def __init__(self, kind: str, f: FiniteMap, restriction: _Restriction, budget: EnumBudget,
                 strategy: str, key: Callable | None = None):
        self.kind, self.f, self.restriction = kind, f, restriction
        self.budget, self.strategy = budget, strategy
        self.store = NodeStore() if kind in ("bdd", "zdd") else None
        self.probe = _Probe(kind, f, self.store)
        self._key = key or self.naturality_key

    def naturality_key(self, t):
        p = self.probe
        return (p.source(t), p.target(p.moved(t)), self.restriction.signature(t))

    def __iter__(self) -> Iterator:
        b, r, u = self.budget, self.restriction, self.f.domain
        if self.strategy == "literal":
            for t in enumerate_terms(self.kind, u, b.max_depth, b.max_width):
                if r.keep_full(t, u):
                    yield t
            return
        pair_ok = r.pair_ok if r.name == "vtree" else None
        yield from _classes(self.kind, u, b.max_depth, b.max_width, self._key,
                            lambda t: r.keep(t, self.probe), pair_ok, self.store)


def _check_strategy(strategy: str) -> None:
    if strategy not in ("classes", "literal"):
        raise ValueError(f"unknown strategy {strategy!r}; expected 'classes' or 'literal'")


def sweep(kind: str, functor: str, budget: EnumBudget | None = None, restrict: str | None = None,
          strategy: str = "classes") -> SquareReport:
    """Check the naturality square for every universe pair, map and term in budget.

    The first failure in enumeration order becomes the witness.  With
    ``restrict``, terms are limited to those respecting the source order or
    vtree (or to strongly deterministic / partition terms), and maps to the
    matching morphisms.  ``budget.max_terms`` caps the terms checked per map;
    ``budget.samples`` adds that many seeded random terms of depth
    ``max_depth + 2`` per map on unrestricted sweeps.
    """
    _check_kind(kind)
    if functor not in FUNCTORS:
        raise ValueError(f"unknown functor {functor!r}; expected one of {FUNCTORS}")
    _validate_restriction(kind, restrict)
    _check_strategy(strategy)
    budget = budget or default_budget(kind)
    checked = 0
    for index, (f, src, dst) in enumerate(_contexts(kind, restrict, budget)):
        terms = _Terms(kind, f, _Restriction(kind, restrict, src, dst), budget, strategy)
        act = image_family if functor == "covariant" else preimage_family
        actions: dict = {}
        probe = terms.probe
        for n_here, t in enumerate(terms):
            if budget.max_terms is not None and n_here >= budget.max_terms:
                break
            checked += 1
            source = probe.source(t)
            rhs = actions.get(source)
            if rhs is None:
                rhs = actions[source] = act(f, source)
            if probe.target(probe.moved(t)) != rhs:
                return _failure(kind, functor, f, t, src, dst, checked, restrict)
        if restrict is None and budget.samples:
            rng = random.Random(budget.random_seed * 1_000_003 + index)
            for _ in range(budget.samples):
                t = random_term(kind, f.domain.names, budget.max_depth + 2, rng, budget.max_width)
                checked += 1
                if not check_square(kind, functor, f, t).holds:
                    return _failure(kind, functor, f, t, src, dst, checked, restrict)
    return SquareReport(kind, functor, True, None, checked, restrict)


def _failure(kind, functor, f, t, src, dst, checked, restrict) -> SquareReport:
    # Recompute through the public path so the stored values do not depend
    # on the sweep's memo tables.
    w = check_square(kind, functor, f, t).witness
    if w is None:
        raise AssertionError("sweep and check_square disagree on a term")
    return SquareReport(kind, functor, False, Witness(f, t, w.lhs, w.rhs, src, dst), checked, restrict)


# -- closure under relabelling ------------------------------------------------------

@dataclass(frozen=True)
class ClosureWitness:
    f: FiniteMap
    term: Any
    image: Any
    source: Any = None
    target: Any = None


@dataclass(frozen=True)
class ClosureReport:
    kind: str
    restrict: str
    holds: bool
    witness: ClosureWitness | None = None
    checked: int = 0

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("a report carries a witness exactly when closure fails")


def sweep_closure(kind: str, restrict: str, budget: EnumBudget | None = None,
                  injective: bool | None = None, strategy: str = "classes") -> ClosureReport:
    """Check that relabelling keeps restricted terms restricted.

    ``order``: order-respecting diagrams under strictly monotone maps stay
    order-respecting.  ``vtree``: vtree-respecting terms under embeddings
    respect the target vtree.  ``deterministic`` / ``partition``: the
    predicate survives relabelling (all maps for SDDs; for ZSDDs, injective
    maps unless ``injective=False`` asks for the non-injective probe).
    """
    _check_kind(kind)
    if restrict is None:
        raise ValueError("closure sweeps need a restriction")
    _validate_restriction(kind, restrict)
    _check_strategy(strategy)
    budget = budget or default_budget(kind)
    checked = 0
    for f, src, dst in _contexts(kind, restrict, budget, injective):
        r = _Restriction(kind, restrict, src, dst)
        terms = _Terms(kind, f, r, budget, strategy)
        probe = terms.probe

        def key(t, probe=probe, r=r):
            moved = probe.moved(t)
            if restrict in ("order", "vtree"):
                return (r.signature(t), r.target_signature(moved, probe))
            return (probe.source(t), probe.target(moved), r.target_signature(moved, probe))

        terms._key = key
        for n_here, t in enumerate(terms):
            if budget.max_terms is not None and n_here >= budget.max_terms:
                break
            checked += 1
            moved = relabel(kind, f, t)
            if not r.target_holds(moved, probe):
                return ClosureReport(kind, restrict, False, ClosureWitness(f, t, moved, src, dst), checked)
    return ClosureReport(kind, restrict, True, None, checked)


# -- the tau bijection and the non-isomorphism argument ---------------------------------

def find_tau_counterexample(max_size: int = 2) -> tuple[FiniteMap, CombinationSet] | None:
    """Smallest (map, combination set) on which tau fails to commute with the actions."""
    sizes = range(max_size + 1)
    for m, n in product(sizes, sizes):
        x, y = universe_of_size(m), universe_of_size(n)
        for f in enumerate_maps(x, y):
            for p in all_combination_sets(x):
                if tau(cs_map(f, p)) != bf_map(f, tau(p)):
                    return f, p
    return None


@dataclass(frozen=True)
class TraceStep:
    claim: str
    holds: bool


def prop24_trace() -> list[TraceStep]:
    """Replay the argument that no natural isomorphism exists between the two functors.

    With ``X = {x, y}``, the inclusion ``i`` of the empty universe and the
    retraction ``r(x) = r(y) = x``: naturality of any ``alpha`` forces
    ``alpha_X(P(X)) = alpha_X({ε, x, xy})``.  For each of the four possible
    components ``alpha_∅`` the constraint from the ``r``-square admits only
    ``Q = P`` among all sixteen combination sets over ``X``.
    """
    from natdd.syntax import format_boolean_function, format_combination_set

    empty, X = Universe(), Universe(["x", "y"])
    i = FiniteMap.inclusion(empty, X)
    r = FiniteMap(X, X, {"x": "x", "y": "x"})
    steps: list[TraceStep] = []

    full = BooleanFunction(X, powerset_family(X.elements))
    unit = BooleanFunction(empty, [frozenset()])
    lhs_i = bf_map(i, unit)
    steps.append(TraceStep(f"boolean action of i on {{ε}} is {format_boolean_function(lhs_i)} = P(X)",
                           lhs_i == full))
    q_arg = BooleanFunction(X, [frozenset(), frozenset("x"), frozenset("xy")])
    lhs_r = bf_map(r, q_arg)
    steps.append(TraceStep(f"boolean action of r on {{ε, x, xy}} is {format_boolean_function(lhs_r)} = P(X)",
                           lhs_r == full))
    steps.append(TraceStep("the two preimages differ, so alpha_X would identify distinct inputs",
                           q_arg != full))

    domain_values = [BooleanFunction(empty, []), unit]
    codomain_values = [CombinationSet(empty, []), CombinationSet(empty, [frozenset()])]
    for images in product(codomain_values, repeat=len(domain_values)):
        alpha_empty = dict(zip(domain_values, images))
        p = cs_map(i, alpha_empty[unit])
        forced = [q for q in all_combination_sets(X) if cs_map(r, q) == p]
        ok = all(q == p for q in forced) and bool(forced)
        steps.append(TraceStep(
            f"alpha_∅ sends {{}} to {format_combination_set(images[0])} and {{ε}} to "
            f"{format_combination_set(images[1])}: P = {format_combination_set(p)}; Q with r-image P: "
            f"{', '.join(format_combination_set(q) for q in forced)}; Q = P",
            ok))
    return steps


def verify_prop24_witness() -> bool:
    return all(step.holds for step in prop24_trace())


# -- partition ZSDDs are not stable under embeddings ---------------------------------------

@dataclass(frozen=True)
class PartitionDemo:
    term: Any
    vtree: Vtree
    embedded_into: Vtree
    embedding_ok: bool
    respected_node: Vtree
    prime_union: CombinationSet
    is_partition: bool
    embedded_respected_node: Vtree
    embedded_prime_union: CombinationSet
    embedded_is_partition: bool

    @property
    def reproduces(self) -> bool:
        return self.embedding_ok and self.is_partition and not self.embedded_is_partition


def _prime_partition(z, v: Vtree) -> tuple[Vtree, CombinationSet, bool]:
    """Node ``(v1, v2)`` where ``z`` decomposes directly, the union of its
    primes, and whether the primes partition the subsets of ``|v1|``."""
    for node in subtrees(v):
        if not isinstance(node, VNode):
            continue
        if all(respects(p, node.left) and respects(s, node.right) for p, s in z.pairs):
            primes = [sn.zsdd_family(p) for p, _ in z.pairs]
            left = leaves(node.left)
            union = CombinationSet(left, frozenset().union(*primes))
            partition = sn._primes_disjoint(primes) and union == full_powerset(left)
            return node, union, partition
    raise ValueError("decomposition does not sit at any node of the vtree")


def partition_zsdd_counterexample() -> PartitionDemo:
    """``{(a, ε), (ε, b)}`` has primes partitioning ``P({a})`` under ``(a, b)``
    but not ``P({a, c})`` once ``(a, b)`` is embedded into ``((a, c), b)``."""
    from natdd.syntax import parse_vtree

    alpha = sn.ZDecomp([(sn.PosVar("a"), sn.EPS), (sn.EPS, sn.PosVar("b"))])
    v, w = parse_vtree("(a b)"), parse_vtree("((a c) b)")
    f = FiniteMap.inclusion(leaves(v), leaves(w))
    moved = sn.relabel_zsdd(f, alpha)
    node, union, part = _prime_partition(alpha, v)
    node2, union2, part2 = _prime_partition(moved, w)
    return PartitionDemo(alpha, v, w, is_embedding(f, v, w), node, union, part, node2, union2, part2)


# -- report serialization ------------------------------------------------------------

def format_term(kind: str, term) -> str:
    from natdd import syntax

    if kind in ("bdd", "zdd"):
        return syntax.format_diagram(term)
    return syntax.format_sdd(term) if kind == "sdd" else syntax.format_zsdd(term)


def _structure_text(x) -> str | None:
    from natdd import syntax

    if x is None:
        return None
    if isinstance(x, TotalOrder):
        return syntax.format_names(x.names)
    return syntax.format_vtree(x)


def _value_text(v) -> str:
    from natdd import syntax

    if isinstance(v, BooleanFunction):
        return syntax.format_boolean_function(v)
    return syntax.format_combination_set(v)


def _map_record(f: FiniteMap) -> dict:
    return {"domain": list(f.domain.names), "codomain": list(f.codomain.names), "table": dict(f.table)}


def report_record(report: SquareReport | ClosureReport) -> dict:
    """A JSON-ready description of a sweep or square report."""
    rec: dict = {"kind": report.kind}
    if isinstance(report, SquareReport):
        rec.update(functor=report.functor, restrict=report.restrict)
    else:
        rec.update(closure=report.restrict)
    rec.update(holds=report.holds, checked=report.checked)
    w = report.witness
    if w is None:
        rec["witness"] = None
        return rec
    wit = {"map": _map_record(w.f), "term": format_term(report.kind, w.term),
           "source": _structure_text(w.source), "target": _structure_text(w.target)}
    if isinstance(w, Witness):
        wit["lhs"] = [list(c) for c in w.lhs.sorted()]
        wit["rhs"] = [list(c) for c in w.rhs.sorted()]
        wit["lhs_text"], wit["rhs_text"] = _value_text(w.lhs), _value_text(w.rhs)
    else:
        wit["image"] = format_term(report.kind, w.image)
    rec["witness"] = wit
    return rec


def report_text(report: SquareReport | ClosureReport) -> str:
    if isinstance(report, SquareReport):
        what = f"{report.kind} {report.functor}"
        if report.restrict:
            what += f" restricted to {report.restrict}"
    else:
        what = f"{report.kind} closure under {report.restrict}"
    if report.holds:
        return f"holds: {what} ({report.checked} terms checked)"
    w = report.witness
    f = w.f
    table = ", ".join(f"{x} -> {y}" for x, y in f.table) or "(empty map)"
    lines = [
        f"fails: {what} (after {report.checked} terms)",
        f"  map: {table}  from {{{','.join(f.domain.names)}}} to {{{','.join(f.codomain.names)}}}",
    ]
    if w.source is not None:
        lines.append(f"  structures: {_structure_text(w.source)} -> {_structure_text(w.target)}")
    lines.append(f"  term: {format_term(report.kind, w.term)}")
    if isinstance(w, Witness):
        lines.append(f"  lhs: {_value_text(w.lhs)}")
        lines.append(f"  rhs: {_value_text(w.rhs)}")
    else:
        lines.append(f"  image: {format_term(report.kind, w.image)}")
    return "\n".join(lines)
