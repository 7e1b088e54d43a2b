"""Decision diagrams read either as BDDs or as ZDDs.

Nodes live in a :class:`NodeStore` with a unique table, so structurally equal
subdiagrams are the same stored node.  Diagrams are never reduced: a node
whose two children coincide is kept, and labels may repeat along a path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from natdd.setfun import (
    CombinationSet,
    FiniteMap,
    Universe,
    UniverseError,
    powerset_family,
)

ZERO_REF = 0
ONE_REF = 1


class NodeStore:
    """Append-only hash-consed table of decision nodes.

    Refs 0 and 1 are the terminals.  Construction is not synchronized;
    concurrent builders must share the store under an external lock.
    """

    def __init__(self) -> None:
        self._nodes: list[tuple[str, int, int] | None] = [None, None]
        self._unique: dict[tuple[str, int, int], int] = {}

    def __len__(self) -> int:
        return len(self._nodes)

    def terminal(self, bit: int) -> Diagram:
        if bit not in (0, 1):
            raise ValueError(f"terminal bit must be 0 or 1, got {bit!r}")
        return Diagram(self, bit)

    def decision(self, label: str, lo: Diagram, hi: Diagram) -> Diagram:
        if lo.store is not self or hi.store is not self:
            raise ValueError("children belong to a different node store")
        key = (label, lo.ref, hi.ref)
        ref = self._unique.get(key)
        if ref is None:
            ref = len(self._nodes)
            self._nodes.append(key)
            self._unique[key] = ref
        return Diagram(self, ref)

    def node(self, ref: int) -> tuple[str, int, int] | None:
        return self._nodes[ref]


default_store = NodeStore()


@dataclass(frozen=True)
class Diagram:
    """A root reference into a node store."""

    store: NodeStore
    ref: int

    @property
    def is_terminal(self) -> bool:
        return self.ref <= ONE_REF

    @property
    def value(self) -> int:
        if not self.is_terminal:
            raise ValueError("decision node has no terminal value")
        return self.ref

    @property
    def label(self) -> str:
        return self._decision()[0]

    @property
    def lo(self) -> Diagram:
        return Diagram(self.store, self._decision()[1])

    @property
    def hi(self) -> Diagram:
        return Diagram(self.store, self._decision()[2])

    def _decision(self) -> tuple[str, int, int]:
        node = self.store.node(self.ref)
        if node is None:
            raise ValueError("terminal node has no label or children")
        return node

    def __repr__(self) -> str:
        from natdd.syntax import format_diagram

        return f"Diagram({format_diagram(self)})"


def mk_terminal(bit: int, store: NodeStore | None = None) -> Diagram:
    return (store or default_store).terminal(bit)


def mk_decision(label: str, lo: Diagram, hi: Diagram) -> Diagram:
    return lo.store.decision(label, lo, hi)


def labels_of(d: Diagram) -> frozenset[str]:
    seen: set[int] = set()
    labels: set[str] = set()
    stack = [d.ref]
    while stack:
        ref = stack.pop()
        if ref in seen or ref <= ONE_REF:
            continue
        seen.add(ref)
        label, lo, hi = d.store.node(ref)
        labels.add(label)
        stack += (lo, hi)
    return frozenset(labels)


def depth_of(d: Diagram) -> int:
    """Number of decision nodes on the longest root-to-terminal path."""
    memo: dict[int, int] = {ZERO_REF: 0, ONE_REF: 0}

    def go(ref: int) -> int:
        if ref not in memo:
            _, lo, hi = d.store.node(ref)
            memo[ref] = 1 + max(go(lo), go(hi))
        return memo[ref]

    return go(d.ref)


def _require_labels(d: Diagram, names: frozenset[str], where: str) -> None:
    extra = labels_of(d) - names
    if extra:
        raise UniverseError(f"diagram labels {sorted(extra)} are outside {where}")


def bdd_family(d: Diagram, u: Universe, memo: dict | None = None) -> frozenset:
    """Raw BDD reading: the subsets C whose traversal reaches the 1-terminal.

    ``memo`` maps node refs to results and may be shared across calls that
    use the same store and universe.
    """
    if memo is None:
        memo = {}
    if ZERO_REF not in memo:
        memo[ZERO_REF] = frozenset()
        memo[ONE_REF] = powerset_family(u.elements)
    nodes = d.store._nodes

    def go(ref: int) -> frozenset:
        r = memo.get(ref)
        if r is None:
            a, lo, hi = nodes[ref]
            r = frozenset(c for c in go(lo) if a not in c) | frozenset(
                c for c in go(hi) if a in c
            )
            memo[ref] = r
        return r

    return go(d.ref)


def zdd_family(d: Diagram, memo: dict | None = None) -> frozenset:
    """Raw ZDD reading; independent of the ambient universe."""
    if memo is None:
        memo = {}
    if ZERO_REF not in memo:
        memo[ZERO_REF] = frozenset()
        memo[ONE_REF] = frozenset([frozenset()])
    nodes = d.store._nodes

    def go(ref: int) -> frozenset:
        r = memo.get(ref)
        if r is None:
            a, lo, hi = nodes[ref]
            r = go(lo) | frozenset(c | {a} for c in go(hi))
            memo[ref] = r
        return r

    return go(d.ref)


def interpret_bdd(d: Diagram, u: Universe) -> CombinationSet:
    _require_labels(d, u.elements, repr(u))
    return CombinationSet(u, bdd_family(d, u))


def interpret_zdd(d: Diagram, u: Universe) -> CombinationSet:
    _require_labels(d, u.elements, repr(u))
    return CombinationSet(u, zdd_family(d))


def eval_bdd(d: Diagram, c: Iterable[str], u: Universe) -> int:
    """Walk from the root, taking the 1-edge exactly when the label is in ``c``."""
    c = frozenset(c)
    _require_labels(d, u.elements, repr(u))
    if not c <= u.elements:
        raise UniverseError(f"combination {sorted(c)} is not a subset of {u!r}")
    ref = d.ref
    while ref > ONE_REF:
        a, lo, hi = d.store.node(ref)
        ref = hi if a in c else lo
    return ref


def one_paths(d: Diagram) -> frozenset:
    """For every root-to-1 path, the labels whose 1-edge the path takes.

    Plain path enumeration with no sharing; used as an oracle for the ZDD
    reading, so it deliberately avoids :func:`zdd_family`.
    """
    out: set[frozenset[str]] = set()

    def walk(ref: int, taken: frozenset[str]) -> None:
        if ref == ONE_REF:
            out.add(taken)
        elif ref != ZERO_REF:
            a, lo, hi = d.store.node(ref)
            walk(lo, taken)
            walk(hi, taken | {a})

    walk(d.ref, frozenset())
    return frozenset(out)


def relabel(f: FiniteMap, d: Diagram, memo: dict | None = None, store: NodeStore | None = None) -> Diagram:
    """Substitute ``f(a)`` for every label ``a``; terminals are fixed."""
    _require_labels(d, f.domain.elements, "the map's domain")
    return relabel_unchecked(f, d, memo, store)


def relabel_unchecked(f: FiniteMap, d: Diagram, memo: dict | None = None, store: NodeStore | None = None) -> Diagram:
    target = store or d.store
    if memo is None:
        memo = {}
    nodes = d.store._nodes

    def go(ref: int) -> int:
        if ref <= ONE_REF:
            return ref
        r = memo.get(ref)
        if r is None:
            a, lo, hi = nodes[ref]
            r = target.decision(f(a), Diagram(target, go(lo)), Diagram(target, go(hi))).ref
            memo[ref] = r
        return r

    return Diagram(target, go(d.ref))


@dataclass(frozen=True)
class TotalOrder:
    """Distinct names listed from smallest to largest."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"total order repeats a name: {list(self.names)}")

    def rank(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UniverseError(f"{name!r} is not in the order {list(self.names)}") from None

    @property
    def universe(self) -> Universe:
        return Universe(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)


def respects_order(d: Diagram, order: TotalOrder) -> bool:
    """True iff every edge between decision nodes goes strictly up the order."""
    ranks = {name: i for i, name in enumerate(order.names)}
    extra = labels_of(d) - ranks.keys()
    if extra:
        raise UniverseError(f"labels {sorted(extra)} are not in the order {list(order.names)}")
    ok: dict[int, bool] = {}

    def go(ref: int) -> bool:
        if ref <= ONE_REF:
            return True
        if ref not in ok:
            a, lo, hi = d.store.node(ref)
            ok[ref] = all(
                child <= ONE_REF or ranks[a] < ranks[d.store.node(child)[0]]
                for child in (lo, hi)
            ) and go(lo) and go(hi)
        return ok[ref]

    return go(d.ref)


def is_strictly_monotone(f: FiniteMap, source: TotalOrder, target: TotalOrder) -> bool:
    ranks = [target.rank(f(x)) for x in source.names]
    return all(r < s for r, s in zip(ranks, ranks[1:]))


def subdiagrams(d: Diagram) -> Iterator[Diagram]:
    """Every node reachable from the root, root first."""
    seen: set[int] = set()
    stack = [d.ref]
    while stack:
        ref = stack.pop()
        if ref in seen:
            continue
        seen.add(ref)
        yield Diagram(d.store, ref)
        if ref > ONE_REF:
            _, lo, hi = d.store.node(ref)
            stack += (hi, lo)
