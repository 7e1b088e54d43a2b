"""Finite universes, combination sets and Boolean functions.

A combination set and a Boolean function over the same universe carry the
same raw data here (a set of subsets).  They are kept as separate types
because a map between universes acts on them differently: combination sets
take direct images, Boolean functions take preimages of preimages.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Iterable, Iterator, Mapping

Combination = frozenset  # frozenset[str]


class UniverseError(ValueError):
    """A value or map does not live over the universe it was used with."""


def combination(*names: str) -> frozenset[str]:
    return frozenset(names)


def combo_sort_key(c: Iterable[str]) -> tuple:
    """Size first, then lexicographic on the sorted members."""
    s = sorted(c)
    return (len(s), s)


@dataclass(frozen=True, init=False)
class Universe:
    """A finite set of variable names.  Order is irrelevant to equality."""

    elements: frozenset[str]

    def __init__(self, elements: Iterable[str] = ()):
        elems = list(elements)
        if len(set(elems)) != len(elems):
            raise UniverseError(f"repeated universe element in {elems!r}")
        object.__setattr__(self, "elements", frozenset(elems))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.elements

    def __repr__(self) -> str:
        return f"Universe({list(self.names)!r})"


def subsets(names: Iterable[str]) -> Iterator[frozenset[str]]:
    items = sorted(names)
    return (
        frozenset(c)
        for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))
    )


def powerset_family(names: Iterable[str]) -> frozenset[frozenset[str]]:
    return frozenset(subsets(names))


def _check_family(universe: Universe, family: Iterable[Iterable[str]], what: str) -> frozenset:
    fam = frozenset(frozenset(c) for c in family)
    for c in fam:
        if not c <= universe.elements:
            extra = sorted(c - universe.elements)
            raise UniverseError(f"{what} mentions {extra} outside {universe!r}")
    return fam


@dataclass(frozen=True, init=False)
class CombinationSet:
    """An element of the covariant double power set of a universe."""

    universe: Universe
    combos: frozenset[frozenset[str]]

    def __init__(self, universe: Universe, combos: Iterable[Iterable[str]] = ()):
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "combos", _check_family(universe, combos, "combination"))

    def __contains__(self, c: object) -> bool:
        return frozenset(c) in self.combos  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.combos)

    def sorted(self) -> list[tuple[str, ...]]:
        return [tuple(sorted(c)) for c in sorted(self.combos, key=combo_sort_key)]


@dataclass(frozen=True, init=False)
class BooleanFunction:
    """A map 2^X -> 2, stored as the set of subsets it sends to 1."""

    universe: Universe
    accepted: frozenset[frozenset[str]]

    def __init__(self, universe: Universe, accepted: Iterable[Iterable[str]] = ()):
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "accepted", _check_family(universe, accepted, "accepted subset"))

    def __call__(self, assignment: Iterable[str]) -> int:
        """Evaluate on the subset of variables set to 1."""
        return int(frozenset(assignment) in self.accepted)

    def sorted(self) -> list[tuple[str, ...]]:
        return [tuple(sorted(c)) for c in sorted(self.accepted, key=combo_sort_key)]


@dataclass(frozen=True, init=False)
class FiniteMap:
    """A total function between two universes."""

    domain: Universe
    codomain: Universe
    table: tuple[tuple[str, str], ...]
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __init__(self, domain: Universe, codomain: Universe, table: Mapping[str, str]):
        lookup = dict(table)
        if set(lookup) != set(domain.elements):
            raise UniverseError(
                f"map table keys {sorted(lookup)} do not match domain {list(domain.names)}"
            )
        bad = sorted(y for y in lookup.values() if y not in codomain.elements)
        if bad:
            raise UniverseError(f"map images {bad} lie outside codomain {list(codomain.names)}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "table", tuple(sorted(lookup.items())))
        object.__setattr__(self, "_lookup", lookup)

    def __call__(self, x: str) -> str:
        try:
            return self._lookup[x]
        except KeyError:
            raise UniverseError(f"{x!r} is not in the map's domain") from None

    def image(self, a: Iterable[str]) -> frozenset[str]:
        return frozenset(self(x) for x in a)

    def preimage(self, b: Iterable[str]) -> frozenset[str]:
        b = frozenset(b)
        return frozenset(x for x, y in self.table if y in b)

    def is_injective(self) -> bool:
        return len(set(self._lookup.values())) == len(self._lookup)

    def then(self, g: FiniteMap) -> FiniteMap:
        """The composite ``g . self``."""
        if g.domain != self.codomain:
            raise UniverseError("composite of maps with mismatched universes")
        return FiniteMap(self.domain, g.codomain, {x: g(y) for x, y in self.table})

    def restrict(self, sub: Universe, codomain: Universe | None = None) -> FiniteMap:
        return FiniteMap(sub, codomain or self.codomain, {x: self(x) for x in sub.elements})

    @classmethod
    def identity(cls, u: Universe) -> FiniteMap:
        return cls(u, u, {x: x for x in u.elements})

    @classmethod
    def inclusion(cls, sub: Universe, sup: Universe) -> FiniteMap:
        return cls(sub, sup, {x: x for x in sub.elements})

    def __repr__(self) -> str:
        body = ", ".join(f"{x}->{y}" for x, y in self.table)
        return f"FiniteMap({{{body}}}: {list(self.domain.names)} -> {list(self.codomain.names)})"


def _same_universe(p_u: Universe, q_u: Universe) -> None:
    if p_u != q_u:
        raise UniverseError(f"universe mismatch: {p_u!r} vs {q_u!r}")


def tau(p: CombinationSet) -> BooleanFunction:
    """The bijection sending P to the function accepting exactly P's members."""
    return BooleanFunction(p.universe, p.combos)


def tau_inv(g: BooleanFunction) -> CombinationSet:
    return CombinationSet(g.universe, g.accepted)


def cs_map(f: FiniteMap, p: CombinationSet) -> CombinationSet:
    """Covariant action: every combination is replaced by its direct image."""
    _same_universe(p.universe, f.domain)
    return CombinationSet(f.codomain, image_family(f, p.combos))


def bf_map(f: FiniteMap, g: BooleanFunction) -> BooleanFunction:
    """Doubly contravariant action: accept B iff g accepts the preimage of B."""
    _same_universe(g.universe, f.domain)
    return BooleanFunction(f.codomain, preimage_family(f, g.accepted))


def image_family(f: FiniteMap, family: frozenset) -> frozenset:
    return frozenset(f.image(a) for a in family)


def preimage_family(f: FiniteMap, family: frozenset) -> frozenset:
    return frozenset(b for b in subsets(f.codomain.elements) if f.preimage(b) in family)


def join_family(p: frozenset, q: frozenset) -> frozenset:
    return frozenset(a | b for a in p for b in q)


def join(p: CombinationSet, q: CombinationSet) -> CombinationSet:
    """Pairwise unions ``{A | B : A in p, B in q}``."""
    _same_universe(p.universe, q.universe)
    return CombinationSet(p.universe, join_family(p.combos, q.combos))


def cs_union(p: CombinationSet, q: CombinationSet) -> CombinationSet:
    _same_universe(p.universe, q.universe)
    return CombinationSet(p.universe, p.combos | q.combos)


def cs_intersect(p: CombinationSet, q: CombinationSet) -> CombinationSet:
    _same_universe(p.universe, q.universe)
    return CombinationSet(p.universe, p.combos & q.combos)


def full_powerset(u: Universe) -> CombinationSet:
    return CombinationSet(u, powerset_family(u.elements))


def bf_union(g: BooleanFunction, h: BooleanFunction) -> BooleanFunction:
    _same_universe(g.universe, h.universe)
    return BooleanFunction(g.universe, g.accepted | h.accepted)


def bf_intersect(g: BooleanFunction, h: BooleanFunction) -> BooleanFunction:
    _same_universe(g.universe, h.universe)
    return BooleanFunction(g.universe, g.accepted & h.accepted)


def bf_complement(g: BooleanFunction) -> BooleanFunction:
    return BooleanFunction(g.universe, powerset_family(g.universe.elements) - g.accepted)


def all_combination_sets(u: Universe) -> Iterator[CombinationSet]:
    """Every element of the double power set, 2^(2^|u|) of them."""
    everything = list(subsets(u.elements))
    for k in range(len(everything) + 1):
        for chosen in combinations(everything, k):
            yield CombinationSet(u, chosen)
