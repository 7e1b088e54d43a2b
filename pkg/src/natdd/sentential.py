"""Sentential decision diagrams and their zero-suppressed variant.

Terms are immutable trees.  A decomposition is a non-empty *set* of
(prime, sub) pairs; pairs are kept sorted under a fixed term ordering so
that two decompositions listing the same pairs in different orders are the
same value.  Primes and subs may share variables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Union

from natdd.diagram import ONE_REF, ZERO_REF, Diagram
from natdd.setfun import (
    CombinationSet,
    FiniteMap,
    Universe,
    UniverseError,
    join_family,
    powerset_family,
)


class _Term:
    """Equality, hashing and ordering all go through a cached sort key."""

    _key: tuple

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self._key == other._key  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __lt__(self, other: _Term) -> bool:
        return self._key < other._key

    def _set_key(self, key: tuple) -> None:
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash((type(self).__name__, key)))


_NOKEY = dict(init=False, repr=False, compare=False, default=None)


@dataclass(frozen=True, eq=False)
class Bot(_Term):
    """The empty family; shared by both term languages."""

    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((0, 0))


@dataclass(frozen=True, eq=False)
class Top(_Term):
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((0, 1))


@dataclass(frozen=True, eq=False)
class Eps(_Term):
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((0, 1))


@dataclass(frozen=True, eq=False)
class PosLit(_Term):
    name: str
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((1, self.name, 1))


@dataclass(frozen=True, eq=False)
class NegLit(_Term):
    name: str
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((1, self.name, 0))


@dataclass(frozen=True, eq=False)
class PosVar(_Term):
    name: str
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((1, self.name, 1))


@dataclass(frozen=True, eq=False)
class PmVar(_Term):
    """``±x``: the variable may be present or absent."""

    name: str
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        self._set_key((1, self.name, 2))


def _canonical_pairs(pairs: Iterable[tuple], allowed: tuple, what: str) -> tuple:
    out = set()
    for pair in pairs:
        p, s = pair
        if not isinstance(p, allowed) or not isinstance(s, allowed):
            raise TypeError(f"{what} pair holds a term of the wrong language: {pair!r}")
        out.add((p, s))
    if not out:
        raise ValueError(f"{what} needs at least one (prime, sub) pair")
    return tuple(sorted(out, key=lambda ps: (ps[0]._key, ps[1]._key)))


@dataclass(frozen=True, eq=False)
class Decomp(_Term):
    """SDD decomposition, read as the union of ``prime ∩ sub`` over its pairs."""

    pairs: tuple[tuple[Sdd, Sdd], ...]
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        pairs = _canonical_pairs(self.pairs, SDD_TYPES, "SDD decomposition")
        object.__setattr__(self, "pairs", pairs)
        self._set_key((2, tuple((p._key, s._key) for p, s in pairs)))


@dataclass(frozen=True, eq=False)
class ZDecomp(_Term):
    """ZSDD decomposition, read as the union of ``prime ⊔ sub`` over its pairs."""

    pairs: tuple[tuple[Zsdd, Zsdd], ...]
    _key: tuple = field(**_NOKEY)

    def __post_init__(self) -> None:
        pairs = _canonical_pairs(self.pairs, ZSDD_TYPES, "ZSDD decomposition")
        object.__setattr__(self, "pairs", pairs)
        self._set_key((2, tuple((p._key, s._key) for p, s in pairs)))


Sdd = Union[Top, Bot, PosLit, NegLit, Decomp]
Zsdd = Union[Bot, Eps, PosVar, PmVar, ZDecomp]
SDD_TYPES = (Top, Bot, PosLit, NegLit, Decomp)
ZSDD_TYPES = (Bot, Eps, PosVar, PmVar, ZDecomp)

TOP = Top()
BOT = Bot()
EPS = Eps()


def vars_of(t: Sdd | Zsdd) -> frozenset[str]:
    if isinstance(t, (Decomp, ZDecomp)):
        out: set[str] = set()
        for p, s in t.pairs:
            out |= vars_of(p)
            out |= vars_of(s)
        return frozenset(out)
    name = getattr(t, "name", None)
    return frozenset() if name is None else frozenset([name])


def depth_of(t: Sdd | Zsdd) -> int:
    if isinstance(t, (Decomp, ZDecomp)):
        return 1 + max(max(depth_of(p), depth_of(s)) for p, s in t.pairs)
    return 0


def _require_vars(t, names: frozenset[str], where: str) -> None:
    extra = vars_of(t) - names
    if extra:
        raise UniverseError(f"term variables {sorted(extra)} are outside {where}")


def sdd_family(s: Sdd, u: Universe, memo: dict | None = None) -> frozenset:
    """Raw reading of an SDD as a set of subsets of ``u``.  ``memo`` is keyed
    by term and must only be shared between calls over the same universe."""
    if memo is None:
        memo = {}
    r = memo.get(s)
    if r is not None:
        return r
    if isinstance(s, Top):
        r = powerset_family(u.elements)
    elif isinstance(s, Bot):
        r = frozenset()
    elif isinstance(s, PosLit):
        r = frozenset(c for c in powerset_family(u.elements) if s.name in c)
    elif isinstance(s, NegLit):
        r = frozenset(c for c in powerset_family(u.elements) if s.name not in c)
    elif isinstance(s, Decomp):
        r = frozenset().union(
            *(sdd_family(p, u, memo) & sdd_family(q, u, memo) for p, q in s.pairs)
        )
    else:
        raise TypeError(f"not an SDD: {s!r}")
    memo[s] = r
    return r


_EPS_FAMILY = frozenset([frozenset()])


def zsdd_family(z: Zsdd, memo: dict | None = None) -> frozenset:
    """Raw reading of a ZSDD; it never mentions variables absent from ``z``."""
    if memo is None:
        memo = {}
    r = memo.get(z)
    if r is not None:
        return r
    if isinstance(z, Bot):
        r = frozenset()
    elif isinstance(z, Eps):
        r = _EPS_FAMILY
    elif isinstance(z, PosVar):
        r = frozenset([frozenset([z.name])])
    elif isinstance(z, PmVar):
        r = frozenset([frozenset(), frozenset([z.name])])
    elif isinstance(z, ZDecomp):
        r = frozenset().union(
            *(join_family(zsdd_family(p, memo), zsdd_family(q, memo)) for p, q in z.pairs)
        )
    else:
        raise TypeError(f"not a ZSDD: {z!r}")
    memo[z] = r
    return r


def interpret_sdd(s: Sdd, u: Universe) -> CombinationSet:
    _require_vars(s, u.elements, repr(u))
    return CombinationSet(u, sdd_family(s, u))


def interpret_zsdd(z: Zsdd, u: Universe) -> CombinationSet:
    _require_vars(z, u.elements, repr(u))
    return CombinationSet(u, zsdd_family(z))


def _relabel(f: FiniteMap, t, memo: dict, decomp_type):
    r = memo.get(t)
    if r is not None:
        return r
    if isinstance(t, (Top, Bot, Eps)):
        r = t
    elif isinstance(t, (PosLit, NegLit, PosVar, PmVar)):
        r = type(t)(f(t.name))
    else:
        # Pairs that become equal collapse: the result is again a set.
        r = decomp_type(
            (_relabel(f, p, memo, decomp_type), _relabel(f, s, memo, decomp_type))
            for p, s in t.pairs
        )
    memo[t] = r
    return r


def relabel_sdd(f: FiniteMap, s: Sdd, memo: dict | None = None) -> Sdd:
    _require_vars(s, f.domain.elements, "the map's domain")
    return _relabel(f, s, {} if memo is None else memo, Decomp)


def relabel_zsdd(f: FiniteMap, z: Zsdd, memo: dict | None = None) -> Zsdd:
    _require_vars(z, f.domain.elements, "the map's domain")
    return _relabel(f, z, {} if memo is None else memo, ZDecomp)


def decompositions(t: Sdd | Zsdd) -> list:
    """Every decomposition node occurring in ``t`` (``t`` itself included)."""
    out, seen, stack = [], set(), [t]
    while stack:
        node = stack.pop()
        if not isinstance(node, (Decomp, ZDecomp)) or node in seen:
            continue
        seen.add(node)
        out.append(node)
        for p, s in node.pairs:
            stack += (p, s)
    return out


def _primes_disjoint(primes: list[frozenset]) -> bool:
    return all(not (a & b) for a, b in combinations(primes, 2))


def is_strongly_deterministic_sdd(s: Sdd, u: Universe) -> bool:
    _require_vars(s, u.elements, repr(u))
    memo: dict = {}
    return all(
        _primes_disjoint([sdd_family(p, u, memo) for p, _ in node.pairs])
        for node in decompositions(s)
    )


def is_partition_sdd(s: Sdd, u: Universe) -> bool:
    _require_vars(s, u.elements, repr(u))
    memo: dict = {}
    everything = powerset_family(u.elements)
    for node in decompositions(s):
        primes = [sdd_family(p, u, memo) for p, _ in node.pairs]
        if not _primes_disjoint(primes) or frozenset().union(*primes) != everything:
            return False
    return True


def is_strongly_deterministic_zsdd(z: Zsdd, u: Universe) -> bool:
    _require_vars(z, u.elements, repr(u))
    memo: dict = {}
    return all(
        _primes_disjoint([zsdd_family(p, memo) for p, _ in node.pairs])
        for node in decompositions(z)
    )


def bdd_to_sdd(d: Diagram) -> Sdd:
    """Shannon translation: ``(a, F, G)`` becomes ``{(¬a, F'), (a, G')}``."""
    memo: dict[int, Sdd] = {ZERO_REF: BOT, ONE_REF: TOP}

    def go(ref: int) -> Sdd:
        if ref not in memo:
            a, lo, hi = d.store.node(ref)
            memo[ref] = Decomp([(NegLit(a), go(lo)), (PosLit(a), go(hi))])
        return memo[ref]

    return go(d.ref)


def zdd_to_zsdd(d: Diagram) -> Zsdd:
    """Zero-suppressed analogue: ``(a, F, G)`` becomes ``{(ε, F'), (a, G')}``."""
    memo: dict[int, Zsdd] = {ZERO_REF: BOT, ONE_REF: EPS}

    def go(ref: int) -> Zsdd:
        if ref not in memo:
            a, lo, hi = d.store.node(ref)
            memo[ref] = ZDecomp([(EPS, go(lo)), (PosVar(a), go(hi))])
        return memo[ref]

    return go(d.ref)
