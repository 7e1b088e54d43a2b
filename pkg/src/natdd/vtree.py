"""Vtrees, the respects relation for SDD/ZSDD terms, and vtree embeddings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterator, Union

from natdd.diagram import TotalOrder
from natdd.sentential import (
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
from natdd.setfun import FiniteMap, Universe, UniverseError


@dataclass(frozen=True)
class Leaf:
    name: str

    @property
    def names(self) -> frozenset[str]:
        return frozenset([self.name])


@dataclass(frozen=True)
class VNode:
    left: Vtree
    right: Vtree

    def __post_init__(self) -> None:
        shared = self.left.names & self.right.names
        if shared:
            raise ValueError(f"vtree leaves must be distinct, {sorted(shared)} repeat")

    @cached_property
    def names(self) -> frozenset[str]:
        return self.left.names | self.right.names


Vtree = Union[Leaf, VNode]


def leaves(v: Vtree) -> Universe:
    return Universe(v.names)


def subtrees(v: Vtree) -> Iterator[Vtree]:
    """Pre-order walk, root first."""
    yield v
    if isinstance(v, VNode):
        yield from subtrees(v.left)
        yield from subtrees(v.right)


_CONSTANTS = (Top, Bot, Eps)
_ATOMS = (PosLit, NegLit, PosVar, PmVar)


def respects(t, v: Vtree, memo: dict | None = None) -> bool:
    """Whether an SDD or ZSDD term respects ``v``.

    Constants respect every vtree; a literal respects its own leaf; a term
    respecting either child respects the node; a decomposition respects
    ``(l, r)`` when all primes respect ``l`` and all subs respect ``r``.
    """
    if memo is None:
        memo = {}
    key = (t, v)
    r = memo.get(key)
    if r is not None:
        return r
    if isinstance(t, _CONSTANTS):
        r = True
    elif isinstance(v, Leaf):
        r = isinstance(t, _ATOMS) and t.name == v.name
    else:
        r = respects(t, v.left, memo) or respects(t, v.right, memo)
        if not r and isinstance(t, (Decomp, ZDecomp)):
            r = all(
                respects(p, v.left, memo) and respects(s, v.right, memo) for p, s in t.pairs
            )
    memo[key] = r
    return r


def respects_vtree_sdd(s, v: Vtree) -> bool:
    if not isinstance(s, (Top, Bot, PosLit, NegLit, Decomp)):
        raise TypeError(f"not an SDD: {s!r}")
    return respects(s, v)


def respects_vtree_zsdd(z, v: Vtree) -> bool:
    if not isinstance(z, (Bot, Eps, PosVar, PmVar, ZDecomp)):
        raise TypeError(f"not a ZSDD: {z!r}")
    return respects(z, v)


def _embeds(f: FiniteMap, v: Vtree, w: Vtree) -> bool:
    if not {f(x) for x in v.names} <= w.names:
        return False
    if isinstance(v, Leaf):
        return True
    if isinstance(w, Leaf):
        return False
    if _embeds(f, v, w.left) or _embeds(f, v, w.right):
        return True
    return _embeds(f, v.left, w.left) and _embeds(f, v.right, w.right)


def is_embedding(f: FiniteMap, v: Vtree, w: Vtree) -> bool:
    """Whether ``f: |v| -> |w|`` is a vtree embedding of ``v`` into ``w``.

    A leaf embeds anywhere in ``w``; a node must have its two halves land in
    the two sides of some node of ``w``, so embeddings are injective.
    """
    if f.domain != leaves(v) or f.codomain != leaves(w):
        raise UniverseError("map must go from the leaves of v to the leaves of w")
    return _embeds(f, v, w)


def vtree_of_order(order: TotalOrder | list[str] | tuple[str, ...]) -> Vtree:
    """``x1 < ... < xn`` becomes the right-linear ``(x1, (x2, ... (xn-1, xn)))``."""
    names = list(order.names if isinstance(order, TotalOrder) else order)
    if not names:
        raise ValueError("cannot build a vtree from an empty order")
    v: Vtree = Leaf(names[-1])
    for name in reversed(names[:-1]):
        v = VNode(Leaf(name), v)
    return v


def enumerate_embeddings(v: Vtree, w: Vtree, max_leaves: int = 4) -> list[FiniteMap]:
    """All maps ``|v| -> |w|`` that are embeddings, by exhaustive search."""
    src, dst = leaves(v), leaves(w)
    if len(src) > max_leaves or len(dst) > max_leaves:
        raise ValueError(f"embedding enumeration is capped at {max_leaves} leaves per side")
    out = []
    for images in product(dst.names, repeat=len(src)):
        f = FiniteMap(src, dst, dict(zip(src.names, images)))
        if _embeds(f, v, w):
            out.append(f)
    return out


def enumerate_vtrees(u: Universe) -> list[Vtree]:
    """Every vtree whose leaves are exactly ``u`` (left and right are distinct)."""
    names = u.names
    if not names:
        return []
    if len(names) == 1:
        return [Leaf(names[0])]
    out = []
    for k in range(1, len(names)):
        for left in combinations(names, k):
            right = [x for x in names if x not in left]
            for lv in enumerate_vtrees(Universe(left)):
                for rv in enumerate_vtrees(Universe(right)):
                    out.append(VNode(lv, rv))
    return out
