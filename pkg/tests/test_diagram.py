import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from natdd import lawcheck
from natdd.diagram import (
    NodeStore,
    TotalOrder,
    eval_bdd,
    interpret_bdd,
    interpret_zdd,
    is_strictly_monotone,
    labels_of,
    mk_decision,
    mk_terminal,
    one_paths,
    relabel,
    respects_order,
)
from natdd.setfun import (
    FiniteMap,
    Universe,
    UniverseError,
    bf_map,
    cs_map,
    subsets,
    tau,
)
from natdd.syntax import parse_diagram


def fig1(store):
    # a ? 1 : (b ? 1 : 0)
    return store.decision("a", store.decision("b", store.terminal(0), store.terminal(1)), store.terminal(1))


def test_hash_consing(store):
    x = store.decision("a", store.terminal(0), store.terminal(1))
    y = store.decision("a", store.terminal(0), store.terminal(1))
    assert x == y and x.ref == y.ref


def test_children_must_share_store(store):
    other = NodeStore()
    with pytest.raises(ValueError):
        store.decision("a", other.terminal(0), store.terminal(1))


def test_fig1_values(store):
    d = fig1(store)
    ab, abc = Universe("ab"), Universe("abc")
    assert interpret_bdd(d, ab).sorted() == [("a",), ("b",), ("a", "b")]
    assert interpret_zdd(d, ab).sorted() == [("a",), ("b",)]
    assert interpret_bdd(d, abc).sorted() == [("a",), ("b",), ("a", "b"), ("a", "c"), ("b", "c"), ("a", "b", "c")]
    assert interpret_zdd(d, abc).sorted() == [("a",), ("b",)]


def test_terminals():
    u = Universe("ab")
    assert interpret_bdd(mk_terminal(1), u).combos == frozenset(subsets("ab"))
    assert interpret_bdd(mk_terminal(0), u).combos == frozenset()
    assert interpret_zdd(mk_terminal(1), u).combos == {frozenset()}


def test_labels_outside_universe_rejected(store):
    with pytest.raises(UniverseError):
        interpret_bdd(fig1(store), Universe("a"))


def test_repeated_label_on_path():
    # Only the innermost test of a repeated variable matters on each branch.
    d = parse_diagram("(a (a 0 1) 1)")
    assert interpret_bdd(d, Universe("a")).sorted() == [("a",)]
    assert interpret_zdd(d, Universe("a")).sorted() == [("a",)]


def test_oracles_agree_exhaustively_small():
    u = Universe("ab")
    subs = list(subsets(u.names))
    for d in lawcheck.enumerate_diagrams(u, 2):
        assert one_paths(d) == interpret_zdd(d, u).combos
        beta = interpret_bdd(d, u).combos
        assert {c for c in subs if eval_bdd(d, c, u)} == beta


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 4))
def test_relabel_squares_random(seed, depth):
    rng = random.Random(seed)
    x, y = Universe("abc"), Universe("pq")
    d = lawcheck.random_diagram(x.names, depth, rng)
    f = FiniteMap(x, y, {n: rng.choice(y.names) for n in x.names})
    moved = relabel(f, d)
    assert labels_of(moved) <= set(y.names)
    assert tau(interpret_bdd(moved, y)) == bf_map(f, tau(interpret_bdd(d, x)))
    assert interpret_zdd(moved, y) == cs_map(f, interpret_zdd(d, x))


def test_relabel_checks_domain(store):
    f = FiniteMap(Universe("a"), Universe("x"), {"a": "x"})
    with pytest.raises(UniverseError):
        relabel(f, fig1(store))


def test_respects_order():
    d = parse_diagram("(a (b 0 1) 1)")
    assert respects_order(d, TotalOrder("ab"))
    assert not respects_order(d, TotalOrder("ba"))
    assert not respects_order(parse_diagram("(a (a 0 1) 1)"), TotalOrder("a"))


def test_strict_monotonicity():
    src, tgt = TotalOrder("ab"), TotalOrder("xyz")
    assert is_strictly_monotone(FiniteMap(src.universe, tgt.universe, {"a": "x", "b": "z"}), src, tgt)
    assert not is_strictly_monotone(FiniteMap(src.universe, tgt.universe, {"a": "y", "b": "y"}), src, tgt)
    assert not is_strictly_monotone(FiniteMap(src.universe, tgt.universe, {"a": "z", "b": "x"}), src, tgt)


def test_mk_helpers_use_default_store():
    d = mk_decision("a", mk_terminal(0), mk_terminal(1))
    assert d.label == "a" and d.lo.value == 0 and d.hi.value == 1
