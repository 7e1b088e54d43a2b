from itertools import chain, combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from natdd.setfun import (
    BooleanFunction,
    CombinationSet,
    FiniteMap,
    Universe,
    UniverseError,
    all_combination_sets,
    bf_complement,
    bf_map,
    cs_map,
    full_powerset,
    join,
    powerset_family,
    tau,
    tau_inv,
)

NAMES = "abc"


def brute_subsets(xs):
    xs = sorted(xs)
    return [frozenset(c) for c in chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))]


def brute_cs_map(f, p):
    return {frozenset(f(x) for x in c) for c in p.combos}


def brute_bf_map(f, g):
    # C' is accepted iff its preimage is accepted.
    return {c for c in brute_subsets(f.codomain.names) if frozenset(x for x in f.domain.names if f(x) in c) in g.accepted}


@st.composite
def universes(draw, min_size=0):
    k = draw(st.integers(min_size, len(NAMES)))
    return Universe(NAMES[:k])


@st.composite
def combination_sets(draw, u=None):
    u = u if u is not None else draw(universes())
    subs = brute_subsets(u.names)
    picked = draw(st.lists(st.sampled_from(subs), unique=True)) if subs else []
    return CombinationSet(u, picked)


@st.composite
def maps(draw):
    x = draw(universes())
    y = Universe(["p", "q", "r"][: draw(st.integers(1, 3))])
    return FiniteMap(x, y, {a: draw(st.sampled_from(y.names)) for a in x.names})


def test_universe_rejects_duplicates():
    with pytest.raises(UniverseError):
        Universe(["a", "a"])


def test_combination_set_checks_universe():
    with pytest.raises(UniverseError):
        CombinationSet(Universe("a"), [{"b"}])


def test_map_must_be_total():
    with pytest.raises(UniverseError):
        FiniteMap(Universe("ab"), Universe("x"), {"a": "x"})


def test_powerset_size():
    assert len(powerset_family("abc")) == 8
    assert full_powerset(Universe("")).combos == {frozenset()}


def test_tau_keeps_data():
    p = CombinationSet(Universe("ab"), [{"a"}, {"a", "b"}])
    g = tau(p)
    assert isinstance(g, BooleanFunction)
    assert g.accepted == p.combos
    assert tau_inv(g) == p
    assert tau(CombinationSet(Universe("ab"), [])).accepted == frozenset()


@pytest.mark.parametrize("k, count", [(0, 2), (1, 4), (2, 16), (3, 256)])
def test_tau_round_trip_exhaustive(k, count):
    seen = 0
    for p in all_combination_sets(Universe(NAMES[:k])):
        assert tau_inv(tau(p)) == p
        assert tau(tau_inv(tau(p))) == tau(p)
        seen += 1
    assert seen == count


@given(maps(), st.data())
def test_cs_map_matches_oracle(f, data):
    p = data.draw(combination_sets(f.domain))
    assert cs_map(f, p).combos == brute_cs_map(f, p)


@given(maps(), st.data())
def test_bf_map_matches_oracle(f, data):
    g = tau(data.draw(combination_sets(f.domain)))
    assert bf_map(f, g).accepted == brute_bf_map(f, g)


@given(maps(), st.data())
def test_functor_laws(f, data):
    p = data.draw(combination_sets(f.domain))
    ident = FiniteMap.identity(f.domain)
    assert cs_map(ident, p) == p
    assert bf_map(ident, tau(p)) == tau(p)
    z = Universe("uv")
    g = FiniteMap(f.codomain, z, {y: data.draw(st.sampled_from(z.names)) for y in f.codomain.names})
    h = f.then(g)
    assert cs_map(h, p) == cs_map(g, cs_map(f, p))
    assert bf_map(h, tau(p)) == bf_map(g, bf_map(f, tau(p)))


def test_bf_map_commutes_with_complement():
    f = FiniteMap(Universe("ab"), Universe("x"), {"a": "x", "b": "x"})
    for p in all_combination_sets(Universe("ab")):
        g = tau(p)
        assert bf_map(f, bf_complement(g)) == bf_complement(bf_map(f, g))


def test_join():
    u = Universe("abc")
    p = CombinationSet(u, [{"a"}, set()])
    q = CombinationSet(u, [{"b"}])
    assert join(p, q).combos == {frozenset("ab"), frozenset("b")}


def test_finite_map_helpers():
    f = FiniteMap(Universe("ab"), Universe("xy"), {"a": "x", "b": "x"})
    assert not f.is_injective()
    assert f.image({"a", "b"}) == {"x"}
    assert f.preimage({"x"}) == {"a", "b"}
    assert f.preimage({"y"}) == frozenset()
    inc = FiniteMap.inclusion(Universe("a"), Universe("ab"))
    assert inc("a") == "a" and inc.is_injective()
