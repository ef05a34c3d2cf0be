from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import posets
from ofsdouble import errors as err
from ofsdouble.catalog import COUNTER_INDEXINGS, FIBRATIONS, INDEXINGS, boxtimes_projection
from ofsdouble.dblcat import DblFunctor, boxtimes, fullop
from ofsdouble.fib import is_cocart_right, is_left_cart
from ofsdouble.fincat import cyclic_group, discrete, poset_category
from ofsdouble.grothendieck import (
    constant_indexing, indexing_failures, roundtrip_fibration, roundtrip_indexing, split_cleavage, straighten,
    straighten_left_cart, unstraighten, unstraighten_left_cart,
)

P = poset_category


def _cell_counts(F: DblFunctor) -> tuple:
    T = F.source
    return T.n_obj, T.horizontal.n_mor, T.vertical.n_mor, T.n_sq


def _expected_counts(X) -> tuple:
    """Cells of the total double category, counted from the indexing data."""
    B, K = X.base, X.obj_cat
    H, V = B.horizontal, B.vertical
    objects = sum(k.n_obj for k in K)
    hmors = 0
    for h in range(H.n_mor):
        Kd, F = K[H.tgt[h]], X.h_fun[h]
        hmors += sum(len(Kd.out_mor[F.obj_map[a]]) for a in range(K[H.src[h]].n_obj))
    vmors = sum(K[V.tgt[v]].n_obj for v in range(V.n_mor))
    squares = 0
    for s in range(B.n_sq):
        t, b, l, r = B.boundary(s)
        Kb, G = K[H.tgt[b]], X.h_fun[b]
        squares += sum(len(Kb.out_mor[G.obj_map[a]]) for a in range(K[V.tgt[l]].n_obj))
    return objects, hmors, vmors, squares


def test_catalog_indexings_validate():
    for e in INDEXINGS:
        assert indexing_failures(e.value) == [], e.name


def test_counter_indexings_raise_the_expected_error():
    for e in COUNTER_INDEXINGS:
        with pytest.raises(err.ValidationError) as info:
            e.value.validate()
        names = {type(info.value).__name__} | {type(x).__name__ for x in info.value.report}
        assert e.expect["error"] in names, e.name


def test_unstraighten_cell_counts():
    for e in INDEXINGS:
        F = unstraighten(e.value)
        assert F.failures() == [] and F.source.failures() == [], e.name
        assert _cell_counts(F) == _expected_counts(e.value), e.name


def test_inclusion_has_three_objects_upstairs():
    X = next(e.value for e in INDEXINGS if e.name.startswith("inclusion"))
    assert unstraighten(X).source.n_obj == 3


def test_constant_indexing_totals_multiply():
    B, K = boxtimes(P(1), P(1)), cyclic_group(2)
    T = unstraighten(constant_indexing(B, K)).source
    assert (T.n_obj, T.horizontal.n_mor, T.vertical.n_mor, T.n_sq) == (4, 12, 6, 18)


def test_unstraightened_indexings_are_cocart_right():
    for e in INDEXINGS:
        assert is_cocart_right(unstraighten(e.value)).verdict, e.name


def test_both_round_trips_close():
    for e in INDEXINGS:
        iso = roundtrip_indexing(e.value)
        assert all(f.is_bijective() for f in iso.theta), e.name
        phi = roundtrip_fibration(unstraighten(e.value))
        assert phi.is_iso(), e.name


def test_round_trip_on_a_projection():
    F = boxtimes_projection(P(1), discrete(2))
    X = straighten(F)
    assert [K.n_obj for K in X.obj_cat] == [2, 2]
    assert roundtrip_fibration(F).is_iso()


def test_straighten_rejects_non_fibrations():
    F = next(e.value for e in FIBRATIONS if e.name == "projection [1]x[1]")
    with pytest.raises(err.IndexingError):
        straighten(F)


def test_non_split_cleavage():
    # Z/4 -> Z/2: either lift of the generator squares to 2, never to the identity
    S, T = boxtimes(cyclic_group(4), P(0)), boxtimes(cyclic_group(2), P(0))
    F = DblFunctor(S, T, (0,),
                   tuple(T.horizontal.mor_id[(f % 2, p)] for f, p in S.horizontal.mor_labels),
                   tuple(T.vertical.mor_id[lbl] for lbl in S.vertical.mor_labels),
                   tuple(T.sq_id[(f % 2, p)] for f, p in S.sq_labels))
    assert F.failures() == [] and is_cocart_right(F).verdict
    with pytest.raises(err.NonSplitCleavage):
        split_cleavage(F)


def test_left_cart_variant_via_fullop():
    for e in INDEXINGS:
        X = e.value
        G = unstraighten_left_cart(X)
        assert G.target.table_key() == fullop(X.base).table_key()
        assert is_left_cart(G).verdict, e.name
        Y = straighten_left_cart(G)
        assert [K.n_obj for K in Y.obj_cat] == [K.n_obj for K in X.obj_cat], e.name


def test_budget_is_enforced():
    X = next(e.value for e in INDEXINGS if e.name.startswith("Z2 weights"))
    with pytest.raises(err.BudgetExceeded):
        straighten(unstraighten(X), budget=1)


@given(posets(2), posets(2), st.sampled_from([P(1), discrete(2), cyclic_group(2)]))
def test_constant_indexings_round_trip(C, D, K):
    X = constant_indexing(boxtimes(C, D), K)
    assert indexing_failures(X) == []
    F = unstraighten(X)
    assert is_cocart_right(F).verdict
    assert roundtrip_fibration(F).is_iso()
    assert all(f.is_bijective() for f in roundtrip_indexing(X).theta)
