from __future__ import annotations

import functools
import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import posets
from ofsdouble import errors as err
from ofsdouble.catalog import FIBRATIONS, OFS, sweep_categories, z2_delooping
from ofsdouble.dblcat import boxtimes, identity_dbl_functor
from ofsdouble.fib import (
    compare_fibrations, is_cartesian_edge, is_cartesian_fibration, is_cocart_right, is_cocartesian_edge,
    is_cocartesian_fibration, is_curved_orthofibration, is_ingressive_cartesian, is_left_cart,
    is_left_fibration, is_opgray, is_right_fibration, right_fibration_level, source_lemma_check,
)
from ofsdouble.fincat import (
    Functor, arrow_category, cyclic_group, discrete, enumerate_functors, identity_functor, poset_category, product,
    terminal,
)
from ofsdouble.ofs import OfsMap, enumerate_ofs_maps, identity_ofs_map, isos_all, product_ofs

P = poset_category


def _to_point(C):
    return Functor(C, terminal(), (0,) * C.n_obj, (0,) * C.n_mor)


@functools.cache
def _small_functors() -> tuple:
    cats = [e.value for e in sweep_categories() if e.value.n_mor <= 6]
    return tuple(F for C, D in itertools.product(cats, repeat=2) for F in enumerate_functors(C, D))


def test_identity_is_a_right_fibration():
    for C in (P(2), cyclic_group(3), product(P(1), P(1))):
        assert is_right_fibration(identity_functor(C)).verdict


def test_maps_to_a_point():
    assert not is_right_fibration(_to_point(P(1))).verdict
    assert is_right_fibration(_to_point(discrete(2))).verdict
    # a group is a right fibration over the point only up to iso
    G = cyclic_group(2)
    assert not is_right_fibration(_to_point(G)).verdict
    assert is_right_fibration(_to_point(G), up_to_iso=True).verdict


def test_sieve_inclusions():
    C = P(1)
    at_bottom = Functor(terminal(), C, (0,), (C.ident[0],))
    at_top = Functor(terminal(), C, (1,), (C.ident[1],))
    assert is_right_fibration(at_bottom).verdict
    rep = is_right_fibration(at_top)
    assert not rep.verdict and rep.witnesses[0]["lifts"] == 0
    assert is_left_fibration(at_top).verdict


def _op(F):
    from ofsdouble.fib import opposite_functor
    return opposite_functor(F)


def test_target_projection_of_the_arrow_category():
    C = P(1)
    A = arrow_category(C)
    tgt = Functor(A, C, tuple(C.tgt[C.mor_id[f]] for f in A.obj_labels),
                  tuple(C.mor_id[m[3]] for m in A.mor_labels))
    src = Functor(A, C, tuple(C.src[C.mor_id[f]] for f in A.obj_labels),
                  tuple(C.mor_id[m[2]] for m in A.mor_labels))
    assert is_cartesian_fibration(tgt).verdict == oracles.cocartesian_fibration(_op(tgt)) is True
    assert is_cocartesian_fibration(src).verdict == oracles.cocartesian_fibration(src) is True
    assert not is_right_fibration(tgt).verdict


def test_predicates_match_brute_force():
    for F in _small_functors():
        assert is_right_fibration(F).verdict == oracles.right_fibration(F)
        assert is_cocartesian_fibration(F).verdict == oracles.cocartesian_fibration(F)
        for g in range(F.source.n_mor):
            assert is_cocartesian_edge(F, g) == oracles.cocartesian_edge(F, g)


def test_right_fibrations_are_cartesian_with_every_edge_cartesian():
    for F in _small_functors():
        if is_right_fibration(F).verdict:
            assert is_cartesian_fibration(F).verdict
            assert all(is_cartesian_edge(F, g) for g in range(F.source.n_mor))
            assert is_right_fibration(F, up_to_iso=True).verdict


def test_strict_and_up_to_iso_agree_without_isos():
    for F in _small_functors():
        if not F.source.has_nontrivial_isos():
            assert is_right_fibration(F).verdict == is_right_fibration(F, up_to_iso=True).verdict


def test_levels_agree():
    for F in _small_functors():
        one = right_fibration_level(F, 1).verdict
        assert one == is_right_fibration(F).verdict
        if one:
            assert right_fibration_level(F, 2).verdict


def test_projection_of_a_product_is_a_curved_orthofibration():
    A, B = product_ofs(P(1), P(1)), isos_all(P(1))
    C = A.base
    second = [M for M in enumerate_ofs_maps(A, B)
              if M.underlying.obj_map == tuple(o[1] for o in C.obj_labels)]
    assert len(second) == 1
    M = second[0]
    assert is_curved_orthofibration(M).verdict
    assert is_opgray(M).verdict
    assert is_ingressive_cartesian(M).verdict


def test_comparison_on_catalog_maps():
    small = [e.value for e in OFS if e.value.base.n_mor <= 4]
    total = 0
    for A, B in itertools.product(small, repeat=2):
        for M in enumerate_ofs_maps(A, B):
            for up in (False, True):
                r = compare_fibrations(M, up)
                assert r.curved == r.cocart_right and r.opgray == r.cart_right
                assert r.ingressive_cartesian == r.ingressive_right
            total += 1
    assert total > 30


def test_identity_maps_are_fibrations_of_every_kind():
    for e in OFS[:12]:
        M = identity_ofs_map(e.value)
        r = compare_fibrations(M)
        assert r.curved and r.opgray and r.ingressive_cartesian


def test_catalog_double_fibrations():
    for e in FIBRATIONS:
        assert is_cocart_right(e.value).verdict == e.expect["cocart_right"], e.name


def test_projection_of_free_square_fails_on_columns():
    F = next(e.value for e in FIBRATIONS if e.name == "projection [1]x[1]")
    rep = is_cocart_right(F)
    assert any("level" in w for w in rep.witnesses)


def test_left_cart_of_identity():
    F = identity_dbl_functor(boxtimes(P(1), P(1)))
    assert is_left_cart(F).verdict and is_cocart_right(F).verdict


def test_source_lemma():
    rep = source_lemma_check(identity_dbl_functor(boxtimes(P(1), P(2))))
    assert rep.applicable and rep.columns_right and rep.source_factorization
    # columns of the identity are trivially right fibrations, but the target has two fillers per corner
    rep = source_lemma_check(identity_dbl_functor(z2_delooping()))
    assert not rep.applicable and rep.columns_right and not rep.source_factorization


def test_disagreement_is_raised_for_inconsistent_reports(monkeypatch):
    import ofsdouble.fib as fib
    M = identity_ofs_map(product_ofs(P(1), P(0)))
    monkeypatch.setattr(fib, "is_cocart_right", lambda G, up=False: fib.FibReport(False))
    with pytest.raises(err.Disagreement):
        fib.compare_fibrations(M)


@given(posets(3), posets(2))
def test_projections_from_products_are_cocartesian(C, D):
    Q = product(C, D)
    F = Functor(Q, C, tuple(C.obj_id[o[0]] for o in Q.obj_labels), tuple(C.mor_id[m[0]] for m in Q.mor_labels))
    assert is_cocartesian_fibration(F).verdict and is_cartesian_fibration(F).verdict
    assert is_right_fibration(F).verdict == (D.n_mor == D.n_obj)


@given(st.sampled_from([e for e in OFS if e.value.base.n_obj <= 2]))
def test_ofs_identity_is_an_ofs_map(entry):
    M = identity_ofs_map(entry.value)
    assert isinstance(M, OfsMap) and M.violations() == []
