from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import posets
from ofsdouble import errors as err
from ofsdouble.catalog import COUNTER_OFS, OFS, sweep_categories
from ofsdouble.fincat import cyclic_group, poset_category, product
from ofsdouble.ofs import (
    FactorizationSystem, all_isos, arrow_ofs, enumerate_ofs_maps, factor, identity_ofs_map, isos_all,
    ofs_report, product_ofs, validate_ofs, validate_ofs_map, wide_subcategories,
)


def _triples(C):
    classes = wide_subcategories(C)
    return [FactorizationSystem(C, E, I) for E, I in itertools.product(classes, repeat=2)]


def test_product_ofs_class_sizes():
    FS = product_ofs(poset_category(1), poset_category(1))
    validate_ofs(FS.base, FS.egressive, FS.ingressive)
    assert (FS.base.n_obj, FS.base.n_mor, len(FS.egressive), len(FS.ingressive)) == (4, 9, 6, 6)


def test_arrow_ofs_class_sizes():
    FS = arrow_ofs(poset_category(1))
    validate_ofs(FS.base, FS.egressive, FS.ingressive)
    # squares of [1] invertible at the source, resp. at the target
    assert (len(FS.egressive), len(FS.ingressive), len(FS.egressive & FS.ingressive)) == (4, 4, 3)


def test_catalog_ofs_validate():
    for e in OFS:
        FS = e.value
        assert ofs_report(FS).ok, e.name


def test_counterexamples_are_rejected_with_the_expected_error():
    for e in COUNTER_OFS:
        FS = e.value
        with pytest.raises(err.ValidationError) as info:
            validate_ofs(FS.base, FS.egressive, FS.ingressive)
        assert type(info.value).__name__ == e.expect["error"] or \
            e.expect["error"] in {type(x).__name__ for x in info.value.report}


def test_every_morphism_factors_as_ingressive_after_egressive():
    for e in OFS:
        FS = e.value
        C = FS.base
        for f in range(C.n_mor):
            g, i = factor(FS, f)
            assert g in FS.egressive and i in FS.ingressive and C.comp[(i, g)] == f


def test_verdicts_match_brute_force_on_the_sweep():
    seen = 0
    for entry in sweep_categories():
        C = entry.value
        if C.n_mor > 6:
            continue
        for FS in _triples(C):
            rep = ofs_report(FS)
            E, I = sorted(FS.egressive), sorted(FS.ingressive)
            assert rep.lifting.ok == oracles.is_lifting_ofs(C, E, I), (entry.name, E, I)
            assert rep.factorization.ok == oracles.is_factorization_ofs(C, E, I), (entry.name, E, I)
            seen += 1
    assert seen > 50


def test_trivial_systems_on_groups():
    G = cyclic_group(3)
    for FS in (all_isos(G), isos_all(G)):
        assert ofs_report(FS).ok
    assert not ofs_report(FactorizationSystem(G, G.isos, frozenset())).ok


def test_wide_subcategories_of_a_linear_order():
    # any subset of the three non-identity arrows of [2] that is closed: all but {0→1, 1→2}
    assert len(wide_subcategories(poset_category(2))) == 7
    assert len(wide_subcategories(poset_category(1))) == 2


def test_ofs_map_counts_match_brute_force():
    small = [e.value for e in OFS if e.value.base.n_obj <= 2]
    for A in small:
        for B in small:
            assert len(enumerate_ofs_maps(A, B)) == oracles.ofs_maps(A, B)


def test_class_violation_is_reported():
    A, B = all_isos(poset_category(1)), isos_all(poset_category(1))
    F = identity_ofs_map(A).underlying
    F = type(F)(A.base, B.base, F.obj_map, F.mor_map)
    with pytest.raises(err.ClassViolation):
        validate_ofs_map(F, A, B)


@given(posets(3))
def test_lifting_and_factorization_agree_on_random_posets(C):
    for FS in _triples(C):
        rep = ofs_report(FS)
        assert rep.agree


@given(posets(3), posets(2))
def test_product_ofs_is_always_valid(C, D):
    FS = product_ofs(C, D)
    assert ofs_report(FS).ok
    assert all_isos(C).egressive == frozenset(range(C.n_mor))


@given(st.sampled_from([e for e in OFS if e.value.base.n_mor <= 12]))
def test_identity_is_an_ofs_map(entry):
    FS = entry.value
    assert identity_ofs_map(FS).violations() == []


def test_product_of_linear_orders_matches_all_isos_on_one_factor():
    # [m] x [0] has no ingressive non-identity maps
    FS = product_ofs(poset_category(2), poset_category(0))
    assert FS.ingressive == FS.base.identities
    assert len(FS.egressive) == product(poset_category(2), poset_category(0)).n_mor
