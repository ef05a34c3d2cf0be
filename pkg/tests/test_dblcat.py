from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import posets
from ofsdouble import errors as err
from ofsdouble.catalog import COUNTER_DOUBLES, DOUBLES, s3_delooping, z2_delooping
from ofsdouble.dblcat import (
    bisim_to_double, boxtimes, column_category, delooping, double_to_bisim, double_to_raw,
    enumerate_dbl_functors, find_dbl_isomorphisms, fullop, grid, hface, horop, identity_dbl_functor,
    is_2category, is_factorization_double, parse_double, rezk_bisim, swap, vface, verop,
)
from ofsdouble.fincat import cyclic_group, poset_category

P = poset_category

# frozen from the brute-force tiling count of [1]⊠[1]; row-major in (m, n) for m, n ≤ 2
GRID_COUNTS_1X1 = [4, 6, 8, 6, 9, 12, 8, 12, 16]


def test_catalog_doubles_validate():
    for e in DOUBLES:
        assert e.value.failures() == [], e.name


def test_boxtimes_cell_counts():
    D = boxtimes(P(1), P(1))
    assert (D.n_obj, D.horizontal.n_mor, D.vertical.n_mor, D.n_sq) == (4, 6, 6, 9)


def test_grid_counts_match_tilings():
    D = boxtimes(P(1), P(1))
    counts = [len(grid(D, m, n)) for m in range(3) for n in range(3)]
    assert counts == [oracles.tilings(D, m, n) for m in range(3) for n in range(3)]
    assert counts == GRID_COUNTS_1X1


def test_grid_counts_on_a_delooping():
    D = z2_delooping()
    for m in range(3):
        for n in range(3):
            assert len(grid(D, m, n)) == oracles.tilings(D, m, n)


def test_boxtimes_grids_are_products_of_monotone_counts():
    for a in range(3):
        for b in range(3):
            D = boxtimes(P(a), P(b))
            for k in range(3):
                for l in range(3):
                    assert len(grid(D, k, l)) == oracles.monotone_count(k, a) * oracles.monotone_count(l, b)


def test_interchange_failure_on_twisted_delooping():
    with pytest.raises(err.InterchangeFailure):
        s3_delooping().validate()
    for e in COUNTER_DOUBLES:
        with pytest.raises(err.ValidationError):
            e.value.validate()


def test_commutative_delooping_is_valid_but_not_a_factorization_double():
    D = z2_delooping().validate()
    v = is_factorization_double(D)
    assert not v.ok and len(v.witness["fillers"]) == 2
    assert is_2category(D)


def test_boxtimes_is_a_factorization_double():
    for a in range(3):
        for b in range(3):
            assert is_factorization_double(boxtimes(P(a), P(b))).ok


def test_double_functor_counts_match_brute_force():
    sources = [boxtimes(P(0), P(0)), boxtimes(P(1), P(0)), boxtimes(P(0), P(1)), boxtimes(P(1), P(1))]
    targets = [boxtimes(P(1), P(1)), z2_delooping()]
    for S in sources:
        for T in targets:
            assert len(enumerate_dbl_functors(S, T)) == oracles.double_functors(S, T)


def test_free_square_represents_squares():
    # a double functor out of [1]⊠[1] is a choice of square
    S = boxtimes(P(1), P(1))
    for e in DOUBLES[:9]:
        assert len(enumerate_dbl_functors(S, e.value)) == e.value.n_sq


def test_automorphisms_of_the_free_square():
    D = boxtimes(P(1), P(1))
    assert len(find_dbl_isomorphisms(D, D)) == 1
    assert len(find_dbl_isomorphisms(D, swap(D))) == 1


def test_bisimplicial_round_trip():
    for a, b in ((1, 1), (2, 1), (0, 2)):
        D = boxtimes(P(a), P(b))
        E = bisim_to_double(rezk_bisim(P(a), P(b)))
        assert find_dbl_isomorphisms(E, D)
        again = bisim_to_double(double_to_bisim(D))
        assert again.n_sq == D.n_sq and find_dbl_isomorphisms(again, D)


def test_faces_of_a_two_by_two_grid():
    D = boxtimes(P(2), P(2))
    for cell in grid(D, 2, 2):
        for i in range(3):
            for j in range(3):
                a = vface(D, hface(D, cell, 2, 2, i), 1, 2, j)
                b = hface(D, vface(D, cell, 2, 2, j), 2, 1, i)
                assert a == b


def test_column_category_of_free_square():
    D = boxtimes(P(1), P(1))
    K0 = column_category(D, 0).validate()
    K1 = column_category(D, 1).validate()
    assert (K0.n_obj, K0.n_mor) == (4, 6)
    assert (K1.n_obj, K1.n_mor) == (6, 9)


def test_parse_round_trip():
    for e in DOUBLES:
        D = e.value
        assert parse_double(double_to_raw(D)).validate().table_key() == D.table_key()


def test_parse_rejects_bad_square_boundary():
    raw = double_to_raw(boxtimes(P(1), P(0)))
    raw["squares"][0]["top"] = 99
    with pytest.raises(err.ParseError):
        parse_double(raw)


def test_deloopings_of_abelian_groups_validate():
    for n in (2, 3, 4):
        D = delooping(range(n), lambda a, b, n=n: (a + b) % n, 0).validate()
        assert D.n_sq == n


@given(posets(3), posets(2))
def test_boxtimes_of_random_posets(C, D):
    B = boxtimes(C, D)
    assert B.failures() == []
    assert B.n_sq == C.n_mor * D.n_mor
    assert is_factorization_double(B).ok


@given(st.sampled_from(DOUBLES))
def test_opposites_are_involutions(entry):
    D = entry.value
    for op in (horop, verop, swap, fullop):
        assert op(op(D)).table_key() == D.table_key()
        assert op(D).failures() == []


@given(st.sampled_from(DOUBLES[:9]))
def test_identity_double_functor_is_an_iso(entry):
    F = identity_dbl_functor(entry.value)
    assert F.failures() == [] and F.is_iso()


def test_cyclic_group_delooping_fillers():
    D = delooping(range(3), lambda a, b: (a + b) % 3, 0)
    assert len(is_factorization_double(D).witness["fillers"]) == 3
    assert cyclic_group(3).n_mor == 3
