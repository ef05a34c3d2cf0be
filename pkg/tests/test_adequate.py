from __future__ import annotations

import itertools

from hypothesis import given, strategies as st

import oracles
from conftest import posets
from ofsdouble.adequate import (
    adequacy_report, ambigressive_cospans, extensions, involution_check, is_adequate, is_adequate_double,
    pullback_complete, span_category, span_is_nontrivial, span_vs_horop,
)
from ofsdouble.bridge import dclr
from ofsdouble.catalog import COUNTER_OFS, OFS, cospan_poset, is_poset_based, span_poset
from ofsdouble.dblcat import horop
from ofsdouble.fincat import codiscrete, find_isomorphisms, opposite, poset_category, product
from ofsdouble.ofs import FactorizationSystem, all_isos, isos_all, ofs_report, wide_subcategories

P = poset_category


def _poset_ofs(C):
    for E, I in itertools.product(wide_subcategories(C), repeat=2):
        FS = FactorizationSystem(C, E, I)
        if ofs_report(FS).ok:
            yield FS


def test_no_meet_means_no_pullback():
    C = cospan_poset()
    a_c, b_c = C.mor_id[("a", "c")], C.mor_id[("b", "c")]
    assert pullback_complete(C, a_c, b_c) == []
    assert not oracles.poset_pullback_exists(C, a_c, b_c)


def test_pullbacks_in_posets_are_meets():
    for C in (cospan_poset(), span_poset(), product(P(1), P(1)), P(2)):
        for f in range(C.n_mor):
            for g in range(C.n_mor):
                if C.tgt[f] == C.tgt[g]:
                    assert bool(pullback_complete(C, f, g)) == oracles.poset_pullback_exists(C, f, g)


def test_pullbacks_in_a_groupoid_are_all_listed():
    # every cone over id, id in the codiscrete groupoid is a pullback
    C = codiscrete(2)
    assert len(pullback_complete(C, C.ident[0], C.ident[0])) == 2


def test_lattice_with_all_all_is_rejected_by_both_criteria():
    for e in COUNTER_OFS:
        if "adequate" in e.expect:
            rep = adequacy_report(e.value)
            assert rep.by_pullbacks.ok is False and rep.by_extensions.ok is False, e.name


def test_criteria_agree_and_match_brute_force_on_posets():
    for C in (P(1), P(2), product(P(1), P(1)), cospan_poset(), span_poset()):
        for FS in _poset_ofs(C):
            rep = adequacy_report(FS)
            assert rep.agree
            assert rep.ok == oracles.poset_adequate(C, FS.egressive, FS.ingressive)
            assert is_adequate_double(dclr(FS)).ok == rep.ok


def test_catalog_adequacy_criteria_agree():
    for e in OFS:
        assert adequacy_report(e.value).agree, e.name


def test_extensions_on_the_product_square():
    FS = all_isos(product(P(1), P(1)))
    for e, i in ambigressive_cospans(FS):
        assert len(extensions(FS, e, i)) == 1


def test_span_of_all_isos_is_the_opposite_order():
    S = span_category(all_isos(P(2)))
    target = opposite(P(2))
    isos = find_isomorphisms(S.base, target)
    assert len(isos) == 1
    F = isos[0]
    assert {F.mor_map[f] for f in S.egressive} == set(range(target.n_mor))
    assert {F.mor_map[f] for f in S.ingressive} == set(target.identities)
    assert span_is_nontrivial(all_isos(P(2))).ok is False


def test_span_theorems_on_adequate_poset_entries():
    checked = 0
    for e in OFS:
        FS = e.value
        if not (is_poset_based(FS.base) and adequacy_report(FS).ok):
            continue
        span_vs_horop(FS)
        assert involution_check(FS).is_bijective()
        S = span_category(FS)
        assert ofs_report(S).ok and is_adequate(S).ok
        checked += 1
    assert checked >= 10


def test_adequate_double_is_horizontal_opposite_factorization():
    for name in ("product([1],[1])", "(all,isos)[2]"):
        FS = next(e.value for e in OFS if e.name == name)
        D = dclr(FS)
        assert is_adequate_double(D).ok == adequacy_report(FS).ok


@given(posets(3))
def test_span_of_span_is_the_original(C):
    for FS in _poset_ofs(C):
        if adequacy_report(FS).ok:
            assert involution_check(FS).is_bijective()


@given(st.sampled_from([e for e in OFS if e.value.base.n_mor <= 12]))
def test_horop_is_an_involution_on_dclr(entry):
    D = dclr(entry.value)
    assert horop(horop(D)).table_key() == D.table_key()


def test_isos_all_spans_are_the_original_order():
    S = span_category(isos_all(P(2)))
    assert find_isomorphisms(S.base, P(2))


def test_pullbacks_must_be_ambigressive():
    # on [1]x[1] with E = {top edge}: the cospan top edge / right edge has the meet as pullback,
    # but the pulled back horizontal leg is not egressive, so nothing extends the cospan
    C = product(P(1), P(1))
    top = C.mor_id[((0, 1), (1, 1))]
    E = C.identities | {top}
    I = frozenset(range(C.n_mor)) - {top}
    FS = FactorizationSystem(C, E, I)
    assert ofs_report(FS).ok
    rep = adequacy_report(FS)
    assert rep.any_pullback.ok
    assert not rep.by_pullbacks.ok and not rep.by_extensions.ok
    assert rep.by_pullbacks.witness[0] == "pullback is not ambigressive"
    assert not oracles.poset_adequate(C, E, I)
