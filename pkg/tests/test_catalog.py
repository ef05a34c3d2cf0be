from __future__ import annotations

from ofsdouble import catalog as cat
from ofsdouble.bridge import dclr
from ofsdouble.dblcat import is_factorization_double
from ofsdouble.fib import is_cocart_right
from ofsdouble.grothendieck import indexing_failures
from ofsdouble.ofs import ofs_report


def test_names_are_unique():
    for pool in (cat.CATEGORIES, cat.OFS + cat.COUNTER_OFS, cat.DOUBLES + cat.COUNTER_DOUBLES,
                 cat.INDEXINGS + cat.COUNTER_INDEXINGS, cat.FIBRATIONS):
        names = [e.name for e in pool]
        assert len(names) == len(set(names))


def test_expectations_hold():
    for e in cat.OFS:
        assert ofs_report(e.value).ok
        assert is_factorization_double(dclr(e.value)).ok == e.expect["strict_fillers"], e.name
        assert cat.is_iso_free(e.value) == (not e.value.base.has_nontrivial_isos())
    for e in cat.DOUBLES:
        assert is_factorization_double(e.value).ok == e.expect["factorization"], e.name
    for e in cat.INDEXINGS:
        assert indexing_failures(e.value) == [], e.name
    for e in cat.FIBRATIONS:
        assert bool(is_cocart_right(e.value)) == e.expect["cocart_right"], e.name


def test_strict_fillers_exactly_when_iso_free():
    for e in cat.OFS:
        assert e.expect["strict_fillers"] == cat.is_iso_free(e.value), e.name


def test_sweep_is_small():
    for e in cat.sweep_categories():
        assert e.value.n_obj <= 3 and e.value.n_mor <= 12


def test_values_are_cached():
    e = cat.OFS[0]
    assert e.value is e.value


def test_poset_based():
    assert cat.is_poset_based(cat.cospan_poset())
    assert not cat.is_poset_based(cat.CATEGORIES[-1].value) or cat.CATEGORIES[-1].value.n_obj > 1
