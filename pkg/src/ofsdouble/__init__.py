"""Finite factorization systems, double categories and the correspondence between them."""
from __future__ import annotations

from .adequate import adequacy_report, is_adequate, span_category
from .bridge import ardc, corners, counit_iso, dclr, unit_iso
from .dblcat import DblFunctor, DoubleCategory, boxtimes, is_factorization_double
from .errors import BudgetExceeded, ParseError, ValidationError, WorkbenchError
from .fib import compare_fibrations, is_cocart_right, is_right_fibration
from .fincat import FinCategory, Functor, NatTrans, poset_category
from .grothendieck import DblIndexing, straighten, unstraighten
from .ofs import FactorizationSystem, OfsMap, validate_ofs

__all__ = [
    "BudgetExceeded", "DblFunctor", "DblIndexing", "DoubleCategory", "FactorizationSystem", "FinCategory",
    "Functor", "NatTrans", "OfsMap", "ParseError", "ValidationError", "WorkbenchError", "adequacy_report",
    "ardc", "boxtimes", "compare_fibrations", "corners", "counit_iso", "dclr", "is_adequate",
    "is_cocart_right", "is_factorization_double", "is_right_fibration", "poset_category", "span_category",
    "straighten", "unit_iso", "unstraighten", "validate_ofs",
]
