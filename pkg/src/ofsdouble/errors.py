"""Exception hierarchy.

Every validation error carries a ``witness`` (the offending ids) and, when raised
by a validator that collects all failures, a ``report`` listing every failure
found, not just the first one.
"""
from __future__ import annotations


class WorkbenchError(Exception):
    code = "error"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.code)
        self.witness = witness
        self.report: list[WorkbenchError] = []

    def to_json(self):
        return {"error": self.code, "message": str(self), "witness": _jsonable(self.witness)}


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted((_jsonable(v) for v in value), key=repr)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return repr(value)


class BudgetExceeded(WorkbenchError):
    code = "BudgetExceeded"

    def __init__(self, estimate: int, limit: int):
        super().__init__(f"search exceeded budget: {estimate} > {limit} candidate checks",
                         (estimate, limit))
        self.estimate = estimate
        self.limit = limit


class ParseError(WorkbenchError):
    code = "ParseError"

    def __init__(self, message: str, line: int | None = None, path: tuple = ()):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where, line)
        self.line = line
        self.path = path  # keys and indices into the raw document


class ValidationError(WorkbenchError):
    code = "ValidationError"


# fincat

class MissingIdentity(ValidationError):
    code = "MissingIdentity"


class NonComposablePairInTable(ValidationError):
    code = "NonComposablePairInTable"


class MissingComposite(ValidationError):
    code = "MissingComposite"


class CompositeBoundaryMismatch(ValidationError):
    code = "CompositeBoundaryMismatch"


class AssociativityFailure(ValidationError):
    code = "AssociativityFailure"


class UnitFailure(ValidationError):
    code = "UnitFailure"


class FunctorFailure(ValidationError):
    code = "FunctorFailure"


class NaturalityFailure(ValidationError):
    code = "NaturalityFailure"


# ofs

class NotSubcategory(ValidationError):
    code = "NotSubcategory"


class MissingIso(ValidationError):
    code = "MissingIso"


class LiftingFailure(ValidationError):
    code = "LiftingFailure"


class FactorizationFailure(ValidationError):
    code = "FactorizationFailure"


class ClassViolation(ValidationError):
    code = "ClassViolation"


# dblcat

class BoundaryMismatch(ValidationError):
    code = "BoundaryMismatch"


class InterchangeFailure(ValidationError):
    code = "InterchangeFailure"


class SegalFailure(ValidationError):
    code = "SegalFailure"


class NonAssociativeExtraction(ValidationError):
    code = "NonAssociativeExtraction"


class SimplicialIdentityFailure(ValidationError):
    code = "SimplicialIdentityFailure"


# bridge

class NotFactorizationDouble(ValidationError):
    code = "NotFactorizationDouble"


class ComparisonNotBijective(ValidationError):
    code = "ComparisonNotBijective"


class FiberNotSingleOrbit(ValidationError):
    code = "FiberNotSingleOrbit"


class CountMismatch(ValidationError):
    code = "CountMismatch"


# adequate

class VerdictDisagreement(ValidationError):
    code = "VerdictDisagreement"


class NonUniquePullback(ValidationError):
    code = "NonUniquePullback"


class Mismatch(ValidationError):
    code = "Mismatch"


# fib

class Disagreement(ValidationError):
    code = "Disagreement"


class IndexingError(ValidationError):
    code = "IndexingError"


class PastingFailure(IndexingError):
    code = "PastingFailure"


class NonSplitCleavage(ValidationError):
    code = "NonSplitCleavage"


def raise_report(failures: list[WorkbenchError]) -> None:
    """Raise the first failure with the full list attached."""
    if failures:
        first = failures[0]
        first.report = list(failures)
        raise first
