"""Orthogonal factorization systems on finite categories."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from . import errors as err
from .fincat import (FinCategory, Functor, Verdict, arrow_category, closed_under_composition,
                     enumerate_functors, product)
from .search import meter


@dataclass(frozen=True)
class FactorizationSystem:
    """A category with an egressive and an ingressive class of morphism ids.

    Constructing one checks nothing; :func:`validate_ofs` and :func:`ofs_report`
    decide whether the triple really is a factorization system.
    """

    base: FinCategory
    egressive: frozenset
    ingressive: frozenset

    def __post_init__(self):
        object.__setattr__(self, "egressive", frozenset(self.egressive))
        object.__setattr__(self, "ingressive", frozenset(self.ingressive))

    @cached_property
    def eg_out(self) -> tuple:
        C = self.base
        return tuple(tuple(f for f in C.out_mor[x] if f in self.egressive) for x in range(C.n_obj))

    @cached_property
    def in_in(self) -> tuple:
        C = self.base
        return tuple(tuple(f for f in C.in_mor[x] if f in self.ingressive) for x in range(C.n_obj))

    def factorizations(self, f: int) -> list[tuple[int, int]]:
        """Every ``(e, i)`` with ``i∘e = f``, in lexicographic order."""
        C = self.base
        out = []
        for e in self.eg_out[C.src[f]]:
            for i in C.homset(C.tgt[e], C.tgt[f]):
                if i in self.ingressive and C.comp[(i, e)] == f:
                    out.append((e, i))
        return sorted(out)

    def middle_isos(self, fac1: tuple[int, int], fac2: tuple[int, int]) -> list[int]:
        """Isos ``μ`` between middle objects with ``μ∘e1 = e2`` and ``i2∘μ = i1``."""
        C = self.base
        (e1, i1), (e2, i2) = fac1, fac2
        return [m for m in C.homset(C.tgt[e1], C.tgt[e2])
                if m in C.isos and C.comp[(m, e1)] == e2 and C.comp[(i2, m)] == i1]


def factor(FS: FactorizationSystem, f: int) -> tuple[int, int]:
    facs = FS.factorizations(f)
    if not facs:
        raise err.FactorizationFailure(f"morphism {FS.base.mor_names[f]} has no factorization", (f, 0))
    return facs[0]


# the two criteria

def class_failures(FS: FactorizationSystem) -> list[err.ValidationError]:
    C = FS.base
    found: list[err.ValidationError] = []
    for name, cls in (("egressive", FS.egressive), ("ingressive", FS.ingressive)):
        stray = [f for f in cls if not 0 <= f < C.n_mor]
        if stray:
            found.append(err.NotSubcategory(f"{name} class names unknown morphisms", (name, stray)))
            continue
        missing = sorted(C.isos - cls)
        if missing:
            found.append(err.MissingIso(f"{name} class misses an isomorphism", (name, missing[0])))
        if not closed_under_composition(C, cls):
            for f in sorted(cls):
                bad = [g for g in C.out_mor[C.tgt[f]] if g in cls and C.comp[(g, f)] not in cls]
                if bad:
                    found.append(err.NotSubcategory(
                        f"{name} class not closed under composition", (name, bad[0], f)))
                    break
    return found


def lifting_verdict(FS: FactorizationSystem, budget=None) -> Verdict:
    """Every morphism factors, and every (E, I)-square has exactly one diagonal filler.

    Existence of factorizations is part of the classical definition; unique
    lifting alone accepts e.g. E = I = isos on [1].
    """
    C = FS.base
    m = meter(budget)
    for f in range(C.n_mor):
        m.tick()
        if not FS.factorizations(f):
            return Verdict(False, ("no factorization", f))
    for e in sorted(FS.egressive):
        a, b = C.src[e], C.tgt[e]
        for i in sorted(FS.ingressive):
            c, d = C.src[i], C.tgt[i]
            for u in C.homset(a, c):
                iu = C.comp[(i, u)]
                for v in C.homset(b, d):
                    m.tick()
                    if C.comp[(v, e)] != iu:
                        continue
                    fillers = [k for k in C.homset(b, c)
                               if C.comp[(k, e)] == u and C.comp[(i, k)] == v]
                    if len(fillers) != 1:
                        return Verdict(False, ("square", (e, i, u, v), len(fillers)))
    return Verdict(True)


def factorization_verdict(FS: FactorizationSystem, budget=None) -> Verdict:
    """Composition of factorizations is an equivalence of groupoids onto arrows.

    Essential surjectivity is existence of a factorization (isos can be absorbed
    into the legs). Full faithfulness over an arrow iso ``(α, β): f → g`` reduces,
    by precomposing with ``α`` and postcomposing with ``β⁻¹``, to the case
    ``α = β = id``: any two factorizations of the same ``f`` are joined by exactly
    one middle iso. That reduced form is what is checked.
    """
    C = FS.base
    m = meter(budget)
    for f in range(C.n_mor):
        facs = FS.factorizations(f)
        m.tick(len(facs) ** 2 + 1)
        if not facs:
            return Verdict(False, ("no factorization", f, 0))
        for p in facs:
            for q in facs:
                k = len(FS.middle_isos(p, q))
                if k != 1:
                    return Verdict(False, ("middle isos", f, p, q, k))
    return Verdict(True)


@dataclass
class OfsReport:
    classes: list = field(default_factory=list)
    lifting: Verdict = Verdict(True)
    factorization: Verdict = Verdict(True)

    @property
    def agree(self) -> bool:
        return self.lifting.ok == self.factorization.ok

    @property
    def ok(self) -> bool:
        return not self.classes and self.lifting.ok and self.factorization.ok


def ofs_report(FS: FactorizationSystem, budget=None) -> OfsReport:
    classes = class_failures(FS)
    if classes:
        return OfsReport(classes, Verdict(False, "classes"), Verdict(False, "classes"))
    m = meter(budget)
    return OfsReport([], lifting_verdict(FS, m), factorization_verdict(FS, m))


def validate_ofs(C: FinCategory, E: Iterable[int], I: Iterable[int], budget=None) -> FactorizationSystem:
    FS = FactorizationSystem(C, frozenset(E), frozenset(I))
    report = ofs_report(FS, budget)
    failures: list[err.ValidationError] = list(report.classes)
    if not failures:
        if not report.lifting.ok:
            w = report.lifting.witness
            failures.append(err.LiftingFailure("lifting criterion fails", w))
        if not report.factorization.ok:
            w = report.factorization.witness
            failures.append(err.FactorizationFailure(
                f"factorization criterion fails at morphism {C.mor_names[w[1]]}", w))
        if not report.agree:
            failures.append(err.VerdictDisagreement("the two criteria disagree", (
                report.lifting.witness, report.factorization.witness)))
    err.raise_report(failures)
    return FS


# constructors

def product_ofs(C: FinCategory, D: FinCategory) -> FactorizationSystem:
    """Egressive = (anything, iso), ingressive = (iso, anything)."""
    P = product(C, D)
    E, I = set(), set()
    for k, (f, g) in enumerate(P.mor_labels):
        if D.mor_id[g] in D.isos:
            E.add(k)
        if C.mor_id[f] in C.isos:
            I.add(k)
    return FactorizationSystem(P, frozenset(E), frozenset(I))


def arrow_ofs(C: FinCategory) -> FactorizationSystem:
    """On ``Ar(C)``: egressive squares are invertible on sources, ingressive on targets."""
    A = arrow_category(C)
    E, I = set(), set()
    for k, (_, _, s, t) in enumerate(A.mor_labels):
        if C.mor_id[s] in C.isos:
            E.add(k)
        if C.mor_id[t] in C.isos:
            I.add(k)
    return FactorizationSystem(A, frozenset(E), frozenset(I))


def all_isos(C: FinCategory) -> FactorizationSystem:
    return FactorizationSystem(C, frozenset(range(C.n_mor)), C.isos)


def isos_all(C: FinCategory) -> FactorizationSystem:
    return FactorizationSystem(C, C.isos, frozenset(range(C.n_mor)))


def wide_subcategories(C: FinCategory, budget=None) -> list[frozenset]:
    """All classes containing every iso and closed under composition, sorted."""
    free = [f for f in range(C.n_mor) if f not in C.isos]
    m = meter(budget)
    out = []
    for mask in range(1 << len(free)):
        m.tick()
        cls = C.isos | {f for k, f in enumerate(free) if mask >> k & 1}
        if closed_under_composition(C, cls):
            out.append(frozenset(cls))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# maps

@dataclass(frozen=True)
class OfsMap:
    underlying: Functor
    source: FactorizationSystem
    target: FactorizationSystem

    def violations(self) -> list[err.ValidationError]:
        F = self.underlying
        found: list[err.ValidationError] = []
        for name, a, b in (("egressive", self.source.egressive, self.target.egressive),
                           ("ingressive", self.source.ingressive, self.target.ingressive)):
            for f in sorted(a):
                if F.mor_map[f] not in b:
                    found.append(err.ClassViolation(
                        f"{name} morphism {F.source.mor_names[f]} leaves its class", (name, f)))
                    break
        return found


def validate_ofs_map(F: Functor, source: FactorizationSystem, target: FactorizationSystem) -> OfsMap:
    err.raise_report(F.failures())
    M = OfsMap(F, source, target)
    err.raise_report(M.violations())
    return M


def identity_ofs_map(FS: FactorizationSystem) -> OfsMap:
    C = FS.base
    return OfsMap(Functor(C, C, tuple(range(C.n_obj)), tuple(range(C.n_mor))), FS, FS)


def enumerate_ofs_maps(A: FactorizationSystem, B: FactorizationSystem, budget=None) -> list[OfsMap]:
    maps = [OfsMap(F, A, B) for F in enumerate_functors(A.base, B.base, budget)]
    return [M for M in maps if not M.violations()]
