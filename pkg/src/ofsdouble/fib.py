"""Fibration predicates for functors, maps of factorization systems and double functors."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import errors as err
from .dblcat import DblFunctor, dual_functor, fullop, is_factorization_double
from .fincat import Functor, nerve_chains, opposite, restrict
from .ofs import OfsMap


@dataclass
class FibReport:
    verdict: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict


def _report(witnesses: list) -> FibReport:
    return FibReport(not witnesses, witnesses)


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite(F.source), opposite(F.target), F.obj_map, F.mor_map)


# discrete fibrations

def is_right_fibration(F: Functor, up_to_iso: bool = False) -> FibReport:
    """``g ↦ (F g, tgt g)`` is a bijection onto arrows of the base with a chosen lift of their target.

    With ``up_to_iso`` lifts need only exist and every morphism must be
    cartesian, so fibers may be groupoids rather than sets. The two notions agree
    when the source has no non-identity isos.
    """
    if up_to_iso:
        return _right_up_to_iso(F)
    D, C = F.source, F.target
    count: dict = {}
    for g in range(D.n_mor):
        key = (F.mor_map[g], D.tgt[g])
        count[key] = count.get(key, 0) + 1
    witnesses = []
    for d in range(D.n_obj):
        for f in C.in_mor[F.obj_map[d]]:
            k = count.get((f, d), 0)
            if k != 1:
                witnesses.append({"morphism": f, "over": d, "lifts": k})
    return _report(witnesses)


def _right_up_to_iso(F: Functor) -> FibReport:
    D, C = F.source, F.target
    witnesses = []
    for d in range(D.n_obj):
        lifted = {F.mor_map[g] for g in D.in_mor[d]}
        for f in C.in_mor[F.obj_map[d]]:
            if f not in lifted:
                witnesses.append({"morphism": f, "over": d, "lifts": 0})
    for g in range(D.n_mor):
        if not is_cartesian_edge(F, g):
            witnesses.append({"morphism": g, "defect": "not cartesian"})
    return _report(witnesses)


def is_left_fibration(F: Functor, up_to_iso: bool = False) -> FibReport:
    return is_right_fibration(opposite_functor(F), up_to_iso)


def right_fibration_level(F: Functor, n: int) -> FibReport:
    """``n``-chains of the source against ``n``-chains of the base with a lift of their last vertex."""
    D, C = F.source, F.target
    last = lambda ch, cat: ch[0] if n == 0 else cat.tgt[ch[-1]]
    count: dict = {}
    for ch in nerve_chains(D, n):
        image = (F.obj_map[ch[0]],) if n == 0 else tuple(F.mor_map[g] for g in ch)
        key = (image, last(ch, D))
        count[key] = count.get(key, 0) + 1
    witnesses = []
    for ch in nerve_chains(C, n):
        for d in range(D.n_obj):
            if F.obj_map[d] == last(ch, C):
                k = count.get((ch, d), 0)
                if k != 1:
                    witnesses.append({"chain": ch, "over": d, "lifts": k})
    return _report(witnesses)


# (co)cartesian fibrations

def is_cocartesian_edge(F: Functor, g: int) -> bool:
    D, C = F.source, F.target
    d, d1 = D.src[g], D.tgt[g]
    Fg = F.mor_map[g]
    for h in D.out_mor[d]:
        d2 = D.tgt[h]
        for k in C.homset(F.obj_map[d1], F.obj_map[d2]):
            if C.comp[(k, Fg)] != F.mor_map[h]:
                continue
            fillers = [l for l in D.homset(d1, d2) if F.mor_map[l] == k and D.comp[(l, g)] == h]
            if len(fillers) != 1:
                return False
    return True


def is_cartesian_edge(F: Functor, g: int) -> bool:
    return is_cocartesian_edge(opposite_functor(F), g)


def cocartesian_lifts(F: Functor, f: int, d: int) -> list[int]:
    D = F.source
    return [g for g in D.out_mor[d] if F.mor_map[g] == f and is_cocartesian_edge(F, g)]


def is_cocartesian_fibration(F: Functor) -> FibReport:
    D, C = F.source, F.target
    witnesses = []
    for d in range(D.n_obj):
        for f in C.out_mor[F.obj_map[d]]:
            if not cocartesian_lifts(F, f, d):
                witnesses.append({"morphism": f, "at": d, "defect": "no cocartesian lift"})
    return _report(witnesses)


def is_cartesian_fibration(F: Functor) -> FibReport:
    return is_cocartesian_fibration(opposite_functor(F))


# maps of factorization systems

def egressive_part(M: OfsMap) -> Functor:
    return restrict(M.underlying, M.source.egressive, M.target.egressive)


def ingressive_part(M: OfsMap) -> Functor:
    return restrict(M.underlying, M.source.ingressive, M.target.ingressive)


def is_ingressive_cartesian(M: OfsMap) -> FibReport:
    """Ingressives have cartesian lifts at every object over their target, and the
    ingressive class upstairs is exactly the cartesian lifts of ingressives."""
    F = M.underlying
    D, C = F.source, F.target
    witnesses = []
    cartesian = {g for g in range(D.n_mor) if is_cartesian_edge(F, g)}
    for d in range(D.n_obj):
        for i in C.in_mor[F.obj_map[d]]:
            if i in M.target.ingressive and not any(F.mor_map[g] == i for g in D.in_mor[d] if g in cartesian):
                witnesses.append({"morphism": i, "at": d, "defect": "no cartesian lift"})
    lifts = {g for g in cartesian if F.mor_map[g] in M.target.ingressive}
    for g in sorted(lifts ^ M.source.ingressive):
        defect = "ingressive but not a cartesian lift" if g in M.source.ingressive else "cartesian lift not ingressive"
        witnesses.append({"morphism": g, "defect": defect})
    return _report(witnesses)


def _ingressive_right(M: OfsMap, up_to_iso: bool) -> list:
    return [{"class": "ingressive", **w} for w in is_right_fibration(ingressive_part(M), up_to_iso).witnesses]


def is_curved_orthofibration(M: OfsMap, up_to_iso: bool = False) -> FibReport:
    """Egressive part cocartesian, ingressive part a right fibration.

    By the ingressive-cartesian criterion the second half is the same as asking
    for ingressive cartesian lifts that make up exactly the ingressive class;
    ``compare_fibrations`` checks that equivalence separately.
    """
    w = [{"class": "egressive", **x} for x in is_cocartesian_fibration(egressive_part(M)).witnesses]
    return _report(w + _ingressive_right(M, up_to_iso))


def is_opgray(M: OfsMap, up_to_iso: bool = False) -> FibReport:
    w = [{"class": "egressive", **x} for x in is_cartesian_fibration(egressive_part(M)).witnesses]
    return _report(w + _ingressive_right(M, up_to_iso))


# double functors

LEVELS = (0, 1, 2)


def _columns_right(F: DblFunctor, up_to_iso: bool) -> list:
    witnesses = []
    for n in LEVELS:
        for w in is_right_fibration(F.column_functor(n), up_to_iso).witnesses:
            witnesses.append({"level": n, **w})
    return witnesses


def is_cocart_right(F: DblFunctor, up_to_iso: bool = False) -> FibReport:
    return _report(is_cocartesian_fibration(F.horizontal).witnesses + _columns_right(F, up_to_iso))


def is_cart_right(F: DblFunctor, up_to_iso: bool = False) -> FibReport:
    return _report(is_cartesian_fibration(F.horizontal).witnesses + _columns_right(F, up_to_iso))


def is_left_cart(F: DblFunctor, up_to_iso: bool = False) -> FibReport:
    return is_cocart_right(dual_functor(F, fullop), up_to_iso)


# comparisons

@dataclass
class ComparisonReport:
    curved: bool
    cocart_right: bool
    opgray: bool
    cart_right: bool
    ingressive_cartesian: bool
    ingressive_right: bool


def compare_fibrations(M: OfsMap, up_to_iso: bool = False) -> ComparisonReport:
    """Both fibration comparisons, plus the ingressive-cartesian criterion.

    The criterion is always checked against right fibrations up to iso, which is
    the notion it is about; ``up_to_iso`` selects the notion used in the comparisons.
    """
    from .bridge import dclr_map
    G = dclr_map(M)
    r = ComparisonReport(
        bool(is_curved_orthofibration(M, up_to_iso)), bool(is_cocart_right(G, up_to_iso)),
        bool(is_opgray(M, up_to_iso)), bool(is_cart_right(G, up_to_iso)),
        bool(is_ingressive_cartesian(M)), bool(is_right_fibration(ingressive_part(M), up_to_iso=True)),
    )
    if r.curved != r.cocart_right or r.opgray != r.cart_right or r.ingressive_cartesian != r.ingressive_right:
        raise err.Disagreement("fibration notions disagree", r.__dict__)
    return r


@dataclass
class SourceLemmaReport:
    applicable: bool      # F(0, −) right fibration and the target a factorization double
    columns_right: bool   # F(1, −) and F(2, −) right fibrations
    source_factorization: bool


def source_lemma_check(F: DblFunctor) -> SourceLemmaReport:
    """Higher column functors are right fibrations iff the source has unique fillers.

    The cancellation argument behind this needs the columns of the target to be
    right fibrations over its vertical category, i.e. the target must itself be a
    factorization double category; otherwise the check is reported as not applicable.
    """
    base = bool(is_right_fibration(F.column_functor(0)))
    applicable = base and bool(is_factorization_double(F.target))
    cols = all(is_right_fibration(F.column_functor(n)) for n in (1, 2))
    src = bool(is_factorization_double(F.source))
    report = SourceLemmaReport(applicable, cols, src)
    if applicable and cols != src:
        raise err.Disagreement("column right fibrations disagree with unique fillers in the source",
                               report.__dict__)
    return report
