"""Curated example instances with their expected verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .bridge import ardc, dclr
from .dblcat import DblFunctor, DoubleCategory, boxtimes, delooping
from .fincat import (FinCategory, Functor, NatTrans, arrow_category, codiscrete, compose_functors,
                     cyclic_group, discrete, monoid_category, poset, poset_category, product,
                     symmetric_group)
from .grothendieck import DblIndexing, constant_indexing, unstraighten
from .ofs import FactorizationSystem, all_isos, arrow_ofs, isos_all, product_ofs


@dataclass(frozen=True, eq=False)
class Entry:
    name: str
    build: Callable
    expect: dict = field(default_factory=dict)

    @property
    def value(self):
        return _built(self)


@lru_cache(maxsize=None)
def _built(entry: Entry):
    return entry.build()


# extra categories

def idempotent_monoid() -> FinCategory:
    return monoid_category(["1", "e"], lambda a, b: "e" if "e" in (a, b) else "1", "1")


def retraction_category() -> FinCategory:
    """``s: a → b`` and ``r: b → a`` with ``r∘s = 1`` and ``s∘r`` idempotent."""
    table = {("r", "s"): "1a", ("s", "r"): "e", ("e", "e"): "e", ("e", "s"): "s", ("r", "e"): "r"}

    def compose(g, f):
        if g in ("1a", "1b"):
            return f
        if f in ("1a", "1b"):
            return g
        return table[(g, f)]

    return FinCategory.build(
        ["a", "b"],
        [("1a", "a", "a"), ("1b", "b", "b"), ("s", "a", "b"), ("r", "b", "a"), ("e", "b", "b")],
        lambda o: "1" + o, compose)


def cospan_poset() -> FinCategory:
    """``a → c ← b`` with no meet of ``a`` and ``b``."""
    order = {("a", "c"), ("b", "c")}
    return poset(["a", "b", "c"], lambda x, y: x == y or (x, y) in order)


def span_poset() -> FinCategory:
    order = {("m", "a"), ("m", "b")}
    return poset(["m", "a", "b"], lambda x, y: x == y or (x, y) in order)


def z2_delooping() -> DoubleCategory:
    return delooping([0, 1], lambda a, b: (a + b) % 2, 0)


def s3_delooping() -> DoubleCategory:
    """Double delooping of ``S₃`` with opposite horizontal multiplication: interchange fails."""
    import itertools
    perms = list(itertools.permutations(range(3)))
    mult = lambda a, b: tuple(a[b[i]] for i in range(3))
    return delooping(perms, mult, (0, 1, 2), hmult=lambda a, b: mult(b, a))


CATEGORIES = [
    Entry("[0]", lambda: poset_category(0)),
    Entry("[1]", lambda: poset_category(1)),
    Entry("[2]", lambda: poset_category(2)),
    Entry("[3]", lambda: poset_category(3)),
    Entry("[4]", lambda: poset_category(4)),
    Entry("[1]x[1]", lambda: product(poset_category(1), poset_category(1))),
    Entry("Ar([1])", lambda: arrow_category(poset_category(1))),
    Entry("cospan", cospan_poset),
    Entry("span", span_poset),
    Entry("discrete(2)", lambda: discrete(2)),
    Entry("codiscrete(2)", lambda: codiscrete(2)),
    Entry("Z2", lambda: cyclic_group(2)),
    Entry("Z3", lambda: cyclic_group(3)),
    Entry("S3", lambda: symmetric_group(3)),
    Entry("idempotent", idempotent_monoid),
    Entry("retraction", retraction_category),
]


def category(name: str) -> FinCategory:
    return next(e for e in CATEGORIES if e.name == name).value


def sweep_categories() -> list[Entry]:
    """Categories for the class-pair sweep: at most 3 objects and 12 morphisms."""
    return [e for e in CATEGORIES if e.value.n_obj <= 3 and e.value.n_mor <= 12]


# factorization systems

def _p(n):
    return poset_category(n)


def _ofs(name: str, build: Callable, strict_fillers: bool = True) -> Entry:
    return Entry(name, build, {"ofs": True, "adequate": True, "strict_fillers": strict_fillers})


OFS = [
    *(_ofs(f"product([{m}],[{n}])", lambda m=m, n=n: product_ofs(_p(m), _p(n))) for m in range(3) for n in range(3)),
    _ofs("arrow([1])", lambda: arrow_ofs(_p(1))),
    _ofs("arrow([2])", lambda: arrow_ofs(_p(2))),
    *(_ofs(f"(all,isos)[{n}]", lambda n=n: all_isos(_p(n))) for n in (1, 2, 3)),
    *(_ofs(f"(isos,all)[{n}]", lambda n=n: isos_all(_p(n))) for n in (1, 2)),
    _ofs("(all,isos)span", lambda: all_isos(span_poset())),
    _ofs("(all,isos)cospan", lambda: all_isos(cospan_poset())),
    _ofs("(all,isos)idempotent", lambda: all_isos(idempotent_monoid())),
    _ofs("(isos,all)retraction", lambda: isos_all(retraction_category())),
    # non-identity isos: fillers are unique only up to a middle iso
    _ofs("(all,isos)Z2", lambda: all_isos(cyclic_group(2)), False),
    _ofs("(isos,all)Z2", lambda: isos_all(cyclic_group(2)), False),
    _ofs("product(Z2,[1])", lambda: product_ofs(cyclic_group(2), _p(1)), False),
    _ofs("(all,isos)codiscrete(2)", lambda: all_isos(codiscrete(2)), False),
]

COUNTER_OFS = [
    Entry("(all,all)[1]", lambda: FactorizationSystem(_p(1), frozenset(range(3)), frozenset(range(3))),
          {"ofs": False, "error": "LiftingFailure", "adequate": False}),
    Entry("(all,all)[1]x[1]", lambda: _all_all(product(_p(1), _p(1))),
          {"ofs": False, "error": "LiftingFailure", "adequate": False}),
    Entry("(isos,isos)[1]", lambda: FactorizationSystem(_p(1), frozenset(_p(1).isos), frozenset(_p(1).isos)),
          {"ofs": False, "error": "LiftingFailure"}),
]


def _all_all(C: FinCategory) -> FactorizationSystem:
    return FactorizationSystem(C, frozenset(range(C.n_mor)), frozenset(range(C.n_mor)))


def ofs(name: str) -> FactorizationSystem:
    return next(e for e in OFS + COUNTER_OFS if e.name == name).value


def is_iso_free(FS: FactorizationSystem) -> bool:
    return not FS.base.has_nontrivial_isos()


def is_poset_based(C: FinCategory) -> bool:
    return all(len(C.homset(x, y)) <= 1 for x in range(C.n_obj) for y in range(C.n_obj)) \
        and not C.has_nontrivial_isos()


# double categories

DOUBLES = [
    *(Entry(f"[{m}]x[{n}]", (lambda m=m, n=n: boxtimes(_p(m), _p(n))), {"factorization": True})
      for m in range(3) for n in range(3)),
    Entry("ardc([1])", lambda: ardc(_p(1)), {"factorization": True}),
    Entry("ardc([2])", lambda: ardc(_p(2)), {"factorization": True}),
    *(Entry(f"dclr{e.name}", (lambda e=e: dclr(e.value)), {"factorization": e.expect["strict_fillers"]})
      for e in OFS if e.name.startswith("(")),
    Entry("B(Z2)", z2_delooping, {"factorization": False}),
]

COUNTER_DOUBLES = [
    Entry("B(S3) twisted", s3_delooping, {"error": "InterchangeFailure"}),
]


def double(name: str) -> DoubleCategory:
    return next(e for e in DOUBLES + COUNTER_DOUBLES if e.name == name).value


# indexings

def _identity(K: FinCategory) -> Functor:
    return Functor(K, K, tuple(range(K.n_obj)), tuple(range(K.n_mor)))


def _constant(K: FinCategory, L: FinCategory, y: int) -> Functor:
    return Functor(K, L, (y,) * K.n_obj, (L.ident[y],) * K.n_mor)


def indexing(B: DoubleCategory, cat_of: Callable, h_of: Callable, v_of: Callable, eta_of: Callable) -> DblIndexing:
    """Build an indexing from label-level callbacks.

    ``h_of(label, Kc, Kd)`` and ``v_of(label, Kc', Kc)`` return functors;
    ``eta_of(label, source, target)`` returns components, or ``None`` for identities.
    """
    H, V = B.horizontal, B.vertical
    cats = tuple(cat_of(lbl) for lbl in H.obj_labels)
    hf = tuple(h_of(lbl, cats[H.src[h]], cats[H.tgt[h]]) for h, lbl in enumerate(H.mor_labels))
    vf = tuple(v_of(lbl, cats[V.tgt[v]], cats[V.src[v]]) for v, lbl in enumerate(V.mor_labels))
    nats = []
    for s, lbl in enumerate(B.sq_labels):
        t, b, l, r = B.boundary(s)
        src = compose_functors(hf[t], vf[l])
        tgt = compose_functors(vf[r], hf[b])
        comps = eta_of(lbl, src, tgt)
        if comps is None:
            comps = tuple(src.target.ident[y] for y in src.obj_map)
        nats.append(NatTrans(src, tgt, tuple(comps)))
    return DblIndexing(B, cats, hf, vf, tuple(nats))


def inclusion_indexing() -> DblIndexing:
    """Over ``[1]⊠[0]``: the inclusion of ``[0]`` into ``[1]`` at 0."""
    P0, P1 = _p(0), _p(1)
    return indexing(boxtimes(P1, P0),
                    lambda o: P0 if o[0] == 0 else P1,
                    lambda h, K, L: _identity(K) if K is L else _constant(K, L, 0),
                    lambda v, K, L: _identity(K),
                    lambda s, F, G: None)


def twisted_indexing() -> DblIndexing:
    """Over ``[1]⊠[1]``: the two edges ``[0] → [1]`` pick 0 and 1, joined by the nondegenerate square."""
    P0, P1 = _p(0), _p(1)

    def eta(s, F, G):
        if s == ((0, 1), (0, 1)):
            return (P1.mor_id[(0, 1)],)
        return None

    return indexing(boxtimes(P1, P1),
                    lambda o: P0 if o[0] == 0 else P1,
                    lambda h, K, L: _identity(K) if K is L else _constant(K, L, h[1]),
                    lambda v, K, L: _identity(K),
                    eta)


def _z2_eta(weights: dict) -> Callable:
    Z = cyclic_group(2)
    return lambda s, F, G: (Z.mor_id[weights[s]],) if s in weights else None


def z2_indexing_over_grid(twist: bool) -> DblIndexing:
    """Constant ``Bℤ/2`` over ``[2]⊠[1]``, each nondegenerate square weighted by the generator.

    The composite square must then carry the product of its pieces; ``twist``
    puts the generator there as well so that pasting fails.
    """
    Z = cyclic_group(2)
    w = {((0, 1), (0, 1)): 1, ((1, 2), (0, 1)): 1, ((0, 2), (0, 1)): 1 if twist else 0}
    return indexing(boxtimes(_p(2), _p(1)), lambda o: Z,
                    lambda h, K, L: _identity(K), lambda v, K, L: _identity(K), _z2_eta(w))


def z2_indexing_over_delooping() -> DblIndexing:
    """``Bℤ/2`` over the ℤ/2 delooping, the square ``g`` acting by the generator."""
    Z = cyclic_group(2)
    return indexing(z2_delooping(), lambda o: Z,
                    lambda h, K, L: _identity(K), lambda v, K, L: _identity(K), _z2_eta({1: 1}))


def wrong_eta_indexing() -> DblIndexing:
    """Constant ``[1]`` over ``dclr(product([1],[1]))`` with a mistyped component on the
    nondegenerate square."""
    P1 = _p(1)
    B = dclr(product_ofs(P1, P1))
    C = B.horizontal
    sq = next(s for s in range(B.n_sq) if len({B.top[s], B.bottom[s]}) == 2 and len({B.left[s], B.right[s]}) == 2)
    X = constant_indexing(B, P1)
    bad = NatTrans(X.sq_nat[sq].source, X.sq_nat[sq].target, (P1.mor_id[(0, 1)], P1.mor_id[(1, 1)]))
    assert C.n_obj == 4
    return DblIndexing(B, X.obj_cat, X.h_fun, X.v_fun, X.sq_nat[:sq] + (bad,) + X.sq_nat[sq + 1:])


INDEXINGS = [
    Entry("const [1] over [1]x[1]", lambda: constant_indexing(boxtimes(_p(1), _p(1)), _p(1)), {"valid": True}),
    Entry("const [1] over [0]x[0]", lambda: constant_indexing(boxtimes(_p(0), _p(0)), _p(1)), {"valid": True}),
    Entry("const Z2 over [1]x[0]", lambda: constant_indexing(boxtimes(_p(1), _p(0)), cyclic_group(2)),
          {"valid": True}),
    Entry("const [1] over dclr product([1],[1])",
          lambda: constant_indexing(dclr(product_ofs(_p(1), _p(1))), _p(1)), {"valid": True}),
    Entry("inclusion over [1]x[0]", inclusion_indexing, {"valid": True, "objects": 3}),
    Entry("twisted over [1]x[1]", twisted_indexing, {"valid": True}),
    Entry("Z2 weights over [2]x[1]", lambda: z2_indexing_over_grid(False), {"valid": True}),
    Entry("Z2 over B(Z2)", z2_indexing_over_delooping, {"valid": True}),
]

COUNTER_INDEXINGS = [
    Entry("Z2 twisted weights over [2]x[1]", lambda: z2_indexing_over_grid(True), {"error": "PastingFailure"}),
    Entry("wrong eta over dclr product([1],[1])", wrong_eta_indexing, {"error": "NaturalityFailure"}),
]


def boxtimes_projection(C: FinCategory, D: FinCategory) -> DblFunctor:
    """``C⊠D → C⊠[0]``."""
    S, T = boxtimes(C, D), boxtimes(C, _p(0))
    pt, pid = 0, (0, 0)
    return DblFunctor(S, T,
                      tuple(T.horizontal.obj_id[(c, pt)] for c, _ in S.horizontal.obj_labels),
                      tuple(T.horizontal.mor_id[(f, pt)] for f, _ in S.horizontal.mor_labels),
                      tuple(T.vertical.mor_id[(c, pid)] for c, _ in S.vertical.mor_labels),
                      tuple(T.sq_id[(f, pid)] for f, _ in S.sq_labels))


FIBRATIONS = [
    *(Entry(f"unstraighten {e.name}", (lambda e=e: unstraighten(e.value)), {"cocart_right": True})
      for e in INDEXINGS),
    Entry("projection [1]x discrete(2)", lambda: boxtimes_projection(_p(1), discrete(2)), {"cocart_right": True}),
    Entry("projection [1]x[1]", lambda: boxtimes_projection(_p(1), _p(1)), {"cocart_right": False}),
]
