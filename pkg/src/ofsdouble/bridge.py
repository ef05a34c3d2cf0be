"""Passing between factorization systems and factorization double categories."""
from __future__ import annotations

from dataclasses import dataclass

from . import errors as err
from .dblcat import (DblFunctor, DoubleCategory, boxtimes, enumerate_dbl_functors,
                     is_factorization_double)
from .fincat import FinCategory, Functor, Verdict, nerve_chains, poset_category, subcategory
from .ofs import FactorizationSystem, OfsMap, arrow_ofs, enumerate_ofs_maps, product_ofs


def commuting_squares(FS: FactorizationSystem) -> list[tuple[int, int, int, int]]:
    """``(top, bottom, left, right)`` in ids of the base with ``right∘top = bottom∘left``."""
    C = FS.base
    out = []
    for t in sorted(FS.egressive):
        for l in C.out_mor[C.src[t]]:
            if l not in FS.ingressive:
                continue
            for r in C.out_mor[C.tgt[t]]:
                if r not in FS.ingressive:
                    continue
                rt = C.comp[(r, t)]
                for b in C.homset(C.tgt[l], C.tgt[r]):
                    if b in FS.egressive and C.comp[(b, l)] == rt:
                        out.append((t, b, l, r))
    return sorted(out)


def dclr(FS: FactorizationSystem) -> DoubleCategory:
    """Egressive morphisms horizontally, ingressive ones vertically, commuting squares."""
    C = FS.base
    H = subcategory(C, FS.egressive)
    V = subcategory(C, FS.ingressive)
    L, N = C.mor_labels, C.mor_names
    squares = [(tuple(L[k] for k in sq),) + tuple(L[k] for k in sq) for sq in commuting_squares(FS)]
    names = ["[" + "|".join(N[C.mor_id[k]] for k in sq[0]) + "]" for sq in squares]

    def comp(g, f):
        return L[C.comp[(C.mor_id[g], C.mor_id[f])]]

    def ident(f, side):
        i = C.mor_id[f]
        return L[C.ident[C.src[i] if side == 0 else C.tgt[i]]]

    return DoubleCategory.build(
        H, V, squares,
        lambda s2, s1: (comp(s2[0], s1[0]), comp(s2[1], s1[1]), s1[2], s2[3]),
        lambda lo, up: (up[0], lo[1], comp(lo[2], up[2]), comp(lo[3], up[3])),
        lambda v: (ident(v, 0), ident(v, 1), v, v),
        lambda h: (h, h, ident(h, 0), ident(h, 1)),
        sq_names=names,
    )


def dclr_map(M: OfsMap) -> DblFunctor:
    S, T = dclr(M.source), dclr(M.target)
    F = M.underlying
    C, D = F.source, F.target
    image = lambda lbl: D.mor_labels[F.mor_map[C.mor_id[lbl]]]
    return DblFunctor(
        S, T, F.obj_map,
        tuple(T.horizontal.mor_id[image(lbl)] for lbl in S.horizontal.mor_labels),
        tuple(T.vertical.mor_id[image(lbl)] for lbl in S.vertical.mor_labels),
        tuple(T.sq_id[tuple(image(x) for x in lbl)] for lbl in S.sq_labels),
    )


def ardc(C: FinCategory) -> DoubleCategory:
    return dclr(arrow_ofs(C))


# corners

def fill_corner(D: DoubleCategory, v: int, h: int) -> int:
    fillers = D.by_corner.get((v, h), ())
    if len(fillers) != 1:
        raise err.NotFactorizationDouble(
            f"corner (left {v}, bottom {h}) has {len(fillers)} fillers",
            {"left": v, "bottom": h, "fillers": list(fillers)})
    return fillers[0]


def corners(D: DoubleCategory) -> FactorizationSystem:
    """Morphisms are pairs ``(h, v)`` (``h`` first), composed through unique fillers."""
    verdict = is_factorization_double(D)
    if not verdict:
        raise err.NotFactorizationDouble("not a factorization double category", verdict.witness)
    H, V = D.horizontal, D.vertical
    pairs = [(h, v) for h in range(H.n_mor) for v in V.out_mor[H.tgt[h]]]
    mors = [((h, v), H.obj_labels[H.src[h]], H.obj_labels[V.tgt[v]]) for h, v in pairs]
    names = [f"({H.mor_names[h]},{V.mor_names[v]})" for h, v in pairs]

    def compose(g, f):
        (h2, v2), (h1, v1) = g, f
        s = fill_corner(D, v1, h2)
        return (H.comp[(D.top[s], h1)], V.comp[(v2, D.right[s])])

    def identity(o):
        x = H.obj_id[o]
        return (H.ident[x], V.ident[x])

    K = FinCategory.build(H.obj_labels, mors, identity, compose,
                          obj_names=H.obj_names, mor_names=names)
    err.raise_report(K.failures())
    E = frozenset(k for k, (h, v) in enumerate(K.mor_labels) if V.is_identity(v))
    I = frozenset(k for k, (h, v) in enumerate(K.mor_labels) if H.is_identity(h))
    return FactorizationSystem(K, E, I)


# comparisons

def counit_iso(D: DoubleCategory) -> DblFunctor:
    """The comparison ``D → dclr(corners(D))``, checked to be a strict isomorphism."""
    K = corners(D)
    T = dclr(K)
    H, V = D.horizontal, D.vertical
    C = K.base
    h_img = [T.horizontal.mor_id[C.mor_labels[C.mor_id[(h, V.ident[H.tgt[h]])]]] for h in range(H.n_mor)]
    v_img = [T.vertical.mor_id[C.mor_labels[C.mor_id[(H.ident[V.src[v]], v)]]] for v in range(V.n_mor)]
    sq_img = []
    for s in range(D.n_sq):
        found = T.by_boundary.get((h_img[D.top[s]], h_img[D.bottom[s]], v_img[D.left[s]], v_img[D.right[s]]), ())
        if len(found) != 1:
            raise err.ComparisonNotBijective("square has no unique image", ("squares", s))
        sq_img.append(found[0])
    F = DblFunctor(D, T, tuple(range(D.n_obj)), tuple(h_img), tuple(v_img), tuple(sq_img))
    for layer, mp, n in (("hmors", h_img, T.horizontal.n_mor), ("vmors", v_img, T.vertical.n_mor),
                         ("squares", sq_img, T.n_sq)):
        if sorted(mp) != list(range(n)):
            missing = sorted(set(range(n)) - set(mp))
            raise err.ComparisonNotBijective(f"comparison is not bijective on {layer}", (layer, missing))
    err.raise_report(F.failures())
    return F


def filler_verdict(FS: FactorizationSystem) -> Verdict:
    """Corner fillers of ``dclr(FS)`` are unique up to exactly one middle iso.

    With only identity isos this is the strict one-filler condition; otherwise the
    fillers of a corner are the factorizations of its composite, permuted by the
    automorphisms of the middle object.
    """
    D = dclr(FS)
    C = FS.base
    H, V = D.horizontal, D.vertical
    for v in range(V.n_mor):
        for h in H.out_mor[V.tgt[v]]:
            fillers = D.by_corner.get((v, h), ())
            legs = [(C.mor_id[H.mor_labels[D.top[s]]], C.mor_id[V.mor_labels[D.right[s]]]) for s in fillers]
            if not legs or any(len(FS.middle_isos(legs[0], q)) != 1 for q in legs):
                return Verdict(False, {"left": v, "bottom": h, "fillers": list(fillers)})
    return Verdict(True)


@dataclass
class UnitReport:
    pairs: list                  # composable (e, i) in ids of the base
    orbits: dict                 # base morphism ↦ indices into ``pairs`` over it
    quotient: FactorizationSystem
    iso: Functor                 # quotient → base, induced by (e, i) ↦ i∘e
    on_the_nose: bool            # strict corners exist and project bijectively


def unit_iso(FS: FactorizationSystem) -> UnitReport:
    """Corners of ``dclr(FS)`` modulo middle isos, compared with the base.

    Composition of orbits is computed from every representative and every filler
    and must not depend on either choice.
    """
    C = FS.base
    pairs = [(e, i) for e in sorted(FS.egressive) for i in sorted(FS.ingressive) if C.src[i] == C.tgt[e]]
    orbits: dict = {f: [] for f in range(C.n_mor)}
    for k, (e, i) in enumerate(pairs):
        orbits[C.comp[(i, e)]].append(k)
    for f, fiber in orbits.items():
        if not fiber:
            raise err.FiberNotSingleOrbit(f"no corner lies over {C.mor_names[f]}", (f, 0))
        strays = [k for k in fiber if len(FS.middle_isos(pairs[fiber[0]], pairs[k])) != 1]
        if strays:
            raise err.FiberNotSingleOrbit(f"corners over {C.mor_names[f]} form several orbits",
                                          (f, 1 + len(strays)))
    orbit_of = {k: f for f, fiber in orbits.items() for k in fiber}
    index = {p: k for k, p in enumerate(pairs)}

    # filler-based composition: (e2, i2)∘(e1, i1) via fillers (t, r) of the corner (i1, e2)
    for k1, (e1, i1) in enumerate(pairs):
        for k2, (e2, i2) in enumerate(pairs):
            if C.src[e2] != C.tgt[i1]:
                continue
            results = {orbit_of[index[(C.comp[(t, e1)], C.comp[(i2, r)])]]
                       for t, r in FS.factorizations(C.comp[(e2, i1)])}
            if results != {C.comp[(orbit_of[k2], orbit_of[k1])]}:
                raise err.FiberNotSingleOrbit("filler composition is not well defined on orbits",
                                              (pairs[k1], pairs[k2], sorted(results)))

    rep = {f: pairs[fiber[0]] for f, fiber in orbits.items()}
    N = C.mor_names
    Q = FinCategory.build(
        C.obj_labels,
        [(rep[f], C.obj_labels[C.src[f]], C.obj_labels[C.tgt[f]]) for f in range(C.n_mor)],
        lambda o: rep[C.ident[C.obj_id[o]]],
        lambda g, f: rep[C.comp[(C.comp[(g[1], g[0])], C.comp[(f[1], f[0])])]],
        obj_names=C.obj_names,
        mor_names=[f"({N[e]},{N[i]})" for e, i in (rep[f] for f in range(C.n_mor))],
    )
    err.raise_report(Q.failures())
    QE = frozenset(q for q in range(Q.n_mor)
                   if any(C.is_identity(pairs[k][1]) for k in orbits[q]))
    QI = frozenset(q for q in range(Q.n_mor)
                   if any(C.is_identity(pairs[k][0]) for k in orbits[q]))
    iso = Functor(Q, C, tuple(range(C.n_obj)), tuple(C.comp[(i, e)] for e, i in Q.mor_labels))
    err.raise_report(iso.failures())
    if not iso.is_bijective() or QE != FS.egressive or QI != FS.ingressive:
        raise err.ComparisonNotBijective("quotient does not match the original system",
                                         (sorted(QE), sorted(QI)))

    on_the_nose = False
    D = dclr(FS)
    if is_factorization_double(D):
        K = corners(D)
        H, V = D.horizontal, D.vertical
        P = Functor(K.base, C, tuple(range(C.n_obj)),
                    tuple(C.comp[(C.mor_id[V.mor_labels[v]], C.mor_id[H.mor_labels[h]])]
                          for h, v in K.base.mor_labels))
        err.raise_report(P.failures())
        on_the_nose = P.is_bijective()
    return UnitReport(pairs, orbits, FactorizationSystem(Q, QE, QI), iso, on_the_nose)


def product_comparison(C: FinCategory, D: FinCategory) -> DblFunctor:
    """The strict isomorphism ``C ⊠ D → dclr(product_ofs(C, D))``."""
    S = boxtimes(C, D)
    T = dclr(product_ofs(C, D))
    cid = lambda c: C.mor_labels[C.ident[C.obj_id[c]]]
    did = lambda d: D.mor_labels[D.ident[D.obj_id[d]]]
    h_img = tuple(T.horizontal.mor_id[(f, did(d))] for f, d in S.horizontal.mor_labels)
    v_img = tuple(T.vertical.mor_id[(cid(c), g)] for c, g in S.vertical.mor_labels)
    sq_img = []
    for s in range(S.n_sq):
        found = T.by_boundary.get((h_img[S.top[s]], h_img[S.bottom[s]], v_img[S.left[s]], v_img[S.right[s]]), ())
        if len(found) != 1:
            raise err.ComparisonNotBijective("square has no unique image", ("squares", s))
        sq_img.append(found[0])
    F = DblFunctor(S, T, tuple(T.horizontal.obj_id[o] for o in S.horizontal.obj_labels), h_img, v_img,
                   tuple(sq_img))
    err.raise_report(F.failures())
    if not F.is_iso():
        raise err.ComparisonNotBijective("comparison is not bijective", None)
    return F


def segal_chain_check(D: DoubleCategory, n: int, budget=None) -> tuple[int, int]:
    """Double functors out of ``ardc([n])`` against composable ``n``-chains of corners."""
    lhs = len(enumerate_dbl_functors(ardc(poset_category(n)), D, budget))
    rhs = len(nerve_chains(corners(D).base, n))
    if lhs != rhs:
        raise err.CountMismatch(f"{lhs} double functors but {rhs} chains", (lhs, rhs))
    return lhs, rhs


def mapping_comparison(A: FactorizationSystem, B: FactorizationSystem, budget=None) -> tuple[int, int]:
    """``dclr`` maps factorization-system maps bijectively onto double functors."""
    maps = enumerate_ofs_maps(A, B, budget)
    dbl = enumerate_dbl_functors(dclr(A), dclr(B), budget)
    images = {dclr_map(M) for M in maps}
    if len(images) != len(maps) or images != set(dbl):
        raise err.CountMismatch(f"{len(maps)} maps but {len(dbl)} double functors", (len(maps), len(dbl)))
    return len(maps), len(dbl)


def corner_is_iso(K: FactorizationSystem, D: DoubleCategory, k: int) -> tuple[bool, bool]:
    """(invertible in corners, both legs invertible)."""
    h, v = K.base.mor_labels[k]
    return k in K.base.isos, (h in D.horizontal.isos and v in D.vertical.isos)
