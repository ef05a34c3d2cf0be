"""Indexings of double categories by categories, and the double Grothendieck construction.

An indexing ``X`` over ``B`` sends objects to categories, horizontal morphisms
covariantly and vertical morphisms contravariantly to functors, and a square
``σ`` to ``η_σ: X(top)∘X(left) ⇒ X(right)∘X(bottom)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import errors as err
from .dblcat import DblFunctor, DoubleCategory, dual_functor, fullop
from .fib import cocartesian_lifts, is_cocart_right
from .fincat import FinCategory, Functor, NatTrans, compose_functors, fmt_label
from .search import backtrack


@dataclass(frozen=True)
class DblIndexing:
    base: DoubleCategory
    obj_cat: tuple        # object id -> FinCategory
    h_fun: tuple          # hmor id -> Functor X(src) -> X(tgt)
    v_fun: tuple          # vmor id -> Functor X(tgt) -> X(src)
    sq_nat: tuple         # square id -> NatTrans

    def failures(self) -> list[err.ValidationError]:
        return indexing_failures(self)

    def validate(self) -> "DblIndexing":
        err.raise_report(self.failures())
        return self


def _maps(F: Functor) -> tuple:
    return (F.obj_map, F.mor_map)


def _is_identity(F: Functor) -> bool:
    return F.obj_map == tuple(range(F.source.n_obj)) and F.mor_map == tuple(range(F.source.n_mor))


def indexing_failures(X: DblIndexing) -> list[err.ValidationError]:
    B = X.base
    H, V = B.horizontal, B.vertical
    K = X.obj_cat
    found: list[err.ValidationError] = []
    if len(K) != B.n_obj or len(X.h_fun) != H.n_mor or len(X.v_fun) != V.n_mor or len(X.sq_nat) != B.n_sq:
        return [err.IndexingError("indexing data does not match the base sizes")]
    for c, cat in enumerate(K):
        found += cat.failures()
    for h, F in enumerate(X.h_fun):
        if F.source != K[H.src[h]] or F.target != K[H.tgt[h]]:
            found.append(err.IndexingError(f"functor of {H.mor_names[h]} has the wrong categories", ("h", h)))
    for v, F in enumerate(X.v_fun):
        if F.source != K[V.tgt[v]] or F.target != K[V.src[v]]:
            found.append(err.IndexingError(f"functor of {V.mor_names[v]} has the wrong categories", ("v", v)))
    if found:
        return found
    for F in X.h_fun + X.v_fun:
        found += F.failures()
    if found:
        return found

    for x in range(B.n_obj):
        if not _is_identity(X.h_fun[H.ident[x]]) or not _is_identity(X.v_fun[V.ident[x]]):
            found.append(err.IndexingError(f"identity at {H.obj_names[x]} not sent to the identity", x))
    for (g, f), gf in H.comp.items():
        if _maps(X.h_fun[gf]) != _maps(compose_functors(X.h_fun[g], X.h_fun[f])):
            found.append(err.IndexingError("horizontal composite not preserved", ("h", g, f)))
    for (g, f), gf in V.comp.items():
        if _maps(X.v_fun[gf]) != _maps(compose_functors(X.v_fun[f], X.v_fun[g])):
            found.append(err.IndexingError("vertical composite not reversed", ("v", g, f)))

    for s, eta in enumerate(X.sq_nat):
        t, b, l, r = B.boundary(s)
        src = compose_functors(X.h_fun[t], X.v_fun[l])
        tgt = compose_functors(X.v_fun[r], X.h_fun[b])
        if eta.source.source != K[V.tgt[l]] or _maps(eta.source) != _maps(src) \
                or _maps(eta.target) != _maps(tgt) or len(eta.components) != K[V.tgt[l]].n_obj:
            found.append(err.IndexingError(f"transformation of {B.sq_names[s]} has the wrong boundary", s))
            continue
        if any(not 0 <= a < K[H.tgt[t]].n_mor for a in eta.components):
            found.append(err.IndexingError(f"transformation of {B.sq_names[s]} names unknown morphisms", s))
            continue
        found += [err.NaturalityFailure(f"{B.sq_names[s]}: {e}", (s, e.witness)) for e in eta.failures()]
    if found:
        return found

    for v in range(V.n_mor):
        if not X.sq_nat[B.hid[v]].is_identity():
            found.append(err.IndexingError("horizontal identity square not sent to the identity", ("hid", v)))
    for h in range(H.n_mor):
        if not X.sq_nat[B.vid[h]].is_identity():
            found.append(err.IndexingError("vertical identity square not sent to the identity", ("vid", h)))
    found += _pasting_failures(X)
    return found


def _pasting_failures(X: DblIndexing) -> list[err.ValidationError]:
    B = X.base
    K, eta = X.obj_cat, X.sq_nat
    found: list[err.ValidationError] = []
    for (s2, s1), s in B.hcomp.items():
        # s2 to the right of s1
        t2, b1 = B.top[s2], B.bottom[s1]
        Kz = K[B.horizontal.tgt[t2]]
        for a in range(K[B.vertical.tgt[B.left[s1]]].n_obj):
            pasted = Kz.comp[(eta[s2].components[X.h_fun[b1].obj_map[a]],
                              X.h_fun[t2].mor_map[eta[s1].components[a]])]
            if pasted != eta[s].components[a]:
                found.append(err.PastingFailure("horizontal pasting fails", ("h", s2, s1, a)))
    for (lo, up), s in B.vcomp.items():
        l2, r1 = B.left[lo], B.right[up]
        Ky = K[B.vertical.src[r1]]
        for a in range(K[B.vertical.tgt[l2]].n_obj):
            pasted = Ky.comp[(X.v_fun[r1].mor_map[eta[lo].components[a]],
                              eta[up].components[X.v_fun[l2].obj_map[a]])]
            if pasted != eta[s].components[a]:
                found.append(err.PastingFailure("vertical pasting fails", ("v", lo, up, a)))
    return found


def validate_indexing(X: DblIndexing) -> DblIndexing:
    return X.validate()


def constant_indexing(B: DoubleCategory, K: FinCategory) -> DblIndexing:
    ident = Functor(K, K, tuple(range(K.n_obj)), tuple(range(K.n_mor)))
    nat = NatTrans(ident, ident, tuple(K.ident))
    return DblIndexing(B, (K,) * B.n_obj, (ident,) * B.horizontal.n_mor,
                       (ident,) * B.vertical.n_mor, (nat,) * B.n_sq)


# unstraightening

def unstraighten(X: DblIndexing) -> DblFunctor:
    """The total double category with its projection to the base.

    Objects ``(c, a)``; horizontal morphisms ``(h, a, φ)`` with ``φ: X(h)a → b``;
    vertical morphisms ``(v, a')`` from ``(c, X(v)a')`` to ``(c', a')``; squares
    ``(σ, a', φ')`` determined by their bottom ``(b, a', φ')``.
    """
    X.validate()
    B = X.base
    BH, BV = B.horizontal, B.vertical
    K, hf, vf, eta = X.obj_cat, X.h_fun, X.v_fun, X.sq_nat

    objects = [(c, a) for c in range(B.n_obj) for a in range(K[c].n_obj)]
    obj_names = [f"{BH.obj_names[c]}.{K[c].obj_names[a]}" for c, a in objects]

    hmors = []
    for h in range(BH.n_mor):
        c, d = BH.src[h], BH.tgt[h]
        for a in range(K[c].n_obj):
            for phi in K[d].out_mor[hf[h].obj_map[a]]:
                hmors.append(((h, a, phi), (c, a), (d, K[d].tgt[phi])))
    H = FinCategory.build(
        objects, hmors,
        lambda o: (BH.ident[o[0]], o[1], K[o[0]].ident[o[1]]),
        lambda g, f: (BH.comp[(g[0], f[0])], f[1],
                      K[BH.tgt[g[0]]].comp[(g[2], hf[g[0]].mor_map[f[2]])]),
        obj_names=obj_names,
        mor_names=[f"{BH.mor_names[h]}.{K[c].obj_names[a]}.{K[BH.tgt[h]].mor_names[p]}"
                   for (h, a, p), (c, _), _ in hmors],
    )

    vmors = []
    for v in range(BV.n_mor):
        c, c1 = BV.src[v], BV.tgt[v]
        for a1 in range(K[c1].n_obj):
            vmors.append(((v, a1), (c, vf[v].obj_map[a1]), (c1, a1)))
    V = FinCategory.build(
        objects, vmors,
        lambda o: (BV.ident[o[0]], o[1]),
        lambda g, f: (BV.comp[(g[0], f[0])], g[1]),
        obj_names=obj_names,
        mor_names=[f"{BV.mor_names[v]}.{K[BV.tgt[v]].obj_names[a]}" for (v, a), _, _ in vmors],
    )

    squares = []
    for s in range(B.n_sq):
        t, b, l, r = B.boundary(s)
        x1, y, y1 = BH.src[b], BH.tgt[t], BH.tgt[b]
        for a1 in range(K[x1].n_obj):
            for phi in K[y1].out_mor[hf[b].obj_map[a1]]:
                psi = K[y].comp[(vf[r].mor_map[phi], eta[s].components[a1])]
                top = (t, vf[l].obj_map[a1], psi)
                squares.append(((s, a1, phi), top, (b, a1, phi), (l, a1), (r, K[y1].tgt[phi])))

    def hcomp(s2, s1):
        b2 = B.bottom[s2[0]]
        return (B.hcomp[(s2[0], s1[0])], s1[1], K[BH.tgt[b2]].comp[(s2[2], hf[b2].mor_map[s1[2]])])

    T = DoubleCategory.build(
        H, V, squares, hcomp,
        lambda lo, up: (B.vcomp[(lo[0], up[0])], lo[1], lo[2]),
        lambda v: (B.hid[v[0]], v[1], K[BV.tgt[v[0]]].ident[v[1]]),
        lambda h: (B.vid[h[0]], h[1], h[2]),
        sq_names=[f"{B.sq_names[s]}.{K[BH.src[B.bottom[s]]].obj_names[a]}.{fmt_label(p)}"
                  for (s, a, p), *_ in squares],
    )
    return DblFunctor(T, B,
                      tuple(c for c, _ in T.horizontal.obj_labels),
                      tuple(lbl[0] for lbl in T.horizontal.mor_labels),
                      tuple(lbl[0] for lbl in T.vertical.mor_labels),
                      tuple(lbl[0] for lbl in T.sq_labels))


# straightening

@dataclass(frozen=True)
class Straightening:
    indexing: DblIndexing
    fibration: DblFunctor
    cleavage: dict        # (base hmor, total object) -> chosen cocartesian lift
    vlift: dict           # (base vmor, total object) -> the unique vertical lift ending there


def split_cleavage(F: DblFunctor, budget=None) -> dict:
    """Least choice of cocartesian lifts, identities on identities, closed under composition."""
    T, B = F.source, F.target
    TH, BH = T.horizontal, B.horizontal
    FH = F.horizontal
    over = [[t for t in range(T.n_obj) if F.obj_map[t] == c] for c in range(B.n_obj)]
    keys = [(h, t) for h in range(BH.n_mor) if not BH.is_identity(h) for t in over[BH.src[h]]]
    domains = []
    for h, t in keys:
        lifts = cocartesian_lifts(FH, h, t)
        if not lifts:
            raise err.IndexingError("missing cocartesian lift", (h, t))
        domains.append(lifts)
    pos = {k: i for i, k in enumerate(keys)}

    def value(assign, h, t):
        if BH.is_identity(h):
            return TH.ident[t]
        return assign[pos[(h, t)]]

    def check(k, assign):
        for i in range(k + 1):
            h, t = keys[i]
            x = assign[i]
            for g in BH.out_mor[BH.tgt[h]]:
                if BH.is_identity(g):
                    continue
                y = value(assign, g, TH.tgt[x])
                z = value(assign, BH.comp[(g, h)], t)
                if y is None or z is None:
                    continue
                if TH.comp[(y, x)] != z:
                    return False
        return True

    # unassigned variables read as None, so check skips constraints that are not yet decided
    for sol in backtrack(len(keys), lambda k, assign: domains[k], check, budget):
        chi = {(h, t): TH.ident[t] for h in range(BH.n_mor) if BH.is_identity(h) for t in over[BH.src[h]]}
        chi.update(zip(keys, sol))
        return chi
    raise err.NonSplitCleavage("no split choice of cocartesian lifts", None)


def straighten_data(F: DblFunctor, budget=None) -> Straightening:
    report = is_cocart_right(F)
    if not report:
        raise err.IndexingError("not a (cocartesian, right) fibration", report.witnesses[:5])
    T, B = F.source, F.target
    TH, TV, BH, BV = T.horizontal, T.vertical, B.horizontal, B.vertical
    chi = split_cleavage(F, budget)

    fibers = []
    for c in range(B.n_obj):
        objs = [t for t in range(T.n_obj) if F.obj_map[t] == c]
        mors = [g for g in range(TH.n_mor) if F.hmor_map[g] == BH.ident[c]]
        fibers.append(FinCategory.build(
            objs, [(g, TH.src[g], TH.tgt[g]) for g in mors],
            lambda t: TH.ident[t], lambda g, f: TH.comp[(g, f)],
            obj_names=[TH.obj_names[t] for t in objs], mor_names=[TH.mor_names[g] for g in mors]))

    def over_identity(d, x, y, pred):
        found = [w for w in TH.homset(x, y) if F.hmor_map[w] == BH.ident[d] and pred(w)]
        if len(found) != 1:
            raise err.IndexingError("cocartesian factorization is not unique", (d, x, y, len(found)))
        return found[0]

    h_fun = []
    for h in range(BH.n_mor):
        c, d = BH.src[h], BH.tgt[h]
        Kc, Kd = fibers[c], fibers[d]
        obj = tuple(Kd.obj_id[TH.tgt[chi[(h, t)]]] for t in Kc.obj_labels)
        mor = []
        for u in Kc.mor_labels:
            c1, c2 = chi[(h, TH.src[u])], chi[(h, TH.tgt[u])]
            target = TH.comp[(c2, u)]
            w = over_identity(d, TH.tgt[c1], TH.tgt[c2], lambda w: TH.comp[(w, c1)] == target)
            mor.append(Kd.mor_id[w])
        h_fun.append(Functor(Kc, Kd, obj, tuple(mor)))

    vlift: dict = {}
    for g in range(TV.n_mor):
        vlift[(F.vmor_map[g], TV.tgt[g])] = g
    by_bottom: dict = {}
    for s in range(T.n_sq):
        by_bottom.setdefault((F.sq_map[s], T.bottom[s]), []).append(s)

    def square_over(sigma, bottom):
        found = by_bottom.get((sigma, bottom), [])
        if len(found) != 1:
            raise err.IndexingError("square lift is not unique", (sigma, bottom, len(found)))
        return found[0]

    v_fun = []
    for v in range(BV.n_mor):
        c, c1 = BV.src[v], BV.tgt[v]
        Kc, Kc1 = fibers[c], fibers[c1]
        obj = tuple(Kc.obj_id[TV.src[vlift[(v, t)]]] for t in Kc1.obj_labels)
        mor = tuple(Kc.mor_id[T.top[square_over(B.hid[v], u)]] for u in Kc1.mor_labels)
        v_fun.append(Functor(Kc1, Kc, obj, mor))

    sq_nat = []
    for s in range(B.n_sq):
        t, b, l, r = B.boundary(s)
        y = BH.tgt[t]
        Kx1 = fibers[BH.src[b]]
        comps = []
        for a1 in Kx1.obj_labels:
            top = T.top[square_over(s, chi[(b, a1)])]
            lift = chi[(t, TH.src[top])]
            w = over_identity(y, TH.tgt[lift], TH.tgt[top], lambda w: TH.comp[(w, lift)] == top)
            comps.append(fibers[y].mor_id[w])
        sq_nat.append(NatTrans(compose_functors(h_fun[t], v_fun[l]),
                               compose_functors(v_fun[r], h_fun[b]), tuple(comps)))

    X = DblIndexing(B, tuple(fibers), tuple(h_fun), tuple(v_fun), tuple(sq_nat)).validate()
    return Straightening(X, F, chi, vlift)


def straighten(F: DblFunctor, budget=None) -> DblIndexing:
    return straighten_data(F, budget).indexing


# round trips

@dataclass(frozen=True)
class IndexingIso:
    """``θ_c: Y(c) ≅ X(c)`` strictly compatible with vertical functors, and natural
    isos ``α_h: θ∘Y(h) ⇒ X(h)∘θ`` compatible with composition and with every ``η``."""
    theta: tuple
    alpha: tuple


def indexing_iso_failures(Y: DblIndexing, X: DblIndexing, iso: IndexingIso) -> list[err.ValidationError]:
    B = X.base
    BH, BV = B.horizontal, B.vertical
    th, al = iso.theta, iso.alpha
    found: list[err.ValidationError] = []
    for c, f in enumerate(th):
        if f.failures() or not f.is_bijective():
            found.append(err.Mismatch("fiber comparison is not an isomorphism", c))
    if found:
        return found
    for v in range(BV.n_mor):
        c, c1 = BV.src[v], BV.tgt[v]
        if _maps(compose_functors(th[c], Y.v_fun[v])) != _maps(compose_functors(X.v_fun[v], th[c1])):
            found.append(err.Mismatch("vertical functors differ", v))
    for h in range(BH.n_mor):
        c, d = BH.src[h], BH.tgt[h]
        a = al[h]
        Kd = X.obj_cat[d]
        nat = NatTrans(compose_functors(th[d], Y.h_fun[h]), compose_functors(X.h_fun[h], th[c]), a.components)
        if nat.failures() or any(m not in Kd.isos for m in a.components):
            found.append(err.Mismatch("comparison of horizontal functors is not a natural iso", h))
        elif BH.is_identity(h) and not nat.is_identity():
            found.append(err.Mismatch("comparison on an identity is not the identity", h))
    if found:
        return found
    for (g, h), gh in BH.comp.items():
        Ke = X.obj_cat[BH.tgt[g]]
        for a in range(Y.obj_cat[BH.src[h]].n_obj):
            pasted = Ke.comp[(X.h_fun[g].mor_map[al[h].components[a]],
                              al[g].components[Y.h_fun[h].obj_map[a]])]
            if pasted != al[gh].components[a]:
                found.append(err.Mismatch("comparison does not respect composition", (g, h, a)))
    for s in range(B.n_sq):
        t, b, l, r = B.boundary(s)
        y = BH.tgt[t]
        Ky = X.obj_cat[y]
        x1 = BH.src[b]
        for a1 in range(Y.obj_cat[x1].n_obj):
            lhs = Ky.comp[(X.v_fun[r].mor_map[al[b].components[a1]],
                           th[y].mor_map[Y.sq_nat[s].components[a1]])]
            rhs = Ky.comp[(X.sq_nat[s].components[th[x1].obj_map[a1]],
                           al[t].components[Y.v_fun[l].obj_map[a1]])]
            if lhs != rhs:
                found.append(err.Mismatch("square transformations do not correspond", (s, a1)))
    return found


def roundtrip_indexing(X: DblIndexing, budget=None) -> IndexingIso:
    """``straighten(unstraighten X) ≅ X`` with the comparison built from the chosen lifts."""
    P = unstraighten(X)
    S = straighten_data(P, budget)
    Y = S.indexing
    T = P.source
    TH = T.horizontal
    B = X.base
    theta = []
    for c in range(B.n_obj):
        Yc, Xc = Y.obj_cat[c], X.obj_cat[c]
        obj = tuple(TH.obj_labels[t][1] for t in Yc.obj_labels)
        mor = tuple(TH.mor_labels[g][2] for g in Yc.mor_labels)
        theta.append(Functor(Yc, Xc, obj, mor))
    alpha = []
    for h in range(B.horizontal.n_mor):
        d = B.horizontal.tgt[h]
        Kd = X.obj_cat[d]
        comps = []
        for t in Y.obj_cat[B.horizontal.src[h]].obj_labels:
            phi0 = TH.mor_labels[S.cleavage[(h, t)]][2]
            if phi0 not in Kd.isos:
                raise err.Mismatch("chosen lift is not an iso away from the canonical one", (h, t))
            comps.append(Kd.inverse[phi0])
        alpha.append(NatTrans(compose_functors(theta[d], Y.h_fun[h]),
                              compose_functors(X.h_fun[h], theta[B.horizontal.src[h]]), tuple(comps)))
    iso = IndexingIso(tuple(theta), tuple(alpha))
    problems = indexing_iso_failures(Y, X, iso)
    if problems:
        raise err.Mismatch("straightening does not invert unstraightening", [p.witness for p in problems])
    return iso


def roundtrip_fibration(F: DblFunctor, budget=None) -> DblFunctor:
    """The isomorphism ``unstraighten(straighten F) → F.source`` over the base."""
    S = straighten_data(F, budget)
    X = S.indexing
    P = unstraighten(X)
    U, T = P.source, F.source
    UH, TH = U.horizontal, T.horizontal
    K = X.obj_cat
    obj = tuple(K[c].obj_labels[a] for c, a in UH.obj_labels)
    hm = []
    for h, a, phi in UH.mor_labels:
        c, d = X.base.horizontal.src[h], X.base.horizontal.tgt[h]
        hm.append(TH.comp[(K[d].mor_labels[phi], S.cleavage[(h, K[c].obj_labels[a])])])
    vm = tuple(S.vlift[(v, K[X.base.vertical.tgt[v]].obj_labels[a])] for v, a in U.vertical.mor_labels)
    by_bottom = {(F.sq_map[s], T.bottom[s]): s for s in range(T.n_sq)}
    sq = tuple(by_bottom[(P.sq_map[s], hm[U.bottom[s]])] for s in range(U.n_sq))
    phi = DblFunctor(U, T, obj, tuple(hm), vm, sq)
    problems = phi.failures()
    if problems or not phi.is_iso():
        raise err.Mismatch("unstraightening does not invert straightening", [p.witness for p in problems])
    if (tuple(F.obj_map[x] for x in obj), tuple(F.hmor_map[g] for g in hm), tuple(F.vmor_map[g] for g in vm),
            tuple(F.sq_map[s] for s in sq)) != (P.obj_map, P.hmor_map, P.vmor_map, P.sq_map):
        raise err.Mismatch("comparison does not lie over the base", None)
    return phi


# (left, cartesian) variant

def unstraighten_left_cart(X: DblIndexing) -> DblFunctor:
    """For ``X`` indexed over ``fullop(B)``, the (left, cartesian) fibration over ``B``."""
    return dual_functor(unstraighten(X), fullop)


def straighten_left_cart(G: DblFunctor, budget=None) -> DblIndexing:
    return straighten(dual_functor(G, fullop), budget)
