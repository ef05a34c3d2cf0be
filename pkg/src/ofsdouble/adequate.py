"""Adequacy, ambigressive pullbacks and the span category."""
from __future__ import annotations

from dataclasses import dataclass

from . import errors as err
from .bridge import corners, dclr
from .dblcat import DblFunctor, DoubleCategory, horop, is_factorization_double
from .fincat import FinCategory, Functor, Verdict, find_isomorphisms
from .ofs import FactorizationSystem


def pullback_complete(C: FinCategory, f: int, g: int) -> list[tuple[int, int, int]]:
    """All pullbacks ``(p, px, py)`` of the cospan ``f: x → z ← y: g``.

    Every cone is tested against every competing cone, so strictly distinct but
    isomorphic pullbacks all appear.
    """
    if C.tgt[f] != C.tgt[g]:
        raise ValueError("not a cospan")
    x, y = C.src[f], C.src[g]
    cones = [(p, px, py) for p in range(C.n_obj) for px in C.homset(p, x) for py in C.homset(p, y)
             if C.comp[(f, px)] == C.comp[(g, py)]]
    out = []
    for p, px, py in cones:
        if all(sum(1 for u in C.homset(q, p) if C.comp[(px, u)] == qx and C.comp[(py, u)] == qy) == 1
               for q, qx, qy in cones):
            out.append((p, px, py))
    return out


def ambigressive_cospans(FS: FactorizationSystem) -> list[tuple[int, int]]:
    """Pairs ``(e, i)`` with ``e`` egressive, ``i`` ingressive and a common target."""
    C = FS.base
    return [(e, i) for e in sorted(FS.egressive) for i in sorted(FS.ingressive) if C.tgt[e] == C.tgt[i]]


def extensions(FS: FactorizationSystem, e: int, i: int) -> list[tuple[int, int, int]]:
    """Ambigressive squares on the cospan: ``(a, e2, i2)`` with ``e2: a → src i``
    egressive, ``i2: a → src e`` ingressive and ``i∘e2 = e∘i2``."""
    C = FS.base
    out = []
    for i2 in sorted(FS.ingressive):
        if C.tgt[i2] != C.src[e]:
            continue
        a = C.src[i2]
        ei2 = C.comp[(e, i2)]
        for e2 in C.homset(a, C.src[i]):
            if e2 in FS.egressive and C.comp[(i, e2)] == ei2:
                out.append((a, e2, i2))
    return out


def extension_isos(FS: FactorizationSystem, s1: tuple, s2: tuple) -> list[int]:
    """Isos ``μ`` with ``e2'∘μ = e1'`` and ``i2'∘μ = i1'``."""
    C = FS.base
    (a1, e1, i1), (a2, e2, i2) = s1, s2
    return [m for m in C.homset(a1, a2)
            if m in C.isos and C.comp[(e2, m)] == e1 and C.comp[(i2, m)] == i1]


@dataclass
class AdequacyReport:
    by_pullbacks: Verdict      # cospans have ambigressive pullbacks, ambigressive squares are pullbacks
    by_extensions: Verdict     # unique extension up to a unique iso
    strict: Verdict            # exactly one extension per cospan
    # as by_pullbacks, but any pullback will do; the left class need not be
    # stable under pullback, so this is strictly weaker (e.g. on [1]x[1])
    any_pullback: Verdict = Verdict(True)

    @property
    def agree(self) -> bool:
        return self.by_pullbacks.ok == self.by_extensions.ok

    @property
    def ok(self) -> bool:
        return self.by_pullbacks.ok and self.by_extensions.ok


def adequacy_report(FS: FactorizationSystem) -> AdequacyReport:
    C = FS.base
    a_verdict = b_verdict = s_verdict = w_verdict = None
    for e, i in ambigressive_cospans(FS):
        exts = extensions(FS, e, i)
        if a_verdict is None or w_verdict is None:
            pbs = pullback_complete(C, e, i)
            squares = {(a, i2, e2) for a, e2, i2 in exts}
            bad = [sq for sq in sorted(squares) if sq not in pbs]
            if not pbs:
                w_verdict = w_verdict or Verdict(False, ("no pullback", (e, i)))
            elif bad:
                w_verdict = w_verdict or Verdict(False, ("ambigressive square not a pullback", (e, i), bad[0]))
            if a_verdict is None:
                if not pbs:
                    a_verdict = Verdict(False, ("no pullback", (e, i)))
                elif bad:
                    a_verdict = Verdict(False, ("ambigressive square not a pullback", (e, i), bad[0]))
                elif not squares & set(pbs):
                    a_verdict = Verdict(False, ("pullback is not ambigressive", (e, i), pbs[0]))
        if b_verdict is None:
            if not exts:
                b_verdict = Verdict(False, ("no extension", (e, i)))
            else:
                for other in exts:
                    k = len(extension_isos(FS, exts[0], other))
                    if k != 1:
                        b_verdict = Verdict(False, ("extensions not uniquely isomorphic", (e, i), exts[0], other, k))
                        break
        if s_verdict is None and len(exts) != 1:
            s_verdict = Verdict(False, ("extension count", (e, i), len(exts)))
    ok = Verdict(True)
    return AdequacyReport(ok if a_verdict is None else a_verdict,
                          ok if b_verdict is None else b_verdict,
                          ok if s_verdict is None else s_verdict,
                          ok if w_verdict is None else w_verdict)


def is_adequate(FS: FactorizationSystem) -> AdequacyReport:
    report = adequacy_report(FS)
    if not report.agree:
        raise err.VerdictDisagreement("adequacy criteria disagree",
                                      (report.by_pullbacks.witness, report.by_extensions.witness))
    return report


def is_adequate_double(D: DoubleCategory, base: FactorizationSystem | None = None) -> Verdict:
    """``horop(D)`` is a factorization double category.

    Given the system ``base`` with ``D = dclr(base)``, fillers are instead
    required to be unique up to exactly one iso of the base between their
    top-left objects, which is the right notion when the base has non-identity isos.
    """
    if base is None:
        return is_factorization_double(horop(D))
    C = base.base
    H, V = D.horizontal, D.vertical
    R = horop(D)
    for v in range(V.n_mor):
        for h in R.horizontal.out_mor[V.tgt[v]]:
            fillers = R.by_corner.get((v, h), ())
            exts = [(H.src[D.top[s]], C.mor_id[H.mor_labels[D.top[s]]], C.mor_id[V.mor_labels[D.left[s]]])
                    for s in fillers]
            if not exts or any(len(extension_isos(base, exts[0], x)) != 1 for x in exts):
                return Verdict(False, {"left": v, "bottom": h, "fillers": list(fillers)})
    return Verdict(True)


# spans

def span_category(FS: FactorizationSystem, strict: bool = True) -> FactorizationSystem:
    """Spans ``x ← m → y`` with egressive back leg and ingressive forward leg.

    Composition pulls the middle cospan back along its ambigressive extension. In
    the strict regime that extension must be unique; otherwise the least one is
    used and spans are identified along isos of their apex.
    """
    C = FS.base
    spans = [(b, f) for b in sorted(FS.egressive) for f in sorted(FS.ingressive) if C.src[b] == C.src[f]]
    # identify spans joined by an apex iso
    rep: dict = {}
    for b, f in spans:
        if (b, f) in rep:
            continue
        for m in C.out_mor[C.src[b]]:
            if m in C.isos:
                inv = C.inverse[m]
                rep.setdefault((C.comp[(b, inv)], C.comp[(f, inv)]), (b, f))
    if strict and any(r != s for s, r in rep.items()):
        raise err.NonUniquePullback("spans with isomorphic apexes are distinct", None)
    reps = sorted(set(rep.values()))

    def compose(g, f):
        (b2, f2), (b1, f1) = g, f
        exts = extensions(FS, b2, f1)
        if not exts or (strict and len(exts) != 1):
            raise err.NonUniquePullback(f"cospan ({f1}, {b2}) has {len(exts)} ambigressive extensions", (f1, b2))
        _, pe, pi = exts[0]
        return rep[(C.comp[(b1, pe)], C.comp[(f2, pi)])]

    N = C.mor_names
    S = FinCategory.build(
        C.obj_labels,
        [((b, f), C.obj_labels[C.tgt[b]], C.obj_labels[C.tgt[f]]) for b, f in reps],
        lambda o: rep[(C.ident[C.obj_id[o]], C.ident[C.obj_id[o]])],
        compose,
        obj_names=C.obj_names,
        mor_names=[f"<{N[b]},{N[f]}>" for b, f in reps],
    )
    E = frozenset(k for k, (b, f) in enumerate(reps) if f in C.isos)
    I = frozenset(k for k, (b, f) in enumerate(reps) if b in C.isos)
    return FactorizationSystem(S, E, I)


def span_vs_horop(FS: FactorizationSystem) -> tuple[Functor, DblFunctor]:
    """Spans against corners of ``horop(dclr FS)``, and ``dclr`` of spans against ``horop(dclr FS)``."""
    C = FS.base
    S = span_category(FS)
    R = horop(dclr(FS))
    K = corners(R)
    H, V = R.horizontal, R.vertical
    k_of = {(C.mor_id[H.mor_labels[h]], C.mor_id[V.mor_labels[v]]): k for k, (h, v) in enumerate(K.base.mor_labels)}
    if set(k_of) != set(S.base.mor_labels):
        raise err.Mismatch("spans and corners differ", sorted(set(k_of) ^ set(S.base.mor_labels)))
    G = Functor(S.base, K.base, tuple(range(C.n_obj)), tuple(k_of[lbl] for lbl in S.base.mor_labels))
    problems = G.failures()
    if problems:
        raise err.Mismatch("filler composition differs from span composition", [p.witness for p in problems])
    if not G.is_bijective() or {G.mor_map[k] for k in S.egressive} != K.egressive \
            or {G.mor_map[k] for k in S.ingressive} != K.ingressive:
        raise err.Mismatch("span and corner classes differ", None)

    T = dclr(S)
    SB = S.base
    h_img = tuple(T.horizontal.mor_id[SB.mor_labels[SB.mor_id[(C.mor_id[lbl], C.ident[C.src[C.mor_id[lbl]]])]]]
                  for lbl in H.mor_labels)
    v_img = tuple(T.vertical.mor_id[SB.mor_labels[SB.mor_id[(C.ident[C.src[C.mor_id[lbl]]], C.mor_id[lbl])]]]
                  for lbl in V.mor_labels)
    sq_img = []
    for s in range(R.n_sq):
        found = T.by_boundary.get((h_img[R.top[s]], h_img[R.bottom[s]], v_img[R.left[s]], v_img[R.right[s]]), ())
        if len(found) != 1:
            raise err.Mismatch("square of horop(dclr) has no unique span image", s)
        sq_img.append(found[0])
    F = DblFunctor(R, T, tuple(range(C.n_obj)), h_img, v_img, tuple(sq_img))
    problems = F.failures()
    if problems or not F.is_iso():
        raise err.Mismatch("dclr of spans is not isomorphic to horop(dclr)", [p.witness for p in problems])
    return G, F


def involution_check(FS: FactorizationSystem) -> Functor:
    """The isomorphism ``span(span(FS)) → FS``; a double span ``(b̄, ī)`` goes to ``i∘b``."""
    C = FS.base
    if horop(horop(dclr(FS))) != dclr(FS):
        raise err.Mismatch("horop is not an involution on tables", None)
    S = span_category(FS)
    SS = span_category(S)
    SB = S.base
    images = []
    for B, Fk in SS.base.mor_labels:
        b_back, b_fwd = SB.mor_labels[B]      # a span whose forward leg is an identity
        f_back, f_fwd = SB.mor_labels[Fk]     # a span whose back leg is an identity
        if not (C.is_identity(b_fwd) and C.is_identity(f_back)):
            raise err.Mismatch("double span legs are not of the expected shape", (B, Fk))
        images.append(C.comp[(f_fwd, b_back)])
    P = Functor(SS.base, C, tuple(range(C.n_obj)), tuple(images))
    problems = P.failures()
    if problems or not P.is_bijective():
        raise err.Mismatch("span(span(FS)) is not isomorphic to FS", [p.witness for p in problems])
    if {P.mor_map[k] for k in SS.egressive} != FS.egressive or {P.mor_map[k] for k in SS.ingressive} != FS.ingressive:
        raise err.Mismatch("classes are not preserved by the double span comparison", None)
    return P


def span_is_nontrivial(FS: FactorizationSystem) -> Verdict:
    """True when ``span(FS)`` admits no isomorphism to ``FS`` preserving both classes."""
    S = span_category(FS)
    for F in find_isomorphisms(S.base, FS.base):
        if {F.mor_map[k] for k in S.egressive} == FS.egressive and \
                {F.mor_map[k] for k in S.ingressive} == FS.ingressive:
            return Verdict(False, F.obj_map)
    return Verdict(True)
