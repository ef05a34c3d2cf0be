"""Brute-force reference counts, written against the raw tables only.

Nothing here uses the package's search or enumeration code; every count is
an exhaustive ``itertools.product`` over the relevant finite sets.
"""
from __future__ import annotations

import itertools


def monotone_count(k: int, m: int) -> int:
    """Order-preserving maps [k] -> [m]."""
    return sum(all(a <= b for a, b in zip(t, t[1:])) for t in itertools.product(range(m + 1), repeat=k + 1))


def composable_chains(C, n: int) -> int:
    """Strings of ``n`` composable morphisms (objects when n = 0)."""
    if n == 0:
        return len(C.obj_labels)
    total = 0
    for fs in itertools.product(range(len(C.src)), repeat=n):
        total += all(C.tgt[fs[k]] == C.src[fs[k + 1]] for k in range(n - 1))
    return total


def functors(C, D) -> int:
    count = 0
    nC, nD = len(C.obj_labels), len(D.obj_labels)
    for ob in itertools.product(range(nD), repeat=nC):
        options = [[g for g in range(len(D.src)) if D.src[g] == ob[C.src[f]] and D.tgt[g] == ob[C.tgt[f]]]
                   for f in range(len(C.src))]
        for mor in itertools.product(*options):
            if any(mor[C.ident[x]] != D.ident[ob[x]] for x in range(nC)):
                continue
            if all(D.comp[(mor[g], mor[f])] == mor[h] for (g, f), h in C.comp.items()):
                count += 1
    return count


def orthogonal(C, e: int, i: int) -> bool:
    """Every commuting square from ``e`` to ``i`` has exactly one diagonal."""
    n = len(C.src)
    for u in range(n):
        if C.src[u] != C.tgt[e] or C.tgt[u] != C.tgt[i]:
            continue
        for v in range(n):
            if C.src[v] != C.src[e] or C.tgt[v] != C.src[i] or C.comp[(u, e)] != C.comp[(i, v)]:
                continue
            fills = [d for d in range(n) if C.src[d] == C.tgt[e] and C.tgt[d] == C.src[i]
                     and C.comp[(d, e)] == v and C.comp[(i, d)] == u]
            if len(fills) != 1:
                return False
    return True


def _isos(C) -> set:
    n = len(C.src)
    return {f for f in range(n) if any(C.src[g] == C.tgt[f] and C.tgt[g] == C.src[f]
                                       and C.comp[(g, f)] == C.ident[C.src[f]]
                                       and C.comp[(f, g)] == C.ident[C.tgt[f]] for g in range(n))}


def _wide(C, cls) -> bool:
    return _isos(C) <= set(cls) and all(C.comp[(g, f)] in cls for f in cls for g in cls if C.src[g] == C.tgt[f])


def is_lifting_ofs(C, E, I) -> bool:
    """Wide classes, every morphism is some i∘e, and E is orthogonal to I."""
    if not (_wide(C, E) and _wide(C, I)):
        return False
    if not all(any(C.tgt[e] == C.src[i] and C.comp[(i, e)] == f for e in E for i in I) for f in range(len(C.src))):
        return False
    return all(orthogonal(C, e, i) for e in E for i in I)


def is_factorization_ofs(C, E, I) -> bool:
    """Wide classes, each morphism is i∘e, and any two such differ by a unique middle iso."""
    if not (_wide(C, E) and _wide(C, I)):
        return False
    n = len(C.src)
    inv = _isos(C)
    for f in range(n):
        facs = [(e, i) for e in E for i in I if C.tgt[e] == C.src[i] and C.comp[(i, e)] == f]
        if not facs:
            return False
        for e1, i1 in facs:
            for e2, i2 in facs:
                mids = [m for m in inv if C.src[m] == C.tgt[e1] and C.tgt[m] == C.tgt[e2]
                        and C.comp[(m, e1)] == e2 and C.comp[(i2, m)] == i1]
                if len(mids) != 1:
                    return False
    return True


def commuting_squares(C) -> int:
    n = len(C.src)
    return sum(1 for f, g, a, b in itertools.product(range(n), repeat=4)
               if C.src[a] == C.src[f] and C.src[b] == C.tgt[f] and C.src[g] == C.tgt[a] and C.tgt[b] == C.tgt[g]
               and C.comp[(b, f)] == C.comp[(g, a)])


def tilings(D, m: int, n: int) -> int:
    """Composable m x n grids: m squares wide, n squares tall.

    Degenerate shapes are strings of edges (or objects); full grids are
    assignments of squares to cells whose shared edges agree.
    """
    H, V = D.horizontal, D.vertical
    if m == 0 and n == 0:
        return len(H.obj_labels)
    if n == 0:
        return composable_chains(H, m)
    if m == 0:
        return composable_chains(V, n)
    cells = [(i, j) for j in range(n) for i in range(m)]
    total = 0
    for pick in itertools.product(range(len(D.top)), repeat=m * n):
        at = dict(zip(cells, pick))
        ok = all(D.left[at[(i + 1, j)]] == D.right[at[(i, j)]] for i in range(m - 1) for j in range(n)) and \
            all(D.top[at[(i, j + 1)]] == D.bottom[at[(i, j)]] for i in range(m) for j in range(n - 1))
        total += ok
    return total


def double_functors(S, T) -> int:
    """Maps on all four kinds of cells preserving boundaries, identities and composites."""
    SH, SV, TH, TV = S.horizontal, S.vertical, T.horizontal, T.vertical
    count = 0
    n_obj = len(SH.obj_labels)
    for ob in itertools.product(range(len(TH.obj_labels)), repeat=n_obj):
        h_opts = [[g for g in range(len(TH.src)) if TH.src[g] == ob[SH.src[f]] and TH.tgt[g] == ob[SH.tgt[f]]]
                  for f in range(len(SH.src))]
        v_opts = [[g for g in range(len(TV.src)) if TV.src[g] == ob[SV.src[f]] and TV.tgt[g] == ob[SV.tgt[f]]]
                  for f in range(len(SV.src))]
        hs = [h for h in itertools.product(*h_opts)
              if all(h[SH.ident[x]] == TH.ident[ob[x]] for x in range(n_obj))
              and all(TH.comp[(h[g], h[f])] == h[k] for (g, f), k in SH.comp.items())]
        vs = [v for v in itertools.product(*v_opts)
              if all(v[SV.ident[x]] == TV.ident[ob[x]] for x in range(n_obj))
              and all(TV.comp[(v[g], v[f])] == v[k] for (g, f), k in SV.comp.items())]
        for h in hs:
            for v in vs:
                s_opts = [[t for t in range(len(T.top))
                           if (T.top[t], T.bottom[t], T.left[t], T.right[t])
                           == (h[S.top[s]], h[S.bottom[s]], v[S.left[s]], v[S.right[s]])]
                          for s in range(len(S.top))]
                for sq in itertools.product(*s_opts):
                    count += all(sq[S.hid[a]] == T.hid[v[a]] for a in range(len(SV.src))) \
                        and all(sq[S.vid[a]] == T.vid[h[a]] for a in range(len(SH.src))) \
                        and all(T.hcomp[(sq[b], sq[a])] == sq[k] for (b, a), k in S.hcomp.items()) \
                        and all(T.vcomp[(sq[b], sq[a])] == sq[k] for (b, a), k in S.vcomp.items())
    return count


def ofs_maps(A, B) -> int:
    """Functors between the underlying categories sending each class into its counterpart."""
    C, D = A.base, B.base
    count = 0
    for ob in itertools.product(range(len(D.obj_labels)), repeat=len(C.obj_labels)):
        options = []
        for f in range(len(C.src)):
            pool = [g for g in range(len(D.src)) if D.src[g] == ob[C.src[f]] and D.tgt[g] == ob[C.tgt[f]]]
            if f in A.egressive:
                pool = [g for g in pool if g in B.egressive]
            if f in A.ingressive:
                pool = [g for g in pool if g in B.ingressive]
            options.append(pool)
        for mor in itertools.product(*options):
            if all(mor[C.ident[x]] == D.ident[ob[x]] for x in range(len(C.obj_labels))) \
                    and all(D.comp[(mor[g], mor[f])] == mor[h] for (g, f), h in C.comp.items()):
                count += 1
    return count


def poset_pullback_exists(C, f: int, g: int) -> bool:
    """A cospan in a thin category has a pullback iff the lower bounds of its legs' sources have a top."""
    n = len(C.obj_labels)
    leq = {(C.src[k], C.tgt[k]) for k in range(len(C.src))}
    a, b = C.src[f], C.src[g]
    lower = [x for x in range(n) if (x, a) in leq and (x, b) in leq]
    return any(all((y, x) in leq for y in lower) for x in lower)


def poset_adequate(C, E, I) -> bool:
    """Thin categories: each (egressive, ingressive) cospan has a meet of its sources,
    and the meet is the apex of the one and only ambigressive square on it."""
    n = len(C.obj_labels)
    leq = {(C.src[k], C.tgt[k]): k for k in range(len(C.src))}
    for e in E:
        for i in I:
            if C.tgt[e] != C.tgt[i]:
                continue
            x, y = C.src[e], C.src[i]
            lower = [a for a in range(n) if (a, x) in leq and (a, y) in leq]
            meets = [a for a in lower if all((b, a) in leq for b in lower)]
            if not meets:
                return False
            apexes = [a for a in lower if leq[(a, x)] in I and leq[(a, y)] in E]
            if apexes != meets:
                return False
    return True


def right_fibration(F) -> bool:
    """Every base arrow into F(d) has exactly one preimage arrow into d."""
    D, C = F.source, F.target
    for d in range(len(D.obj_labels)):
        for f in range(len(C.src)):
            if C.tgt[f] != F.obj_map[d]:
                continue
            if sum(1 for g in range(len(D.src)) if D.tgt[g] == d and F.mor_map[g] == f) != 1:
                return False
    return True


def cocartesian_edge(F, g: int) -> bool:
    """For every h out of src g and every k with k∘F(g) = F(h), exactly one l over k with l∘g = h."""
    D, C = F.source, F.target
    for h in range(len(D.src)):
        if D.src[h] != D.src[g]:
            continue
        for k in range(len(C.src)):
            if C.src[k] != F.obj_map[D.tgt[g]] or C.tgt[k] != F.obj_map[D.tgt[h]]:
                continue
            if C.comp[(k, F.mor_map[g])] != F.mor_map[h]:
                continue
            fills = [l for l in range(len(D.src)) if D.src[l] == D.tgt[g] and D.tgt[l] == D.tgt[h]
                     and F.mor_map[l] == k and D.comp[(l, g)] == h]
            if len(fills) != 1:
                return False
    return True


def cocartesian_fibration(F) -> bool:
    D, C = F.source, F.target
    return all(any(D.src[g] == d and F.mor_map[g] == f and cocartesian_edge(F, g) for g in range(len(D.src)))
               for d in range(len(D.obj_labels)) for f in range(len(C.src)) if C.src[f] == F.obj_map[d])
