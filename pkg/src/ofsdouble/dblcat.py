"""Strict finite double categories.

Squares are drawn with ``top``/``bottom`` horizontal and ``left``/``right``
vertical::

    x --top--> y
    |          |
   left      right
    v          v
    x' -bot--> y'

``hcomp[(s2, s1)]`` pastes ``s2`` to the right of ``s1``; ``vcomp[(lower, upper)]``
pastes ``lower`` below ``upper``. ``hid[v]`` is the horizontal identity square on a
vertical morphism and ``vid[h]`` the vertical identity square on a horizontal one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from . import errors as err
from .fincat import (FinCategory, Functor, Verdict, _unique_names, chain_degeneracy, chain_face,
                     nerve_chains, opposite, parse_category, to_raw)
from .search import backtrack


@dataclass(frozen=True, eq=False)
class DoubleCategory:
    horizontal: FinCategory
    vertical: FinCategory
    sq_labels: tuple
    top: tuple
    bottom: tuple
    left: tuple
    right: tuple
    hcomp: dict
    vcomp: dict
    hid: tuple
    vid: tuple
    sq_names: tuple

    @classmethod
    def build(
        cls,
        H: FinCategory,
        V: FinCategory,
        squares: Iterable[tuple],
        hcomp: Callable,
        vcomp: Callable,
        hid: Callable,
        vid: Callable,
        sq_names=None,
    ) -> "DoubleCategory":
        """Assemble from labels.

        ``squares`` yields ``(label, top, bottom, left, right)`` with edge labels of
        ``H`` and ``V``; ``hcomp(s2, s1)``, ``vcomp(lower, upper)``, ``hid(v)`` and
        ``vid(h)`` return square labels.
        """
        squares = tuple(squares)
        labels = tuple(s[0] for s in squares)
        sid = {s: k for k, s in enumerate(labels)}
        top = tuple(H.mor_id[s[1]] for s in squares)
        bottom = tuple(H.mor_id[s[2]] for s in squares)
        left = tuple(V.mor_id[s[3]] for s in squares)
        right = tuple(V.mor_id[s[4]] for s in squares)
        by_left: dict = {}
        by_top: dict = {}
        for k in range(len(squares)):
            by_left.setdefault(left[k], []).append(k)
            by_top.setdefault(top[k], []).append(k)
        hc, vc = {}, {}
        for s1 in range(len(squares)):
            for s2 in by_left.get(right[s1], ()):
                hc[(s2, s1)] = sid[hcomp(labels[s2], labels[s1])]
            for s2 in by_top.get(bottom[s1], ()):
                vc[(s2, s1)] = sid[vcomp(labels[s2], labels[s1])]
        return cls(
            H, V, labels, top, bottom, left, right, hc, vc,
            tuple(sid[hid(lbl)] for lbl in V.mor_labels),
            tuple(sid[vid(lbl)] for lbl in H.mor_labels),
            tuple(sq_names) if sq_names is not None else _unique_names(labels),
        )

    @property
    def n_obj(self) -> int:
        return self.horizontal.n_obj

    @property
    def n_sq(self) -> int:
        return len(self.sq_labels)

    def boundary(self, s: int) -> tuple[int, int, int, int]:
        return (self.top[s], self.bottom[s], self.left[s], self.right[s])

    @cached_property
    def sq_id(self) -> dict:
        return {lbl: k for k, lbl in enumerate(self.sq_labels)}

    @cached_property
    def by_boundary(self) -> dict:
        table: dict = {}
        for s in range(self.n_sq):
            table.setdefault(self.boundary(s), []).append(s)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def by_corner(self) -> dict:
        """Squares indexed by their bottom-left corner ``(left, bottom)``."""
        table: dict = {}
        for s in range(self.n_sq):
            table.setdefault((self.left[s], self.bottom[s]), []).append(s)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def square_hcat(self) -> FinCategory:
        """Squares as morphisms between vertical morphisms, composed horizontally."""
        V = self.vertical
        return FinCategory(V.mor_labels, self.sq_labels, self.left, self.right, self.hid,
                           self.hcomp, V.mor_names, self.sq_names)

    @cached_property
    def square_vcat(self) -> FinCategory:
        """Squares as morphisms between horizontal morphisms, composed vertically."""
        H = self.horizontal
        return FinCategory(H.mor_labels, self.sq_labels, self.top, self.bottom, self.vid,
                           self.vcomp, H.mor_names, self.sq_names)

    def table_key(self) -> tuple:
        """Everything except names and labels."""
        H, V = self.horizontal, self.vertical
        return (
            (H.n_obj, H.src, H.tgt, H.ident, tuple(sorted(H.comp.items()))),
            (V.n_obj, V.src, V.tgt, V.ident, tuple(sorted(V.comp.items()))),
            self.top, self.bottom, self.left, self.right,
            tuple(sorted(self.hcomp.items())), tuple(sorted(self.vcomp.items())),
            self.hid, self.vid,
        )

    def key(self) -> tuple:
        return (self.horizontal.key(), self.vertical.key(), self.sq_names, self.table_key())

    def __eq__(self, other) -> bool:
        return isinstance(other, DoubleCategory) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.sq_names, self.top, self.left))

    def __repr__(self) -> str:
        return (f"DoubleCategory({self.n_obj} objects, {self.horizontal.n_mor} hmors, "
                f"{self.vertical.n_mor} vmors, {self.n_sq} squares)")

    # validation

    def failures(self) -> list[err.ValidationError]:
        H, V = self.horizontal, self.vertical
        found: list[err.ValidationError] = []
        if H.n_obj != V.n_obj:
            return [err.BoundaryMismatch("horizontal and vertical object sets differ")]
        found += H.failures()
        found += V.failures()
        if found:
            return found
        for s in range(self.n_sq):
            t, b, l, r = self.boundary(s)
            if (H.src[t] != V.src[l] or H.tgt[t] != V.src[r]
                    or H.src[b] != V.tgt[l] or H.tgt[b] != V.tgt[r]):
                found.append(err.BoundaryMismatch(f"square {self.sq_names[s]} has a broken boundary", s))
        for v in range(V.n_mor):
            s = self.hid[v]
            if self.boundary(s) != (H.ident[V.src[v]], H.ident[V.tgt[v]], v, v):
                found.append(err.BoundaryMismatch(f"horizontal identity on vmor {v} has the wrong boundary", s))
        for h in range(H.n_mor):
            s = self.vid[h]
            if self.boundary(s) != (h, h, V.ident[H.src[h]], V.ident[H.tgt[h]]):
                found.append(err.BoundaryMismatch(f"vertical identity on hmor {h} has the wrong boundary", s))
        if found:
            return found
        for x in range(H.n_obj):
            if self.hid[V.ident[x]] != self.vid[H.ident[x]]:
                found.append(err.BoundaryMismatch(f"the two identity squares on object {x} differ", x))
        for (s2, s1), s in self.hcomp.items():
            expect = (H.comp.get((self.top[s2], self.top[s1])), H.comp.get((self.bottom[s2], self.bottom[s1])),
                      self.left[s1], self.right[s2])
            if self.right[s1] == self.left[s2] and self.boundary(s) != expect:
                found.append(err.BoundaryMismatch(f"horizontal composite ({s2}, {s1}) has the wrong boundary", (s2, s1)))
        for (s2, s1), s in self.vcomp.items():
            expect = (self.top[s1], self.bottom[s2], V.comp.get((self.left[s2], self.left[s1])),
                      V.comp.get((self.right[s2], self.right[s1])))
            if self.bottom[s1] == self.top[s2] and self.boundary(s) != expect:
                found.append(err.BoundaryMismatch(f"vertical composite ({s2}, {s1}) has the wrong boundary", (s2, s1)))
        if found:
            return found
        found += self.square_hcat.failures()
        found += self.square_vcat.failures()
        if found:
            return found
        for (g, f), gf in H.comp.items():
            if self.hcomp[(self.vid[g], self.vid[f])] != self.vid[gf]:
                found.append(err.BoundaryMismatch(f"vertical identities do not compose at ({g}, {f})", (g, f)))
        for (g, f), gf in V.comp.items():
            if self.vcomp[(self.hid[g], self.hid[f])] != self.hid[gf]:
                found.append(err.BoundaryMismatch(f"horizontal identities do not compose at ({g}, {f})", (g, f)))
        if found:
            return found
        return self.interchange_failures()

    def interchange_failures(self) -> list[err.ValidationError]:
        found: list[err.ValidationError] = []
        hcat, vcat = self.square_hcat, self.square_vcat
        for a in range(self.n_sq):                   # upper left
            for b in hcat.out_mor[self.right[a]]:     # upper right
                for c in vcat.out_mor[self.bottom[a]]:  # lower left
                    for d in vcat.out_mor[self.bottom[b]]:  # lower right
                        if self.left[d] != self.right[c]:
                            continue
                        rows = self.vcomp[(self.hcomp[(d, c)], self.hcomp[(b, a)])]
                        cols = self.hcomp[(self.vcomp[(d, b)], self.vcomp[(c, a)])]
                        if rows != cols:
                            found.append(err.InterchangeFailure("interchange law fails", (a, b, c, d)))
        return found

    def validate(self) -> "DoubleCategory":
        err.raise_report(self.failures())
        return self


# serialization

def double_to_raw(D: DoubleCategory) -> dict:
    H, V = to_raw(D.horizontal), to_raw(D.vertical)
    return {
        "objects": H["objects"],
        "hmors": H["morphisms"],
        "hidentities": H["identities"],
        "hcomposition": H["composition"],
        "vmors": V["morphisms"],
        "videntities": V["identities"],
        "vcomposition": V["composition"],
        "squares": [
            {"name": D.sq_names[s], "top": D.top[s], "bottom": D.bottom[s],
             "left": D.left[s], "right": D.right[s]} for s in range(D.n_sq)
        ],
        "square_hcomposition": [[a, b, c] for (a, b), c in sorted(D.hcomp.items())],
        "square_vcomposition": [[a, b, c] for (a, b), c in sorted(D.vcomp.items())],
        "square_hidentities": {str(v): s for v, s in enumerate(D.hid)},
        "square_videntities": {str(h): s for h, s in enumerate(D.vid)},
    }


def _id_table(raw, n: int, bound: int, what: str) -> tuple:
    if isinstance(raw, list):
        raw = {str(i): v for i, v in enumerate(raw)}
    out = []
    for k in range(n):
        v = raw.get(str(k))
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
            raise err.ParseError(f"{what} entry {k} missing or dangling", path=(what,))
        out.append(v)
    return tuple(out)


def _comp_table(rows, bound: int, what: str) -> dict:
    table: dict = {}
    for k, row in enumerate(rows):
        if (not isinstance(row, list) or len(row) != 3
                or not all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < bound for v in row)):
            raise err.ParseError(f"{what} row {row!r} is malformed or dangling", path=(what, k))
        table[(row[0], row[1])] = row[2]
    return table


def _edge_category(raw: dict, prefix: str) -> FinCategory:
    keys = {"morphisms": prefix + "mors", "identities": prefix + "identities",
            "composition": prefix + "composition"}
    try:
        return parse_category({"objects": raw["objects"], "morphisms": raw[keys["morphisms"]],
                               "identities": raw[keys["identities"]],
                               "composition": raw[keys["composition"]]})
    except err.ParseError as exc:
        path = (keys.get(exc.path[0], exc.path[0]),) + exc.path[1:] if exc.path else ()
        raise err.ParseError(str(exc), path=path) from None


def parse_double(raw: dict) -> DoubleCategory:
    try:
        H = _edge_category(raw, "h")
        V = _edge_category(raw, "v")
        sq = raw["squares"]
        names, cols = [], {"top": [], "bottom": [], "left": [], "right": []}
        for k, s in enumerate(sq):
            names.append(str(s.get("name", k)))
            for edge, bound in (("top", H.n_mor), ("bottom", H.n_mor), ("left", V.n_mor), ("right", V.n_mor)):
                v = s[edge]
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
                    raise err.ParseError(f"square {k} has a dangling {edge} edge", path=("squares", k))
                cols[edge].append(v)
        n = len(sq)
        hc = _comp_table(raw["square_hcomposition"], n, "square_hcomposition")
        vc = _comp_table(raw["square_vcomposition"], n, "square_vcomposition")
        hid = _id_table(raw["square_hidentities"], V.n_mor, n, "square_hidentities")
        vid = _id_table(raw["square_videntities"], H.n_mor, n, "square_videntities")
    except (KeyError, TypeError, AttributeError) as exc:
        raise err.ParseError(f"malformed double category: {exc}") from None
    return DoubleCategory(H, V, tuple(names), tuple(cols["top"]), tuple(cols["bottom"]),
                          tuple(cols["left"]), tuple(cols["right"]), hc, vc, hid, vid, tuple(names))


def validate_double(raw: dict) -> DoubleCategory:
    return parse_double(raw).validate()


# constructions

def boxtimes(C: FinCategory, D: FinCategory) -> DoubleCategory:
    """Horizontal morphisms from ``C``, vertical ones from ``D``, squares ``Mor C × Mor D``."""
    objs = [(c, d) for c in C.obj_labels for d in D.obj_labels]
    cid = lambda o: C.mor_labels[C.ident[C.obj_id[o]]]
    did = lambda o: D.mor_labels[D.ident[D.obj_id[o]]]
    cs = lambda f: C.obj_labels[C.src[C.mor_id[f]]]
    ct = lambda f: C.obj_labels[C.tgt[C.mor_id[f]]]
    ds = lambda g: D.obj_labels[D.src[D.mor_id[g]]]
    dt = lambda g: D.obj_labels[D.tgt[D.mor_id[g]]]
    ccomp = lambda g, f: C.mor_labels[C.comp[(C.mor_id[g], C.mor_id[f])]]
    dcomp = lambda g, f: D.mor_labels[D.comp[(D.mor_id[g], D.mor_id[f])]]

    H = FinCategory.build(
        objs,
        [((f, d), (cs(f), d), (ct(f), d)) for f in C.mor_labels for d in D.obj_labels],
        lambda o: (cid(o[0]), o[1]),
        lambda g, f: (ccomp(g[0], f[0]), f[1]),
    )
    V = FinCategory.build(
        objs,
        [((c, g), (c, ds(g)), (c, dt(g))) for c in C.obj_labels for g in D.mor_labels],
        lambda o: (o[0], did(o[1])),
        lambda g, f: (f[0], dcomp(g[1], f[1])),
    )
    squares = [((f, g), (f, ds(g)), (f, dt(g)), (cs(f), g), (ct(f), g))
               for f in C.mor_labels for g in D.mor_labels]
    return DoubleCategory.build(
        H, V, squares,
        lambda s2, s1: (ccomp(s2[0], s1[0]), s1[1]),
        lambda lo, up: (up[0], dcomp(lo[1], up[1])),
        lambda v: (cid(v[0]), v[1]),
        lambda h: (h[0], did(h[1])),
    )


def horop(D: DoubleCategory) -> DoubleCategory:
    return DoubleCategory(opposite(D.horizontal), D.vertical, D.sq_labels, D.top, D.bottom,
                          D.right, D.left, {(b, a): c for (a, b), c in D.hcomp.items()},
                          dict(D.vcomp), D.hid, D.vid, D.sq_names)


def verop(D: DoubleCategory) -> DoubleCategory:
    return DoubleCategory(D.horizontal, opposite(D.vertical), D.sq_labels, D.bottom, D.top,
                          D.left, D.right, dict(D.hcomp),
                          {(b, a): c for (a, b), c in D.vcomp.items()}, D.hid, D.vid, D.sq_names)


def swap(D: DoubleCategory) -> DoubleCategory:
    """Exchange the horizontal and vertical directions (transpose every square)."""
    return DoubleCategory(D.vertical, D.horizontal, D.sq_labels, D.left, D.right, D.top,
                          D.bottom, dict(D.vcomp), dict(D.hcomp), D.vid, D.hid, D.sq_names)


def fullop(D: DoubleCategory) -> DoubleCategory:
    return horop(verop(D))


def is_factorization_double(D: DoubleCategory) -> Verdict:
    """Every corner (left vmor ``v``, bottom hmor ``h``) has exactly one filler."""
    H, V = D.horizontal, D.vertical
    for v in range(V.n_mor):
        for h in H.out_mor[V.tgt[v]]:
            fillers = D.by_corner.get((v, h), ())
            if len(fillers) != 1:
                return Verdict(False, {"left": v, "bottom": h, "fillers": list(fillers)})
    return Verdict(True)


def is_2category(D: DoubleCategory) -> bool:
    return all(D.vertical.is_identity(v) for v in range(D.vertical.n_mor))


def delooping(elements, mult, unit, hmult=None) -> DoubleCategory:
    """One object, identity edges, squares ``elements``.

    ``mult(a, b)`` is the vertical composite (``a`` below ``b``); ``hmult(a, b)`` the
    horizontal one (``a`` right of ``b``), defaulting to ``mult``. Interchange
    holds exactly when the two agree and are commutative.
    """
    hmult = hmult or mult
    elems = tuple(elements)
    pt = FinCategory.build(("*",), [("1", "*", "*")], lambda _: "1", lambda g, f: "1")
    squares = [(e, "1", "1", "1", "1") for e in elems]
    return DoubleCategory.build(pt, pt, squares, hmult, mult, lambda _: unit, lambda _: unit)


# grids

def grid(D: DoubleCategory, m: int, n: int, budget=None) -> list:
    """All ``m × n`` grids of squares.

    ``grid(D, 0, 0)`` are objects as 1-tuples, ``grid(D, m, 0)`` horizontal chains
    and ``grid(D, 0, n)`` vertical chains (as in :func:`nerve_chains`). Otherwise a
    grid is a tuple of ``m`` columns, each a tuple of ``n`` squares read top to bottom.
    """
    if m < 0 or n < 0:
        raise ValueError("grid dimensions must be non-negative")
    if n == 0:
        return nerve_chains(D.horizontal, m)
    if m == 0:
        return nerve_chains(D.vertical, n)
    columns = nerve_chains(D.square_vcat, n)
    by_left: dict = {}
    for col in columns:
        by_left.setdefault(tuple(D.left[s] for s in col), []).append(col)

    from .search import meter
    mt = meter(budget)
    grids = [(col,) for col in columns]
    for _ in range(m - 1):
        nxt = []
        for g in grids:
            edge = tuple(D.right[s] for s in g[-1])
            for col in by_left.get(edge, ()):
                mt.tick()
                nxt.append(g + (col,))
        grids = nxt
    return sorted(grids)


def hface(D: DoubleCategory, cell, m: int, n: int, i: int):
    """Horizontal face ``d_i`` of an ``(m, n)`` cell."""
    if n == 0:
        return chain_face(D.horizontal, cell, m, i)
    if m == 1:
        col = cell[0]
        return tuple(D.right[s] for s in col) if i == 0 else tuple(D.left[s] for s in col)
    if i == 0:
        return cell[1:]
    if i == m:
        return cell[:-1]
    a, b = cell[i - 1], cell[i]
    merged = tuple(D.hcomp[(b[k], a[k])] for k in range(n))
    return cell[:i - 1] + (merged,) + cell[i + 1:]


def vface(D: DoubleCategory, cell, m: int, n: int, i: int):
    """Vertical face ``d_i`` of an ``(m, n)`` cell."""
    if m == 0:
        return chain_face(D.vertical, cell, n, i)
    if n == 1:
        return tuple(D.bottom[c[0]] for c in cell) if i == 0 else tuple(D.top[c[0]] for c in cell)
    if i == 0:
        return tuple(c[1:] for c in cell)
    if i == n:
        return tuple(c[:-1] for c in cell)
    return tuple(c[:i - 1] + (D.vcomp[(c[i], c[i - 1])],) + c[i + 1:] for c in cell)


def hdegeneracy(D: DoubleCategory, cell, m: int, n: int, j: int):
    if n == 0:
        return chain_degeneracy(D.horizontal, cell, m, j)
    if m == 0:
        return (tuple(D.hid[v] for v in cell),)
    edge = (tuple(D.left[s] for s in cell[j]) if j < m else tuple(D.right[s] for s in cell[m - 1]))
    return cell[:j] + (tuple(D.hid[v] for v in edge),) + cell[j:]


def vdegeneracy(D: DoubleCategory, cell, m: int, n: int, j: int):
    if m == 0:
        return chain_degeneracy(D.vertical, cell, n, j)
    if n == 0:
        return tuple((D.vid[h],) for h in cell)
    out = []
    for c in cell:
        h = D.top[c[j]] if j < n else D.bottom[c[n - 1]]
        out.append(c[:j] + (D.vid[h],) + c[j:])
    return tuple(out)


def column_category(D: DoubleCategory, n: int) -> FinCategory:
    """Objects: horizontal ``n``-chains; morphisms: ``n × 1`` grids, stacked vertically."""
    objects = grid(D, n, 0)
    cells = grid(D, n, 1)
    mors = [(c, vface(D, c, n, 1, 1), vface(D, c, n, 1, 0)) for c in cells]

    def compose(lower, upper):
        if n == 0:
            return (D.vertical.comp[(lower[0], upper[0])],)
        return tuple((D.vcomp[(lo[0], up[0])],) for lo, up in zip(lower, upper))

    return FinCategory.build(objects, mors, lambda o: vdegeneracy(D, o, n, 0, 0), compose)


# double functors

@dataclass(frozen=True)
class DblFunctor:
    source: DoubleCategory
    target: DoubleCategory
    obj_map: tuple
    hmor_map: tuple
    vmor_map: tuple
    sq_map: tuple

    @property
    def horizontal(self) -> Functor:
        return Functor(self.source.horizontal, self.target.horizontal, self.obj_map, self.hmor_map)

    @property
    def vertical(self) -> Functor:
        return Functor(self.source.vertical, self.target.vertical, self.obj_map, self.vmor_map)

    def failures(self) -> list[err.ValidationError]:
        S, T = self.source, self.target
        found = self.horizontal.failures() + self.vertical.failures()
        if found:
            return found
        for s in range(S.n_sq):
            t = self.sq_map[s]
            if T.boundary(t) != (self.hmor_map[S.top[s]], self.hmor_map[S.bottom[s]],
                                 self.vmor_map[S.left[s]], self.vmor_map[S.right[s]]):
                found.append(err.FunctorFailure(f"square {S.sq_names[s]} boundary not preserved", s))
        for v in range(S.vertical.n_mor):
            if self.sq_map[S.hid[v]] != T.hid[self.vmor_map[v]]:
                found.append(err.FunctorFailure("horizontal identity square not preserved", v))
        for h in range(S.horizontal.n_mor):
            if self.sq_map[S.vid[h]] != T.vid[self.hmor_map[h]]:
                found.append(err.FunctorFailure("vertical identity square not preserved", h))
        if found:
            return found
        for (a, b), c in S.hcomp.items():
            if T.hcomp[(self.sq_map[a], self.sq_map[b])] != self.sq_map[c]:
                found.append(err.FunctorFailure("horizontal square composite not preserved", (a, b)))
        for (a, b), c in S.vcomp.items():
            if T.vcomp[(self.sq_map[a], self.sq_map[b])] != self.sq_map[c]:
                found.append(err.FunctorFailure("vertical square composite not preserved", (a, b)))
        return found

    def validate(self) -> "DblFunctor":
        err.raise_report(self.failures())
        return self

    def is_iso(self) -> bool:
        S, T = self.source, self.target
        return all(sorted(mp) == list(range(n)) for mp, n in (
            (self.obj_map, T.n_obj), (self.hmor_map, T.horizontal.n_mor),
            (self.vmor_map, T.vertical.n_mor), (self.sq_map, T.n_sq))) and len(self.sq_map) == S.n_sq

    def map_cell(self, cell, m: int, n: int):
        if m == 0 and n == 0:
            return (self.obj_map[cell[0]],)
        if n == 0:
            return tuple(self.hmor_map[h] for h in cell)
        if m == 0:
            return tuple(self.vmor_map[v] for v in cell)
        return tuple(tuple(self.sq_map[s] for s in col) for col in cell)

    def column_functor(self, n: int) -> Functor:
        """The induced functor ``F(n, −)`` between column categories."""
        A, B = column_category(self.source, n), column_category(self.target, n)
        return Functor(A, B,
                       tuple(B.obj_id[self.map_cell(o, n, 0)] for o in A.obj_labels),
                       tuple(B.mor_id[self.map_cell(c, n, 1)] for c in A.mor_labels))


def identity_dbl_functor(D: DoubleCategory) -> DblFunctor:
    return DblFunctor(D, D, tuple(range(D.n_obj)), tuple(range(D.horizontal.n_mor)),
                      tuple(range(D.vertical.n_mor)), tuple(range(D.n_sq)))


def compose_dbl_functors(G: DblFunctor, F: DblFunctor) -> DblFunctor:
    return DblFunctor(F.source, G.target,
                      tuple(G.obj_map[x] for x in F.obj_map),
                      tuple(G.hmor_map[x] for x in F.hmor_map),
                      tuple(G.vmor_map[x] for x in F.vmor_map),
                      tuple(G.sq_map[x] for x in F.sq_map))


def inverse_dbl_functor(F: DblFunctor) -> DblFunctor:
    def inv(mp):
        out = [0] * len(mp)
        for a, b in enumerate(mp):
            out[b] = a
        return tuple(out)
    return DblFunctor(F.target, F.source, inv(F.obj_map), inv(F.hmor_map), inv(F.vmor_map), inv(F.sq_map))


def dual_functor(F: DblFunctor, op: Callable) -> DblFunctor:
    """Apply a duality (``horop``, ``verop``, ``swap`` or ``fullop``) to a double functor."""
    S, T = op(F.source), op(F.target)
    if op is swap:
        return DblFunctor(S, T, F.obj_map, F.vmor_map, F.hmor_map, F.sq_map)
    return DblFunctor(S, T, F.obj_map, F.hmor_map, F.vmor_map, F.sq_map)


def enumerate_dbl_functors(S: DoubleCategory, T: DoubleCategory, budget=None) -> list[DblFunctor]:
    """All double functors ``S → T``, sorted by their maps."""
    H, V = S.horizontal, S.vertical
    TH, TV = T.horizontal, T.vertical
    hid_of = {s: v for v, s in enumerate(S.hid)}
    vid_of = {s: h for h, s in enumerate(S.vid)}

    order: list[tuple[str, int]] = []
    for x in range(S.n_obj):
        order.append(("o", x))
        order += [("h", h) for h in range(H.n_mor) if not H.is_identity(h) and max(H.src[h], H.tgt[h]) == x]
        order += [("v", v) for v in range(V.n_mor) if not V.is_identity(v) and max(V.src[v], V.tgt[v]) == x]
        for s in range(S.n_sq):
            if s in hid_of or s in vid_of:
                continue
            corners = (H.src[S.top[s]], H.tgt[S.top[s]], H.src[S.bottom[s]], H.tgt[S.bottom[s]])
            if max(corners) == x:
                order.append(("s", s))
    pos = {v: k for k, v in enumerate(order)}

    def dep(kind: str, i: int) -> int:
        if (kind, i) in pos:
            return pos[(kind, i)]
        if kind == "h":
            return pos[("o", H.src[i])]
        if kind == "v":
            return pos[("o", V.src[i])]
        if i in hid_of:
            return dep("v", hid_of[i])
        return dep("h", vid_of[i])

    def value(assign, kind: str, i: int):
        if (kind, i) in pos:
            return assign[pos[(kind, i)]]
        if kind == "h":
            return TH.ident[assign[pos[("o", H.src[i])]]]
        if kind == "v":
            return TV.ident[assign[pos[("o", V.src[i])]]]
        if i in hid_of:
            return T.hid[value(assign, "v", hid_of[i])]
        return T.vid[value(assign, "h", vid_of[i])]

    tables = (("h", H.comp, TH.comp), ("v", V.comp, TV.comp), ("s", S.hcomp, T.hcomp), ("s", S.vcomp, T.vcomp))
    checks: list[list] = [[] for _ in order]
    for kind, src_table, tgt_table in tables:
        for (g, f), gf in src_table.items():
            at = max(dep(kind, g), dep(kind, f), dep(kind, gf))
            checks[at].append((kind, g, f, gf, tgt_table))

    def domain(k, assign):
        kind, i = order[k]
        if kind == "o":
            return range(T.n_obj)
        if kind == "h":
            return TH.homset(assign[pos[("o", H.src[i])]], assign[pos[("o", H.tgt[i])]])
        if kind == "v":
            return TV.homset(assign[pos[("o", V.src[i])]], assign[pos[("o", V.tgt[i])]])
        b = (value(assign, "h", S.top[i]), value(assign, "h", S.bottom[i]),
             value(assign, "v", S.left[i]), value(assign, "v", S.right[i]))
        return T.by_boundary.get(b, ())

    def check(k, assign):
        for kind, g, f, gf, table in checks[k]:
            if table[(value(assign, kind, g), value(assign, kind, f))] != value(assign, kind, gf):
                return False
        return True

    out = []
    for assign in backtrack(len(order), domain, check, budget):
        out.append(DblFunctor(
            S, T,
            tuple(assign[pos[("o", x)]] for x in range(S.n_obj)),
            tuple(value(assign, "h", h) for h in range(H.n_mor)),
            tuple(value(assign, "v", v) for v in range(V.n_mor)),
            tuple(value(assign, "s", s) for s in range(S.n_sq)),
        ))
    out.sort(key=lambda F: (F.obj_map, F.hmor_map, F.vmor_map, F.sq_map))
    return out


def find_dbl_isomorphisms(S: DoubleCategory, T: DoubleCategory, budget=None) -> list[DblFunctor]:
    sizes = lambda D: (D.n_obj, D.horizontal.n_mor, D.vertical.n_mor, D.n_sq)
    if sizes(S) != sizes(T):
        return []
    return [F for F in enumerate_dbl_functors(S, T, budget) if F.is_iso()]


# truncated bisimplicial sets

LEVELS = tuple((m, n) for m in range(3) for n in range(3))


@dataclass(frozen=True)
class BisimTrunc:
    """Cells ``(m, n)`` for ``m, n ≤ 2`` with face and degeneracy maps as dicts.

    ``hfaces[(m, n, i)]`` maps ``(m, n)`` cells to ``(m-1, n)`` cells, ``vfaces``
    likewise in the second index; ``hdegen[(m, n, j)]`` goes to ``(m+1, n)`` and is
    only present when ``m + 1 ≤ 2``.
    """

    cells: dict
    hfaces: dict
    vfaces: dict
    hdegen: dict
    vdegen: dict


def double_to_bisim(D: DoubleCategory) -> BisimTrunc:
    cells = {(m, n): grid(D, m, n) for m, n in LEVELS}
    hf, vf, hd, vd = {}, {}, {}, {}
    for m, n in LEVELS:
        for i in range(m + 1):
            if m >= 1:
                hf[(m, n, i)] = {c: hface(D, c, m, n, i) for c in cells[(m, n)]}
        for i in range(n + 1):
            if n >= 1:
                vf[(m, n, i)] = {c: vface(D, c, m, n, i) for c in cells[(m, n)]}
        if m < 2:
            for j in range(m + 1):
                hd[(m, n, j)] = {c: hdegeneracy(D, c, m, n, j) for c in cells[(m, n)]}
        if n < 2:
            for j in range(n + 1):
                vd[(m, n, j)] = {c: vdegeneracy(D, c, m, n, j) for c in cells[(m, n)]}
    return BisimTrunc(cells, hf, vf, hd, vd)


def rezk_bisim(C: FinCategory, D: FinCategory) -> BisimTrunc:
    """Product of nerves: cells ``(m, n)`` are pairs (m-chain of C, n-chain of D)."""
    cells = {(m, n): [(a, b) for a in nerve_chains(C, m) for b in nerve_chains(D, n)] for m, n in LEVELS}
    hf, vf, hd, vd = {}, {}, {}, {}
    for m, n in LEVELS:
        cs = cells[(m, n)]
        for i in range(m + 1):
            if m >= 1:
                hf[(m, n, i)] = {c: (chain_face(C, c[0], m, i), c[1]) for c in cs}
        for i in range(n + 1):
            if n >= 1:
                vf[(m, n, i)] = {c: (c[0], chain_face(D, c[1], n, i)) for c in cs}
        if m < 2:
            for j in range(m + 1):
                hd[(m, n, j)] = {c: (chain_degeneracy(C, c[0], m, j), c[1]) for c in cs}
        if n < 2:
            for j in range(n + 1):
                vd[(m, n, j)] = {c: (c[0], chain_degeneracy(D, c[1], n, j)) for c in cs}
    return BisimTrunc(cells, hf, vf, hd, vd)


def _simplicial_failures(B: BisimTrunc) -> list[err.ValidationError]:
    found: list[err.ValidationError] = []
    for faces, shift in ((B.hfaces, (1, 0)), (B.vfaces, (0, 1))):
        for (m, n, j), dj in faces.items():
            k = m if shift == (1, 0) else n
            lower = (m - shift[0], n - shift[1])
            for i in range(j):
                if (lower[0], lower[1], i) not in faces or (m, n, i) not in faces:
                    continue
                di_lower = faces[(lower[0], lower[1], i)]
                dj1_lower = faces.get((lower[0], lower[1], j - 1))
                di = faces[(m, n, i)]
                if dj1_lower is None or k < 2:
                    continue
                for c in B.cells[(m, n)]:
                    if di_lower[dj[c]] != dj1_lower[di[c]]:
                        found.append(err.SimplicialIdentityFailure(
                            "face identity d_i d_j = d_(j-1) d_i fails", ((m, n), i, j)))
                        break
    for (m, n, i), dh in B.hfaces.items():
        for (m2, n2, k), dv in B.vfaces.items():
            if (m2, n2) != (m, n):
                continue
            dv_low = B.vfaces.get((m - 1, n, k))
            dh_low = B.hfaces.get((m, n - 1, i))
            if dv_low is None or dh_low is None:
                continue
            for c in B.cells[(m, n)]:
                if dv_low[dh[c]] != dh_low[dv[c]]:
                    found.append(err.SimplicialIdentityFailure(
                        "horizontal and vertical faces do not commute", ((m, n), i, k)))
                    break
    for degen, faces in ((B.hdegen, B.hfaces), (B.vdegen, B.vfaces)):
        for (m, n, j), sj in degen.items():
            up = (m + 1, n) if degen is B.hdegen else (m, n + 1)
            for i in (j, j + 1):
                di = faces.get((up[0], up[1], i))
                if di is None:
                    continue
                for c in B.cells[(m, n)]:
                    if di[sj[c]] != c:
                        found.append(err.SimplicialIdentityFailure(
                            "degeneracy is not a section of the adjacent faces", ((m, n), i, j)))
                        break
    return found


def _segal_map(B: BisimTrunc, level: tuple[int, int], direction: str) -> dict:
    """Map a level-2 cell to its pair of spine cells; raise if not a bijection."""
    m, n = level
    if direction == "h":
        first, second = B.hfaces[(m, n, 2)], B.hfaces[(m, n, 0)]
        joint_a, joint_b = B.hfaces[(1, n, 0)], B.hfaces[(1, n, 1)]
        edges = B.cells[(1, n)]
    else:
        first, second = B.vfaces[(m, n, 2)], B.vfaces[(m, n, 0)]
        joint_a, joint_b = B.vfaces[(m, 1, 0)], B.vfaces[(m, 1, 1)]
        edges = B.cells[(m, 1)]
    pairs = {(a, b) for a in edges for b in edges if joint_a[a] == joint_b[b]}
    image: dict = {}
    for c in B.cells[(m, n)]:
        key = (first[c], second[c])
        if key in image or key not in pairs:
            raise err.SegalFailure(f"Segal map at {level} ({direction}) is not injective", level)
        image[key] = c
    if len(image) != len(pairs):
        raise err.SegalFailure(f"Segal map at {level} ({direction}) is not surjective", level)
    return image


def bisim_to_double(B: BisimTrunc) -> DoubleCategory:
    """Check the Segal conditions and extract strict composition tables."""
    err.raise_report(_simplicial_failures(B))
    h2 = _segal_map(B, (2, 0), "h")
    v2 = _segal_map(B, (0, 2), "v")
    s_h = _segal_map(B, (2, 1), "h")
    s_v = _segal_map(B, (1, 2), "v")
    _segal_map(B, (2, 2), "h")
    _segal_map(B, (2, 2), "v")

    objs = B.cells[(0, 0)]
    hm, vm, sq = B.cells[(1, 0)], B.cells[(0, 1)], B.cells[(1, 1)]
    H = FinCategory.build(
        objs, [(h, B.hfaces[(1, 0, 1)][h], B.hfaces[(1, 0, 0)][h]) for h in hm],
        lambda o: B.hdegen[(0, 0, 0)][o],
        lambda g, f: B.hfaces[(2, 0, 1)][h2[(f, g)]],
    )
    V = FinCategory.build(
        objs, [(v, B.vfaces[(0, 1, 1)][v], B.vfaces[(0, 1, 0)][v]) for v in vm],
        lambda o: B.vdegen[(0, 0, 0)][o],
        lambda g, f: B.vfaces[(0, 2, 1)][v2[(f, g)]],
    )
    squares = [(s, B.vfaces[(1, 1, 1)][s], B.vfaces[(1, 1, 0)][s],
                B.hfaces[(1, 1, 1)][s], B.hfaces[(1, 1, 0)][s]) for s in sq]
    D = DoubleCategory.build(
        H, V, squares,
        lambda s2, s1: B.hfaces[(2, 1, 1)][s_h[(s1, s2)]],
        lambda lo, up: B.vfaces[(1, 2, 1)][s_v[(up, lo)]],
        lambda v: B.hdegen[(0, 1, 0)][v],
        lambda h: B.vdegen[(1, 0, 0)][h],
    )
    found = D.failures()
    if found:
        exc = err.NonAssociativeExtraction("extracted tables violate the double category axioms",
                                           [f.code for f in found])
        exc.report = [exc] + found
        raise exc
    return D


def relabel(D: DoubleCategory, obj_names, hmor_names, vmor_names, sq_names) -> DoubleCategory:
    """Same tables, new names (labels become the names)."""
    H, V = D.horizontal, D.vertical
    H2 = FinCategory(tuple(obj_names), tuple(hmor_names), H.src, H.tgt, H.ident, H.comp,
                     tuple(obj_names), tuple(hmor_names))
    V2 = FinCategory(tuple(obj_names), tuple(vmor_names), V.src, V.tgt, V.ident, V.comp,
                     tuple(obj_names), tuple(vmor_names))
    return DoubleCategory(H2, V2, tuple(sq_names), D.top, D.bottom, D.left, D.right, D.hcomp,
                          D.vcomp, D.hid, D.vid, tuple(sq_names))
