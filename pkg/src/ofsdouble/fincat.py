"""Finite strict categories, functors and natural transformations.

Objects and morphisms are dense integer ids. Each category also keeps a hashable
*label* per object and morphism (what the id stands for in the construction that
produced it) and a string *name* used for serialization.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable

from . import errors as err
from .search import backtrack


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def fmt_label(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(fmt_label(x) for x in label) + ")"
    return str(label)


def _unique_names(labels) -> tuple[str, ...]:
    names = [fmt_label(lbl) for lbl in labels]
    if len(set(names)) != len(names):
        names = [f"{n}#{i}" for i, n in enumerate(names)]
    return tuple(names)


@dataclass(frozen=True, eq=False)
class FinCategory:
    obj_labels: tuple
    mor_labels: tuple
    src: tuple
    tgt: tuple
    ident: tuple
    comp: dict
    obj_names: tuple
    mor_names: tuple

    # construction

    @classmethod
    def build(
        cls,
        objects: Iterable[Hashable],
        morphisms: Iterable[tuple],
        identity: Callable,
        compose: Callable,
        obj_names=None,
        mor_names=None,
    ) -> "FinCategory":
        """Assemble a category from labels.

        ``morphisms`` yields ``(label, src_label, tgt_label)``; ``identity`` maps an
        object label to a morphism label and ``compose(g, f)`` returns the label of
        ``g∘f``. Nothing is validated here; call :meth:`failures` for that.
        """
        objects = tuple(objects)
        mors = tuple(morphisms)
        obj_id = {o: i for i, o in enumerate(objects)}
        mor_labels = tuple(m[0] for m in mors)
        mor_id = {m: i for i, m in enumerate(mor_labels)}
        src = tuple(obj_id[m[1]] for m in mors)
        tgt = tuple(obj_id[m[2]] for m in mors)
        ident = tuple(mor_id[identity(o)] for o in objects)
        incoming: list[list[int]] = [[] for _ in objects]
        outgoing: list[list[int]] = [[] for _ in objects]
        for f in range(len(mors)):
            incoming[tgt[f]].append(f)
            outgoing[src[f]].append(f)
        comp = {}
        for y in range(len(objects)):
            for f in incoming[y]:
                for g in outgoing[y]:
                    comp[(g, f)] = mor_id[compose(mor_labels[g], mor_labels[f])]
        return cls(
            objects,
            mor_labels,
            src,
            tgt,
            ident,
            comp,
            tuple(obj_names) if obj_names is not None else _unique_names(objects),
            tuple(mor_names) if mor_names is not None else _unique_names(mor_labels),
        )

    # basic queries

    @property
    def n_obj(self) -> int:
        return len(self.obj_labels)

    @property
    def n_mor(self) -> int:
        return len(self.mor_labels)

    @cached_property
    def obj_id(self) -> dict:
        return {lbl: i for i, lbl in enumerate(self.obj_labels)}

    @cached_property
    def mor_id(self) -> dict:
        return {lbl: i for i, lbl in enumerate(self.mor_labels)}

    @cached_property
    def hom(self) -> dict:
        table: dict = {}
        for f in range(self.n_mor):
            table.setdefault((self.src[f], self.tgt[f]), []).append(f)
        return {k: tuple(v) for k, v in table.items()}

    def homset(self, x: int, y: int) -> tuple:
        return self.hom.get((x, y), ())

    @cached_property
    def out_mor(self) -> tuple:
        out: list[list[int]] = [[] for _ in range(self.n_obj)]
        for f in range(self.n_mor):
            out[self.src[f]].append(f)
        return tuple(tuple(o) for o in out)

    @cached_property
    def in_mor(self) -> tuple:
        inc: list[list[int]] = [[] for _ in range(self.n_obj)]
        for f in range(self.n_mor):
            inc[self.tgt[f]].append(f)
        return tuple(tuple(i) for i in inc)

    @cached_property
    def inverse(self) -> tuple:
        """``inverse[f]`` is the inverse of ``f`` or ``None``."""
        inv: list = [None] * self.n_mor
        for f in range(self.n_mor):
            for g in self.homset(self.tgt[f], self.src[f]):
                if (self.comp.get((g, f)) == self.ident[self.src[f]]
                        and self.comp.get((f, g)) == self.ident[self.tgt[f]]):
                    inv[f] = g
                    break
        return tuple(inv)

    @cached_property
    def isos(self) -> frozenset:
        return frozenset(f for f in range(self.n_mor) if self.inverse[f] is not None)

    @cached_property
    def identities(self) -> frozenset:
        return frozenset(self.ident)

    def is_identity(self, f: int) -> bool:
        return self.ident[self.src[f]] == f

    def compose(self, *fs: int) -> int:
        """``compose(h, g, f) = h∘g∘f`` (rightmost applied first)."""
        result = fs[-1]
        for g in reversed(fs[:-1]):
            result = self.comp[(g, result)]
        return result

    def has_nontrivial_isos(self) -> bool:
        return len(self.isos) > self.n_obj

    # equality is on tables and names, not on labels

    def key(self) -> tuple:
        return (self.obj_names, self.mor_names, self.src, self.tgt, self.ident,
                tuple(sorted(self.comp.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, FinCategory) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.obj_names, self.mor_names, self.src, self.tgt))

    def __repr__(self) -> str:
        return f"FinCategory({self.n_obj} objects, {self.n_mor} morphisms)"

    # validation

    def failures(self) -> list[err.ValidationError]:
        found: list[err.ValidationError] = []
        n_obj, n_mor = self.n_obj, self.n_mor
        for x in range(n_obj):
            i = self.ident[x]
            if not (0 <= i < n_mor) or self.src[i] != x or self.tgt[i] != x:
                found.append(err.MissingIdentity(f"object {self.obj_names[x]} has no identity", x))
        if found:
            return found
        for (g, f), gf in self.comp.items():
            if self.src[g] != self.tgt[f]:
                found.append(err.NonComposablePairInTable(
                    f"composite listed for non-composable pair ({g}, {f})", (g, f)))
            elif self.src[gf] != self.src[f] or self.tgt[gf] != self.tgt[g]:
                found.append(err.CompositeBoundaryMismatch(
                    f"composite of ({g}, {f}) has the wrong boundary", (g, f, gf)))
        for f in range(n_mor):
            for g in self.out_mor[self.tgt[f]]:
                if (g, f) not in self.comp:
                    found.append(err.MissingComposite(f"no composite for ({g}, {f})", (g, f)))
        if found:
            return found
        for f in range(n_mor):
            if (self.comp[(self.ident[self.tgt[f]], f)] != f
                    or self.comp[(f, self.ident[self.src[f]])] != f):
                found.append(err.UnitFailure(f"unit law fails for {self.mor_names[f]}", f))
        for f in range(n_mor):
            for g in self.out_mor[self.tgt[f]]:
                gf = self.comp[(g, f)]
                for h in self.out_mor[self.tgt[g]]:
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        found.append(err.AssociativityFailure(
                            f"associativity fails for ({h}, {g}, {f})", (h, g, f)))
        return found

    def validate(self) -> "FinCategory":
        err.raise_report(self.failures())
        return self


# serialization (raw tables)

def to_raw(C: FinCategory) -> dict:
    return {
        "objects": list(C.obj_names),
        "morphisms": [
            {"name": C.mor_names[f], "src": C.src[f], "tgt": C.tgt[f]} for f in range(C.n_mor)
        ],
        "identities": {str(x): C.ident[x] for x in range(C.n_obj)},
        "composition": [[g, f, gf] for (g, f), gf in sorted(C.comp.items())],
    }


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise err.ParseError(f"{what} must be an integer id, got {value!r}")
    return value


def parse_category(raw: dict) -> FinCategory:
    """Read raw tables into an (unvalidated) category; dangling ids are parse errors."""
    try:
        objects = [str(o) for o in raw["objects"]]
        mors = raw["morphisms"]
        idents = raw["identities"]
        table = raw["composition"]
    except (KeyError, TypeError) as exc:
        raise err.ParseError(f"missing category field {exc}") from None
    n_obj, n_mor = len(objects), len(mors)
    names, src, tgt = [], [], []
    for k, m in enumerate(mors):
        try:
            s, t = _as_int(m["src"], "src"), _as_int(m["tgt"], "tgt")
        except (KeyError, TypeError, err.ParseError):
            raise err.ParseError(f"morphism {k} needs integer src and tgt", path=("morphisms", k)) from None
        if not (0 <= s < n_obj and 0 <= t < n_obj):
            raise err.ParseError(f"morphism {k} references a missing object", path=("morphisms", k))
        names.append(str(m.get("name", k)))
        src.append(s)
        tgt.append(t)
    if isinstance(idents, list):
        idents = {str(i): v for i, v in enumerate(idents)}
    ident = []
    for x in range(n_obj):
        i = idents.get(str(x), -1)
        try:
            i = _as_int(i, "identity")
        except err.ParseError as exc:
            raise err.ParseError(str(exc), path=("identities",)) from None
        if i != -1 and not 0 <= i < n_mor:
            raise err.ParseError(f"identity of object {x} references a missing morphism", path=("identities",))
        ident.append(i)
    comp: dict = {}
    for k, row in enumerate(table):
        where = ("composition", k)
        if not isinstance(row, list) or len(row) != 3:
            raise err.ParseError(f"composition rows are [g, f, g∘f], got {row!r}", path=where)
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise err.ParseError(f"composition row {row!r} must hold integer ids", path=where)
        g, f, gf = row
        if not all(0 <= v < n_mor for v in (g, f, gf)):
            raise err.ParseError(f"composition row {row!r} references a missing morphism", path=where)
        if (g, f) in comp and comp[(g, f)] != gf:
            raise err.ParseError(f"composition row {row!r} conflicts with an earlier row", path=where)
        comp[(g, f)] = gf
    return FinCategory(tuple(objects), tuple(names), tuple(src), tuple(tgt), tuple(ident),
                       comp, tuple(objects), tuple(names))


def validate_category(raw: dict) -> FinCategory:
    C = parse_category(raw)
    return C.validate()


# functors and natural transformations

@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple
    mor_map: tuple

    def failures(self) -> list[err.ValidationError]:
        C, D = self.source, self.target
        found: list[err.ValidationError] = []
        if len(self.obj_map) != C.n_obj or len(self.mor_map) != C.n_mor:
            return [err.FunctorFailure("map sizes do not match the source category")]
        for f in range(C.n_mor):
            Ff = self.mor_map[f]
            if D.src[Ff] != self.obj_map[C.src[f]] or D.tgt[Ff] != self.obj_map[C.tgt[f]]:
                found.append(err.FunctorFailure(f"boundary of {C.mor_names[f]} not preserved", f))
        for x in range(C.n_obj):
            if self.mor_map[C.ident[x]] != D.ident[self.obj_map[x]]:
                found.append(err.FunctorFailure(f"identity of {C.obj_names[x]} not preserved", x))
        if found:
            return found
        for (g, f), gf in C.comp.items():
            if D.comp[(self.mor_map[g], self.mor_map[f])] != self.mor_map[gf]:
                found.append(err.FunctorFailure(f"composite ({g}, {f}) not preserved", (g, f)))
        return found

    def validate(self) -> "Functor":
        err.raise_report(self.failures())
        return self

    def is_bijective(self) -> bool:
        return (sorted(self.obj_map) == list(range(self.target.n_obj))
                and sorted(self.mor_map) == list(range(self.target.n_mor)))

    def inverse(self) -> "Functor":
        obj = [0] * len(self.obj_map)
        mor = [0] * len(self.mor_map)
        for x, y in enumerate(self.obj_map):
            obj[y] = x
        for f, g in enumerate(self.mor_map):
            mor[g] = f
        return Functor(self.target, self.source, tuple(obj), tuple(mor))


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(range(C.n_obj)), tuple(range(C.n_mor)))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G∘F``."""
    return Functor(F.source, G.target,
                   tuple(G.obj_map[x] for x in F.obj_map),
                   tuple(G.mor_map[f] for f in F.mor_map))


def functor_from_labels(C: FinCategory, D: FinCategory, on_obj: Callable, on_mor: Callable) -> Functor:
    return Functor(C, D,
                   tuple(D.obj_id[on_obj(lbl)] for lbl in C.obj_labels),
                   tuple(D.mor_id[on_mor(lbl)] for lbl in C.mor_labels))


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: tuple

    def failures(self) -> list[err.ValidationError]:
        F, G = self.source, self.target
        C, D = F.source, F.target
        if G.source != C or G.target != D:
            return [err.NaturalityFailure("functors are not parallel")]
        found: list[err.ValidationError] = []
        for x in range(C.n_obj):
            a = self.components[x]
            if D.src[a] != F.obj_map[x] or D.tgt[a] != G.obj_map[x]:
                found.append(err.NaturalityFailure(f"component at {C.obj_names[x]} mistyped", x))
        if found:
            return found
        for f in range(C.n_mor):
            left = D.comp[(G.mor_map[f], self.components[C.src[f]])]
            right = D.comp[(self.components[C.tgt[f]], F.mor_map[f])]
            if left != right:
                found.append(err.NaturalityFailure(
                    f"naturality square of {C.mor_names[f]} does not commute", f))
        return found

    def is_identity(self) -> bool:
        D = self.source.target
        return all(D.is_identity(a) for a in self.components)


def identity_nat(F: Functor) -> NatTrans:
    D = F.target
    return NatTrans(F, F, tuple(D.ident[F.obj_map[x]] for x in range(F.source.n_obj)))


# standard constructors

def terminal() -> FinCategory:
    return poset_category(0)


def poset(elements: Iterable[Hashable], leq: Callable) -> FinCategory:
    """The category of a finite poset; morphism ``x → y`` is labelled ``(x, y)``."""
    elems = tuple(elements)
    mors = [((x, y), x, y) for x in elems for y in elems if leq(x, y)]
    return FinCategory.build(elems, mors, lambda x: (x, x), lambda g, f: (f[0], g[1]))


def poset_category(n: int) -> FinCategory:
    """The linear order ``[n] = {0 < 1 < ... < n}``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return poset(range(n + 1), lambda i, j: i <= j)


def discrete(n: int) -> FinCategory:
    return poset(range(n), lambda i, j: i == j)


def codiscrete(n: int) -> FinCategory:
    """The groupoid with exactly one morphism between any two of ``n`` objects."""
    return poset(range(n), lambda i, j: True)


def monoid_category(elements: Iterable[Hashable], mult: Callable, unit) -> FinCategory:
    """One-object category; ``mult(g, f)`` is the composite ``g∘f``."""
    elems = tuple(elements)
    return FinCategory.build(("*",), [(e, "*", "*") for e in elems], lambda _: unit, mult)


def cyclic_group(n: int) -> FinCategory:
    return monoid_category(range(n), lambda g, f: (g + f) % n, 0)


def symmetric_group(n: int) -> FinCategory:
    perms = tuple(itertools.permutations(range(n)))
    return monoid_category(perms, lambda g, f: tuple(g[f[i]] for i in range(n)), perms[0])


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    objects = [(a, b) for a in C.obj_labels for b in D.obj_labels]
    mors = [((f, g), (C.obj_labels[C.src[i]], D.obj_labels[D.src[j]]),
             (C.obj_labels[C.tgt[i]], D.obj_labels[D.tgt[j]]))
            for i, f in enumerate(C.mor_labels) for j, g in enumerate(D.mor_labels)]

    def identity(o):
        return (C.mor_labels[C.ident[C.obj_id[o[0]]]], D.mor_labels[D.ident[D.obj_id[o[1]]]])

    def compose(g, f):
        return (C.mor_labels[C.comp[(C.mor_id[g[0]], C.mor_id[f[0]])]],
                D.mor_labels[D.comp[(D.mor_id[g[1]], D.mor_id[f[1]])]])

    return FinCategory.build(objects, mors, identity, compose)


def opposite(C: FinCategory) -> FinCategory:
    comp = {(f, g): gf for (g, f), gf in C.comp.items()}
    return FinCategory(C.obj_labels, C.mor_labels, C.tgt, C.src, C.ident, comp,
                       C.obj_names, C.mor_names)


def arrow_category(C: FinCategory) -> FinCategory:
    """``Fun([1], C)``: a morphism ``f → f'`` is a pair ``(σ, τ)`` with ``τ∘f = f'∘σ``.

    Morphism labels are ``(f, f', σ, τ)`` in morphism labels of ``C``.
    """
    L = C.mor_labels
    mors = []
    for f in range(C.n_mor):
        for f2 in range(C.n_mor):
            for s in C.homset(C.src[f], C.src[f2]):
                for t in C.homset(C.tgt[f], C.tgt[f2]):
                    if C.comp[(t, f)] == C.comp[(f2, s)]:
                        mors.append(((L[f], L[f2], L[s], L[t]), L[f], L[f2]))

    def identity(f):
        i = C.mor_id[f]
        return (f, f, L[C.ident[C.src[i]]], L[C.ident[C.tgt[i]]])

    def compose(g, f):
        s = C.comp[(C.mor_id[g[2]], C.mor_id[f[2]])]
        t = C.comp[(C.mor_id[g[3]], C.mor_id[f[3]])]
        return (f[0], g[1], L[s], L[t])

    return FinCategory.build(L, mors, identity, compose)


def subcategory(C: FinCategory, mors: Iterable[int]) -> FinCategory:
    """Wide subcategory on the given morphism ids (identities are added)."""
    keep = sorted(set(mors) | set(C.ident))
    if not closed_under_composition(C, frozenset(keep)):
        raise err.NotSubcategory("morphisms are not closed under composition", keep)
    L = C.mor_labels
    return FinCategory.build(
        C.obj_labels,
        [(L[f], C.obj_labels[C.src[f]], C.obj_labels[C.tgt[f]]) for f in keep],
        lambda o: L[C.ident[C.obj_id[o]]],
        lambda g, f: L[C.comp[(C.mor_id[g], C.mor_id[f])]],
        obj_names=C.obj_names,
        mor_names=[C.mor_names[f] for f in keep],
    )


def core(C: FinCategory) -> FinCategory:
    return subcategory(C, C.isos)


def restrict(F: Functor, source_mors: Iterable[int], target_mors: Iterable[int]) -> Functor:
    """Restriction of ``F`` to wide subcategories (``F`` must map one into the other)."""
    A = subcategory(F.source, source_mors)
    B = subcategory(F.target, target_mors)
    C, D = F.source, F.target
    return Functor(A, B, F.obj_map,
                   tuple(B.mor_id[D.mor_labels[F.mor_map[C.mor_id[lbl]]]] for lbl in A.mor_labels))


def closed_under_composition(C: FinCategory, mors: frozenset) -> bool:
    return all(C.comp[(g, f)] in mors
               for f in mors for g in C.out_mor[C.tgt[f]] if g in mors)


# enumeration

def enumerate_functors(C: FinCategory, D: FinCategory, budget=None) -> list[Functor]:
    """All functors ``C → D`` in lexicographic order of (object images, morphism images)."""
    # variable order: each object followed by the morphisms it completes
    order: list[tuple[str, int]] = []
    placed: set[int] = set()
    for x in range(C.n_obj):
        order.append(("o", x))
        placed.add(x)
        for f in range(C.n_mor):
            if max(C.src[f], C.tgt[f]) == x and not C.is_identity(f):
                order.append(("m", f))
    pos = {v: k for k, v in enumerate(order)}
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for (g, f), gf in C.comp.items():
        if C.is_identity(g) or C.is_identity(f):
            continue
        trio = [pos[("m", h)] for h in (g, f, gf) if not C.is_identity(h)]
        checks[max(trio)].append((g, f, gf))

    def value(assign, f):
        if C.is_identity(f):
            return D.ident[assign[pos[("o", C.src[f])]]]
        return assign[pos[("m", f)]]

    def domain(k, assign):
        kind, i = order[k]
        if kind == "o":
            return range(D.n_obj)
        return D.homset(assign[pos[("o", C.src[i])]], assign[pos[("o", C.tgt[i])]])

    def check(k, assign):
        for g, f, gf in checks[k]:
            if D.comp[(value(assign, g), value(assign, f))] != value(assign, gf):
                return False
        return True

    result = []
    for assign in backtrack(len(order), domain, check, budget):
        obj_map = tuple(assign[pos[("o", x)]] for x in range(C.n_obj))
        mor_map = tuple(value(assign, f) for f in range(C.n_mor))
        result.append(Functor(C, D, obj_map, mor_map))
    result.sort(key=lambda F: (F.obj_map, F.mor_map))
    return result


def find_isomorphisms(C: FinCategory, D: FinCategory, budget=None) -> list[Functor]:
    if C.n_obj != D.n_obj or C.n_mor != D.n_mor:
        return []
    return [F for F in enumerate_functors(C, D, budget) if F.is_bijective()]


# nerve

def nerve_chains(C: FinCategory, n: int) -> list[tuple]:
    """Composable ``n``-chains ``(f1, ..., fn)`` with ``f1`` applied first.

    For ``n = 0`` the chains are the objects, returned as 1-tuples ``(x,)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [(x,) for x in range(C.n_obj)]
    chains = [(f,) for f in range(C.n_mor)]
    for _ in range(n - 1):
        chains = [ch + (g,) for ch in chains for g in C.out_mor[C.tgt[ch[-1]]]]
    return sorted(chains)


def chain_face(C: FinCategory, chain: tuple, n: int, i: int) -> tuple:
    """The face ``d_i`` of an ``n``-chain (omit vertex ``i``)."""
    if n == 1:
        return (C.tgt[chain[0]],) if i == 0 else (C.src[chain[0]],)
    if i == 0:
        return chain[1:]
    if i == n:
        return chain[:-1]
    return chain[:i - 1] + (C.comp[(chain[i], chain[i - 1])],) + chain[i + 1:]


def chain_degeneracy(C: FinCategory, chain: tuple, n: int, j: int) -> tuple:
    """The degeneracy ``s_j`` of an ``n``-chain (repeat vertex ``j``)."""
    if n == 0:
        return (C.ident[chain[0]],)
    vertex = C.src[chain[0]] if j == 0 else C.tgt[chain[j - 1]]
    return chain[:j] + (C.ident[vertex],) + chain[j:]


# equivalences

def is_equivalence(F: Functor) -> Verdict:
    """Fully faithful and essentially surjective, checked hom-set by hom-set."""
    C, D = F.source, F.target
    for x in range(C.n_obj):
        for y in range(C.n_obj):
            images = [F.mor_map[f] for f in C.homset(x, y)]
            if len(set(images)) != len(images):
                return Verdict(False, ("not faithful", x, y))
            if len(images) != len(D.homset(F.obj_map[x], F.obj_map[y])):
                return Verdict(False, ("not full", x, y))
    image = set(F.obj_map)
    for d in range(D.n_obj):
        if d in image:
            continue
        if not any(D.src[f] in image for f in D.in_mor[d] if f in D.isos):
            return Verdict(False, ("not essentially surjective", d))
    return Verdict(True)
