"""Verification suites over a catalog, one per acceptance criterion."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import catalog as cat
from . import errors as err
from .adequate import adequacy_report, involution_check, is_adequate, pullback_complete, span_category, span_vs_horop
from .bridge import (ardc, counit_iso, dclr, filler_verdict, mapping_comparison, product_comparison,
                     segal_chain_check, unit_iso)
from .dblcat import (dual_functor, enumerate_dbl_functors, fullop, grid, horop, is_factorization_double)
from .fib import compare_fibrations, is_cocart_right, is_left_cart, source_lemma_check
from .fincat import nerve_chains, poset_category, product
from .grothendieck import roundtrip_fibration, roundtrip_indexing, straighten_left_cart, unstraighten
from .ofs import FactorizationSystem, enumerate_ofs_maps, ofs_report, product_ofs, validate_ofs, wide_subcategories
from .search import budget_used, reset_usage


@dataclass
class Catalog:
    categories: list = field(default_factory=list)        # (name, FinCategory)
    ofs: list = field(default_factory=list)               # (name, FactorizationSystem, expect)
    counter_ofs: list = field(default_factory=list)
    doubles: list = field(default_factory=list)           # (name, DoubleCategory, expect)
    counter_doubles: list = field(default_factory=list)   # (name, builder, expect)
    indexings: list = field(default_factory=list)         # (name, DblIndexing, expect)
    counter_indexings: list = field(default_factory=list)
    fibrations: list = field(default_factory=list)        # (name, DblFunctor, expect)
    builtin: bool = False


def builtin_catalog() -> Catalog:
    triple = lambda entries: [(e.name, e.value, e.expect) for e in entries]
    return Catalog(
        categories=[(e.name, e.value) for e in cat.CATEGORIES],
        ofs=triple(cat.OFS),
        counter_ofs=triple(cat.COUNTER_OFS),
        doubles=triple(cat.DOUBLES),
        counter_doubles=[(e.name, e.build, e.expect) for e in cat.COUNTER_DOUBLES],
        indexings=triple(cat.INDEXINGS),
        counter_indexings=[(e.name, e.build, e.expect) for e in cat.COUNTER_INDEXINGS],
        fibrations=triple(cat.FIBRATIONS),
        builtin=True,
    )


def load_catalog(path) -> Catalog:
    """Every ``*.json`` file in a directory, sorted by file name and grouped by kind.

    Loaded entries carry no expectations beyond passing their own validator;
    factorization systems and double categories are expected to be well behaved.
    """
    from .serialize import load, kind_of
    C = Catalog()
    for f in sorted(Path(path).glob("*.json")):
        obj = load(f)
        kind = kind_of(obj)
        name = f.stem
        if kind == "category":
            C.categories.append((name, obj))
        elif kind == "ofs":
            C.ofs.append((name, obj, {"ofs": True, "strict_fillers": not obj.base.has_nontrivial_isos()}))
        elif kind == "double":
            C.doubles.append((name, obj, {"factorization": bool(is_factorization_double(obj))}))
        elif kind == "indexing":
            C.indexings.append((name, obj, {"valid": True}))
        else:
            C.fibrations.append((name, obj, {"cocart_right": bool(is_cocart_right(obj))}))
    return C


# reports

@dataclass
class Report:
    suite: str
    entries: list = field(default_factory=list)
    budget_used: int = 0

    @property
    def ok(self) -> bool:
        return all(e["verdict"] == "pass" for e in self.entries)

    def add(self, name: str, check: str, passed: bool, witness=None) -> None:
        entry = {"name": name, "check": check, "verdict": "pass" if passed else "fail"}
        if witness is not None:
            entry["witness"] = err._jsonable(witness)
        self.entries.append(entry)

    def to_json(self) -> dict:
        return {"suite": self.suite, "entries": self.entries, "budget_used": self.budget_used}

    def summary(self) -> str:
        failed = [e for e in self.entries if e["verdict"] != "pass"]
        lines = [f"{self.suite}: {len(self.entries) - len(failed)}/{len(self.entries)} checks pass"]
        for e in failed:
            lines.append(f"  FAIL {e['name']} [{e['check']}] {e.get('witness', '')}")
        return "\n".join(lines)


def _expect_error(report: Report, name: str, check: str, thunk: Callable, code: str) -> None:
    try:
        thunk()
    except err.ValidationError as exc:
        report.add(name, check, exc.code == code or any(e.code == code for e in exc.report),
                   None if exc.code == code else exc.code)
        return
    report.add(name, check, False, "no error raised")


def _small(items, size: Callable, bound: int = 3):
    return [x for x in items if size(x[1]) <= bound]


def _monotone(k: int, m: int) -> int:
    """Brute-force count of monotone maps ``[k] → [m]``."""
    return sum(1 for f in itertools.product(range(m + 1), repeat=k + 1)
               if all(f[i] <= f[i + 1] for i in range(k)))


# suites

def suite_ofs(C: Catalog, budget) -> Report:
    r = Report("ofs")
    for name, K in C.categories:
        if K.n_obj > 3 or K.n_mor > 12:
            continue
        W = wide_subcategories(K, budget)
        bad = [(sorted(E), sorted(I)) for E in W for I in W
               if not ofs_report(FactorizationSystem(K, E, I), budget).agree]
        r.add(name, f"criteria agree on {len(W) ** 2} class pairs", not bad, bad or None)
    for name, FS, expect in C.ofs:
        try:
            validate_ofs(FS.base, FS.egressive, FS.ingressive, budget)
            r.add(name, "validates", expect.get("ofs", True))
        except err.ValidationError as exc:
            r.add(name, "validates", not expect.get("ofs", True), exc.to_json())
    for name, FS, expect in C.counter_ofs:
        _expect_error(r, name, "rejected", lambda FS=FS: validate_ofs(FS.base, FS.egressive, FS.ingressive, budget),
                      expect["error"])
    return r


def suite_dclr(C: Catalog, budget) -> Report:
    r = Report("dclr")
    for name, FS, expect in C.ofs:
        D = dclr(FS)
        problems = D.failures()
        r.add(name, "dclr validates", not problems, [p.code for p in problems] or None)
        v = filler_verdict(FS)
        r.add(name, "fillers unique up to a unique middle iso", v.ok, v.witness)
        strict = is_factorization_double(D)
        r.add(name, f"strict unique fillers = {expect.get('strict_fillers', True)}",
              strict.ok == expect.get("strict_fillers", True), strict.witness)
    return r


def suite_product(C: Catalog, budget) -> Report:
    r = Report("product")
    if not C.builtin:
        return r
    for m, n in itertools.product(range(3), repeat=2):
        name = f"product([{m}],[{n}])"
        try:
            F = product_comparison(poset_category(m), poset_category(n))
            r.add(name, "strict double iso to boxtimes", F.is_iso() and not F.failures())
        except err.ValidationError as exc:
            r.add(name, "strict double iso to boxtimes", False, exc.to_json())
        D = dclr(product_ofs(poset_category(m), poset_category(n)))
        counts = {(k, l): (len(grid(D, k, l, budget)), _monotone(k, m) * _monotone(l, n))
                  for k in range(3) for l in range(3)}
        bad = {f"{k},{l}": c for (k, l), c in counts.items() if c[0] != c[1]}
        r.add(name, "grid counts = map([k],[m])·map([l],[n])", not bad, bad or None)
    return r


def suite_dclr_roundtrip(C: Catalog, budget) -> Report:
    r = Report("dclr-roundtrip")
    for name, D, expect in C.doubles:
        if not expect.get("factorization"):
            continue
        try:
            F = counit_iso(D)
            r.add(name, "counit is a strict double iso", F.is_iso() and not F.failures())
        except err.ValidationError as exc:
            r.add(name, "counit is a strict double iso", False, exc.to_json())
    for name, FS, expect in C.ofs:
        try:
            u = unit_iso(FS)
            r.add(name, "unit is an iso after the middle-iso quotient", True)
            if cat.is_poset_based(FS.base):
                r.add(name, "unit is an iso on the nose", u.on_the_nose is True)
        except err.ValidationError as exc:
            r.add(name, "unit is an iso after the middle-iso quotient", False, exc.to_json())
    return r


def suite_mapping(C: Catalog, budget) -> Report:
    r = Report("mapping")
    small = _small(C.ofs, lambda FS: FS.base.n_obj)
    for (a, A, _), (b, B, _) in itertools.product(small, repeat=2):
        x, y = mapping_comparison(A, B, budget)
        r.add(f"{a} -> {b}", "|OfsMap| = |DblFunctor|", x == y, None if x == y else (x, y))
    return r


def suite_segal(C: Catalog, budget) -> Report:
    r = Report("segal")
    for name, D, expect in C.doubles:
        if not expect.get("factorization"):
            continue
        for n in range(4):
            try:
                segal_chain_check(D, n, budget)
                r.add(name, f"segal chains n={n}", True)
            except err.ValidationError as exc:
                r.add(name, f"segal chains n={n}", False, exc.to_json())
    if C.builtin:
        P = poset_category(1)
        target = dclr(product_ofs(P, P))
        x = len(enumerate_dbl_functors(ardc(poset_category(2)), target, budget))
        y = len(nerve_chains(product(P, P), 2))
        r.add("ardc([2]) -> dclr product([1],[1])", "|DblFunctor| = 2-chains of [1]x[1]", x == y, (x, y))
    return r


def suite_join(C: Catalog, budget) -> Report:
    r = Report("join")
    if not C.builtin:
        return r
    for k in (1, 2):
        D = ardc(poset_category(k))
        for m, n in itertools.product(range(3), repeat=2):
            x, y = len(grid(D, m, n, budget)), _monotone(n + m + 1, k)
            ok = x == y and (k != 1 or x == n + m + 3)
            r.add(f"ardc([{k}])", f"grid({m},{n}) = monotone([{n + m + 1}],[{k}])", ok, (x, y))
    return r


def suite_adequacy(C: Catalog, budget) -> Report:
    r = Report("adequacy")
    for name, K in C.categories:
        if K.n_obj > 3 or K.n_mor > 12:
            continue
        W = wide_subcategories(K, budget)
        systems = [FactorizationSystem(K, E, I) for E in W for I in W]
        systems = [FS for FS in systems if ofs_report(FS, budget).ok]
        bad = [(sorted(FS.egressive), sorted(FS.ingressive)) for FS in systems if not adequacy_report(FS).agree]
        r.add(name, f"criteria agree on {len(systems)} factorization systems", not bad, bad or None)
    for name, FS, expect in C.ofs + C.counter_ofs:
        rep = adequacy_report(FS)
        if "adequate" in expect:
            r.add(name, f"adequate = {expect['adequate']}",
                  rep.by_pullbacks.ok == rep.by_extensions.ok == expect["adequate"],
                  [rep.by_pullbacks.witness, rep.by_extensions.witness])
    return r


def suite_span(C: Catalog, budget) -> Report:
    r = Report("span")
    for name, FS, expect in C.ofs:
        if not (cat.is_poset_based(FS.base) and adequacy_report(FS).ok):
            continue
        try:
            span_vs_horop(FS)
            r.add(name, "span against horop(dclr)", True)
            involution_check(FS)
            r.add(name, "span(span) = identity", True)
            S = span_category(FS)
            validate_ofs(S.base, S.egressive, S.ingressive, budget)
            r.add(name, "span is an adequate factorization system", is_adequate(S).ok)
        except err.ValidationError as exc:
            r.add(name, "span theorems", False, exc.to_json())
    for name, D, _ in C.doubles:
        r.add(name, "horop∘horop = id on tables", horop(horop(D)).table_key() == D.table_key())
    return r


def suite_fibrations(C: Catalog, budget) -> Report:
    r = Report("fibrations")
    small = _small(C.ofs, lambda FS: FS.base.n_obj)
    for (a, A, _), (b, B, _) in itertools.product(small, repeat=2):
        maps = enumerate_ofs_maps(A, B, budget)
        bad = []
        for M in maps:
            try:
                compare_fibrations(M)
            except err.Disagreement as exc:
                bad.append(exc.witness)
        r.add(f"{a} -> {b}", f"fibration notions agree on {len(maps)} maps", not bad, bad or None)
    doubles = _small(C.doubles, lambda D: D.n_obj)
    for (a, A, _), (b, B, _) in itertools.product(doubles, repeat=2):
        functors = enumerate_dbl_functors(A, B, budget)
        bad = []
        for F in functors:
            try:
                source_lemma_check(F)
            except err.Disagreement as exc:
                bad.append(exc.witness)
        r.add(f"{a} -> {b}", f"source lemma on {len(functors)} functors", not bad, bad or None)
    return r


def suite_straightening(C: Catalog, budget) -> Report:
    r = Report("straightening")
    for name, X, _ in C.indexings:
        if X.base.n_obj > 4:
            continue
        try:
            P = unstraighten(X)
            r.add(name, "unstraightening is (cocart, right)", bool(is_cocart_right(P)))
            roundtrip_indexing(X, budget)
            r.add(name, "straighten(unstraighten X) = X", True)
            roundtrip_fibration(P, budget)
            r.add(name, "unstraighten(straighten P) = P", True)
            G = dual_functor(P, fullop)
            r.add(name, "(left, cart) via fullop", bool(is_left_cart(G)))
            straighten_left_cart(G, budget)
            roundtrip_fibration(dual_functor(G, fullop), budget)
            r.add(name, "(left, cart) round trip", True)
        except err.ValidationError as exc:
            r.add(name, "straightening", False, exc.to_json())
    for name, F, expect in C.fibrations:
        ok = bool(is_cocart_right(F))
        r.add(name, f"(cocart, right) = {expect.get('cocart_right')}", ok == expect.get("cocart_right", ok))
        if ok:
            try:
                roundtrip_fibration(F, budget)
                r.add(name, "unstraighten(straighten F) = F", True)
            except err.ValidationError as exc:
                r.add(name, "unstraighten(straighten F) = F", False, exc.to_json())
    for name, build, expect in C.counter_indexings:
        _expect_error(r, name, "indexing rejected", lambda build=build: build().validate(), expect["error"])
    return r


def suite_negative(C: Catalog, budget) -> Report:
    r = Report("negative")
    if not C.builtin:
        return r
    v = is_factorization_double(cat.z2_delooping())
    r.add("B(Z2)", "no unique filler", not v.ok and len(v.witness["fillers"]) == 2, v.witness)
    _expect_error(r, "B(S3) twisted", "interchange fails", lambda: cat.s3_delooping().validate(), "InterchangeFailure")
    V = cat.cospan_poset()
    f, g = V.mor_id[("a", "c")], V.mor_id[("b", "c")]
    r.add("cospan", "no pullback", pullback_complete(V, f, g) == [])
    rep = adequacy_report(cat.ofs("(all,all)[1]x[1]"))
    r.add("(all,all)[1]x[1]", "not adequate by either criterion", not rep.by_pullbacks.ok and not rep.by_extensions.ok)
    return r


SUITES = {
    "ofs": suite_ofs,
    "dclr": suite_dclr,
    "product": suite_product,
    "dclr-roundtrip": suite_dclr_roundtrip,
    "mapping": suite_mapping,
    "segal": suite_segal,
    "join": suite_join,
    "adequacy": suite_adequacy,
    "span": suite_span,
    "fibrations": suite_fibrations,
    "straightening": suite_straightening,
    "negative": suite_negative,
}

# acceptance criterion number of each suite
CRITERIA = {name: k for k, name in enumerate(SUITES, start=1)}


def run_suite(name: str, catalog: Catalog | None = None, budget=None) -> Report:
    catalog = builtin_catalog() if catalog is None else catalog
    if name == "all":
        reset_usage()
        out = Report("all")
        for sub in SUITES:
            part = SUITES[sub](catalog, budget)
            out.entries += [{**e, "check": f"{sub}: {e['check']}"} for e in part.entries]
        out.budget_used = budget_used()
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    reset_usage()
    report = SUITES[name](catalog, budget)
    report.budget_used = budget_used()
    return report
