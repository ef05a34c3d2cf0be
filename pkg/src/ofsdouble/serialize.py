"""JSON files for categories, factorization systems, double categories, double functors and indexings.

Files are written in a canonical layout: one key per line and one line per
element of any list of compound values. That makes them diff-able and lets
parse errors point at a line.
"""
from __future__ import annotations

import json
from pathlib import Path

from . import errors as err
from .dblcat import DblFunctor, DoubleCategory, double_to_raw, parse_double
from .fincat import FinCategory, Functor, NatTrans, parse_category, to_raw
from .grothendieck import DblIndexing
from .ofs import FactorizationSystem, validate_ofs

KINDS = ("category", "ofs", "double", "dblfunctor", "indexing")


# canonical text

def _flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, (list, dict)) for v in value)
    if isinstance(value, dict):
        return all(not isinstance(v, (list, dict)) for v in value.values())
    return True


def _inline(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def _render(value, depth: int) -> list[str]:
    """Lines for ``value``; the first line continues its key."""
    if _flat(value) or (isinstance(value, list) and all(_flat(v) for v in value) and len(value) == 0):
        return [_inline(value)]
    pad = "  " * (depth + 1)
    if isinstance(value, list):
        out = ["["]
        for k, v in enumerate(value):
            sub = _render(v, depth + 1)
            sub[0] = pad + sub[0]
            if k < len(value) - 1:
                sub[-1] += ","
            out += sub
        return out + ["  " * depth + "]"]
    out = ["{"]
    items = list(value.items())
    for k, (key, v) in enumerate(items):
        sub = _render(v, depth + 1)
        sub[0] = pad + _inline(key) + ": " + sub[0]
        if k < len(items) - 1:
            sub[-1] += ","
        out += sub
    return out + ["  " * depth + "}"]


def render(raw: dict) -> str:
    return "\n".join(_render(raw, 0)) + "\n"


def locate(text: str, path: tuple) -> int | None:
    """Line number (1-based) of ``path`` in canonically laid out ``text``."""
    lines = text.splitlines()
    row, depth = 0, 0
    found = None
    for step in path:
        if isinstance(step, str):
            needle = "  " * (depth + 1) + json.dumps(step) + ":"
            hits = [k for k in range(row, len(lines)) if lines[k].startswith(needle)]
            # hand-written files: settle for the first line mentioning the key
            hits = hits or [k for k in range(row, len(lines)) if json.dumps(step) + ":" in lines[k]]
            if not hits:
                return found
            row, found = hits[0], hits[0] + 1
            depth += 1
        else:
            if lines[row].rstrip().endswith("["):
                row = row + 1 + step
                found = row + 1 if row < len(lines) else found
            depth += 1
    return found


# raw conversions

def _functor_raw(F: Functor) -> dict:
    return {"objects": list(F.obj_map), "morphisms": list(F.mor_map)}


def _int_list(value, what: str, path: tuple) -> tuple:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise err.ParseError(f"{what} must be a list of integer ids", path=path)
    return tuple(value)


def _functor(raw: dict, C: FinCategory, D: FinCategory, path: tuple) -> Functor:
    try:
        obj = _int_list(raw["objects"], "object map", path)
        mor = _int_list(raw["morphisms"], "morphism map", path)
    except (KeyError, TypeError):
        raise err.ParseError("functor needs object and morphism maps", path=path) from None
    if len(obj) != C.n_obj or len(mor) != C.n_mor or any(not 0 <= x < D.n_obj for x in obj) \
            or any(not 0 <= f < D.n_mor for f in mor):
        raise err.ParseError("functor map has the wrong length or a dangling id", path=path)
    return Functor(C, D, obj, mor)


def _nested(parse, raw, key: str):
    try:
        return parse(raw[key])
    except KeyError:
        raise err.ParseError(f"missing field {key!r}") from None
    except err.ParseError as exc:
        raise err.ParseError(str(exc), path=(key,) + exc.path) from None


def to_document(obj, kind: str) -> dict:
    if kind == "category":
        return {"kind": kind, **to_raw(obj)}
    if kind == "ofs":
        return {"kind": kind, **to_raw(obj.base), "egressive": sorted(obj.egressive),
                "ingressive": sorted(obj.ingressive)}
    if kind == "double":
        return {"kind": kind, **double_to_raw(obj)}
    if kind == "dblfunctor":
        return {"kind": kind, "source": double_to_raw(obj.source), "target": double_to_raw(obj.target),
                "objects": list(obj.obj_map), "hmors": list(obj.hmor_map), "vmors": list(obj.vmor_map),
                "squares": list(obj.sq_map)}
    if kind == "indexing":
        return {"kind": kind, "base": double_to_raw(obj.base),
                "categories": [to_raw(K) for K in obj.obj_cat],
                "hfunctors": [_functor_raw(F) for F in obj.h_fun],
                "vfunctors": [_functor_raw(F) for F in obj.v_fun],
                "transformations": [list(n.components) for n in obj.sq_nat]}
    raise ValueError(f"unknown kind {kind!r}")


def from_document(raw: dict, kind: str | None = None, base_dir: Path | None = None):
    """Parse and validate; validation errors are forwarded unchanged."""
    if not isinstance(raw, dict):
        raise err.ParseError("document must be a JSON object")
    kind = kind or raw.get("kind")
    if kind not in KINDS:
        raise err.ParseError(f"unknown kind {kind!r}", path=("kind",))
    if kind == "category":
        return parse_category(raw).validate()
    if kind == "ofs":
        C = parse_category(raw).validate()
        E = _int_list(raw.get("egressive"), "egressive", ("egressive",))
        I = _int_list(raw.get("ingressive"), "ingressive", ("ingressive",))
        if any(not 0 <= f < C.n_mor for f in E + I):
            raise err.ParseError("class references a missing morphism", path=("egressive",))
        return validate_ofs(C, E, I)
    if kind == "double":
        return parse_double(raw).validate()
    if kind == "dblfunctor":
        S = _nested(parse_double, raw, "source").validate()
        T = _nested(parse_double, raw, "target").validate()
        maps = []
        for key, n, bound in (("objects", S.n_obj, T.n_obj), ("hmors", S.horizontal.n_mor, T.horizontal.n_mor),
                              ("vmors", S.vertical.n_mor, T.vertical.n_mor), ("squares", S.n_sq, T.n_sq)):
            mp = _int_list(raw.get(key), key, (key,))
            if len(mp) != n or any(not 0 <= x < bound for x in mp):
                raise err.ParseError(f"{key} map has the wrong length or a dangling id", path=(key,))
            maps.append(mp)
        return DblFunctor(S, T, *maps).validate()
    return _indexing(raw, base_dir)


def _indexing(raw: dict, base_dir: Path | None) -> DblIndexing:
    B = _nested(parse_double, raw, "base").validate()
    H, V = B.horizontal, B.vertical
    cats = []
    for k, entry in enumerate(raw.get("categories") or []):
        if isinstance(entry, str):
            # a category file next to this one
            entry = _read_json(Path(base_dir or ".") / entry)
        try:
            cats.append(parse_category(entry).validate())
        except err.ParseError as exc:
            raise err.ParseError(str(exc), path=("categories", k) + exc.path) from None
    if len(cats) != B.n_obj:
        raise err.ParseError("one category per object is required", path=("categories",))
    hf, vf = raw.get("hfunctors") or [], raw.get("vfunctors") or []
    if len(hf) != H.n_mor or len(vf) != V.n_mor:
        raise err.ParseError("one functor per edge is required", path=("hfunctors",))
    h_fun = tuple(_functor(r, cats[H.src[h]], cats[H.tgt[h]], ("hfunctors", h)) for h, r in enumerate(hf))
    v_fun = tuple(_functor(r, cats[V.tgt[v]], cats[V.src[v]], ("vfunctors", v)) for v, r in enumerate(vf))
    nats = []
    rows = raw.get("transformations") or []
    if len(rows) != B.n_sq:
        raise err.ParseError("one transformation per square is required", path=("transformations",))
    from .fincat import compose_functors
    for s, row in enumerate(rows):
        t, b, l, r = B.boundary(s)
        comps = _int_list(row, "components", ("transformations", s))
        nats.append(NatTrans(compose_functors(h_fun[t], v_fun[l]), compose_functors(v_fun[r], h_fun[b]), comps))
    return DblIndexing(B, tuple(cats), h_fun, v_fun, tuple(nats)).validate()


# files

def _read_json(path: Path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise err.ParseError(f"invalid JSON in {path}: {exc.msg}", exc.lineno) from None


def loads(text: str, kind: str | None = None, base_dir: Path | None = None):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise err.ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        return from_document(raw, kind, base_dir)
    except err.ParseError as exc:
        if exc.line is not None:
            raise
        msg = str(exc)
        raise err.ParseError(msg, locate(text, exc.path), exc.path) from None


def dumps(obj, kind: str) -> str:
    return render(to_document(obj, kind))


def load(path, kind: str | None = None):
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), kind, path.parent)


def save(obj, path, kind: str) -> None:
    Path(path).write_text(dumps(obj, kind), encoding="utf-8")


def kind_of(obj) -> str:
    if isinstance(obj, FinCategory):
        return "category"
    if isinstance(obj, FactorizationSystem):
        return "ofs"
    if isinstance(obj, DoubleCategory):
        return "double"
    if isinstance(obj, DblFunctor):
        return "dblfunctor"
    if isinstance(obj, DblIndexing):
        return "indexing"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
