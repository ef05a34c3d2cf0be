"""Command-line interface: ``run``, ``construct`` and ``validate``.

Exit status is 0 when every check passes, 1 on a failed verdict or validation
error, and 2 on budget or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from . import errors as err
from .adequate import span_category
from .bridge import ardc, corners, dclr
from .dblcat import DblFunctor, DoubleCategory, boxtimes, horop, verop
from .fincat import FinCategory, poset_category, product
from .grothendieck import DblIndexing, straighten, unstraighten
from .ofs import FactorizationSystem, all_isos, arrow_ofs, isos_all, product_ofs
from .serialize import dumps, kind_of, load
from .suites import SUITES, builtin_catalog, load_catalog, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

# kind -> (argument types, builder)
CONSTRUCTIONS = {
    "poset": (("int",), lambda n: poset_category(n)),
    "product": (("category", "category"), product),
    "arrow-ofs": (("category",), arrow_ofs),
    "product-ofs": (("category", "category"), product_ofs),
    "all-isos-ofs": (("category",), all_isos),
    "isos-all-ofs": (("category",), isos_all),
    "dclr": (("ofs",), dclr),
    "corners": (("double",), corners),
    "span": (("ofs",), span_category),
    "horop": (("double",), horop),
    "verop": (("double",), verop),
    "boxtimes": (("category", "category"), boxtimes),
    "ardc": (("category",), ardc),
    "unstraighten": (("indexing",), lambda X: unstraighten(X)),
    "straighten": (("dblfunctor",), straighten),
}

TYPES = {"category": FinCategory, "ofs": FactorizationSystem, "double": DoubleCategory,
         "indexing": DblIndexing, "dblfunctor": DblFunctor}


def _named(kind: str, token: str):
    pools = {"category": cat.CATEGORIES, "ofs": cat.OFS, "double": cat.DOUBLES, "indexing": cat.INDEXINGS,
             "dblfunctor": cat.FIBRATIONS}
    for e in pools[kind]:
        if e.name == token:
            return e.value
    return None


def build_argument(kind: str, tokens: list[str]):
    """Consume tokens for one argument: a nested construction, a file, a poset size or a catalog name."""
    if not tokens:
        raise err.ParseError(f"missing {kind} argument")
    token = tokens.pop(0)
    if kind == "int":
        try:
            return int(token)
        except ValueError:
            raise err.ParseError(f"expected an integer, got {token!r}") from None
    if token in CONSTRUCTIONS:
        value = construct(token, tokens)
    elif Path(token).is_file():
        value = load(token)
    elif kind == "category" and token.isdigit():
        value = poset_category(int(token))
    else:
        value = _named(kind, token)
        if value is None:
            raise err.ParseError(f"{token!r} is not a file, construction or catalog {kind}")
    if not isinstance(value, TYPES[kind]):
        raise err.ParseError(f"{token!r} does not give a {kind}")
    return value


def construct(kind: str, tokens: list[str]):
    types, builder = CONSTRUCTIONS[kind]
    args = [build_argument(t, tokens) for t in types]
    return builder(*args)


def _cmd_construct(ns) -> int:
    tokens = list(ns.args)
    obj = construct(ns.kind, tokens)
    if tokens:
        raise err.ParseError(f"unused arguments {tokens}")
    text = dumps(obj, kind_of(obj))
    if ns.output:
        Path(ns.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_validate(ns) -> int:
    obj = load(ns.file, ns.kind)
    kind = kind_of(obj)
    if ns.json:
        print(json.dumps({"file": ns.file, "kind": kind, "verdict": "pass"}))
    else:
        print(f"{ns.file}: valid {kind}")
    return EXIT_OK


def _cmd_run(ns) -> int:
    catalog = load_catalog(ns.catalog) if ns.catalog else builtin_catalog()
    report = run_suite(ns.suite, catalog, ns.budget)
    if ns.json:
        print(json.dumps(report.to_json(), indent=2, ensure_ascii=False))
    else:
        print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ofsdouble", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=None, help="cap on candidate checks per search")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("--suite", default="all", choices=["all", *SUITES])
    run.add_argument("--catalog", help="directory of JSON files to use instead of the built-in catalog")

    con = sub.add_parser("construct", help="build an object and write it as JSON")
    con.add_argument("kind", choices=sorted(CONSTRUCTIONS))
    con.add_argument("args", nargs="*", help="files, poset sizes, catalog names or nested constructions")
    con.add_argument("-o", "--output")

    val = sub.add_parser("validate", help="parse and validate a JSON file")
    val.add_argument("file")
    val.add_argument("--kind", choices=sorted(TYPES))

    for s in (run, con, val):
        s.add_argument("--budget", type=int, default=argparse.SUPPRESS)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    ns = parser().parse_args(argv)
    handler = {"run": _cmd_run, "construct": _cmd_construct, "validate": _cmd_validate}[ns.command]
    from . import search
    saved = search.DEFAULT_BUDGET
    if ns.budget is not None:
        search.DEFAULT_BUDGET = ns.budget
    try:
        return handler(ns)
    except (err.BudgetExceeded, err.ParseError) as exc:
        _emit_error(ns, exc)
        return EXIT_ERROR
    except err.ValidationError as exc:
        _emit_error(ns, exc)
        return EXIT_FAIL
    except OSError as exc:
        _emit_error(ns, err.ParseError(str(exc)))
        return EXIT_ERROR
    finally:
        search.DEFAULT_BUDGET = saved


def _emit_error(ns, exc: err.WorkbenchError) -> None:
    if ns.json:
        print(json.dumps(exc.to_json(), ensure_ascii=False))
    else:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        for other in exc.report[1:]:
            print(f"  also {other.code}: {other}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
