from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from ofsdouble import errors as err
from ofsdouble.cli import main
from ofsdouble.fincat import cyclic_group, poset_category, to_raw
from ofsdouble.serialize import dumps, loads

BUNDLED = Path(__file__).resolve().parent.parent / "catalog"


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_dclr_of_product(capsys):
    code, out, _ = _run(capsys, "construct", "dclr", "product-ofs", "1", "1")
    assert code == 0
    D = loads(out)
    assert D.n_sq == 9


def test_construct_is_deterministic(capsys):
    first = _run(capsys, "construct", "ardc", "2")[1]
    second = _run(capsys, "construct", "ardc", "2")[1]
    assert first == second


def test_construct_span_gives_the_opposite_order(capsys):
    code, out, _ = _run(capsys, "construct", "span", "all-isos-ofs", "2")
    FS = loads(out)
    assert code == 0 and FS.base.n_obj == 3
    assert len(FS.ingressive) == 3 and len(FS.egressive) == 6


def test_construct_to_file_and_validate(tmp_path, capsys):
    path = tmp_path / "d.json"
    assert _run(capsys, "construct", "boxtimes", "1", "1", "-o", str(path))[0] == 0
    code, out, _ = _run(capsys, "validate", str(path))
    assert code == 0 and "valid double" in out


def test_validate_json_output(capsys):
    code, out, _ = _run(capsys, "--json", "validate", str(BUNDLED / "poset_2.json"))
    assert code == 0 and json.loads(out) == {"file": str(BUNDLED / "poset_2.json"), "kind": "category",
                                             "verdict": "pass"}


def test_parse_error_exits_two_with_a_line(tmp_path, capsys):
    raw = {"kind": "category", **to_raw(poset_category(1))}
    raw["morphisms"][0]["src"] = 9
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw, indent=2))
    code, _, errout = _run(capsys, "validate", str(path))
    assert code == 2
    assert errout.startswith("ParseError") and "(line " in errout


def test_validation_error_exits_one(tmp_path, capsys):
    raw = {"kind": "category", **to_raw(cyclic_group(2))}
    raw["composition"] = [[0, 0, 0], [0, 1, 1], [1, 0, 0], [1, 1, 0]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code, out, _ = _run(capsys, "--json", "validate", str(path))
    assert code == 1 and json.loads(out)["error"] == "UnitFailure"


def test_missing_file_exits_two(capsys):
    assert _run(capsys, "validate", "/nonexistent/file.json")[0] == 2


def test_budget_exceeded_exits_two(capsys):
    code, _, errout = _run(capsys, "--budget", "10", "run", "--suite", "mapping")
    assert code == 2 and "BudgetExceeded" in errout


def test_run_on_the_bundled_catalog(capsys):
    code, out, _ = _run(capsys, "run", "--catalog", str(BUNDLED))
    assert code == 0 and "checks pass" in out


def test_run_on_an_empty_catalog_passes_vacuously(tmp_path, capsys):
    code, out, _ = _run(capsys, "--json", "run", "--suite", "ofs", "--catalog", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["entries"] == []


def test_run_json_report_lists_entries(capsys):
    code, out, _ = _run(capsys, "run", "--suite", "negative", "--json")
    report = json.loads(out)
    assert code == 0 and report["suite"] == "negative"
    assert all(e["verdict"] == "pass" for e in report["entries"])


def test_bad_construction_argument(capsys):
    assert _run(capsys, "construct", "dclr", "not-a-thing")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ofsdouble.cli", "construct", "poset", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert dumps(loads(proc.stdout), "category") == dumps(poset_category(1), "category")
    assert isinstance(err.ParseError("x"), err.WorkbenchError)
