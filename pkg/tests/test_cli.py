import json
import subprocess
import sys

import pytest

from nthroots import __version__
from nthroots.cli import main, parse_cyclotomic
from nthroots.cyclotomic import cyc_field, imag_unit, sqrt3


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--c-matrix", "--n", "3", "--real-only")
    assert code == 0
    assert out.startswith("# ") and __version__ in out.splitlines()[0]
    assert "X(2, 1) (real)" in out and "complex" not in out


def test_roots_json_matches_text_matrices(capsys):
    _, out, _ = run(capsys, "roots", "--matrix", "-1 6; -2 6", "--n", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["summary"]["count"] == 16 and doc["summary"]["real_count"] == 4
    reals = [r["real_entries"] for r in doc["records"] if r["is_real"]]
    assert [[-17, 30], [-10, 18]] in reals


def test_even_family_cli(capsys):
    code, out, _ = run(capsys, "roots", "--c-matrix", "--n", "2", "--u=-i*sqrt3", "--v", "2", "--format", "jsonl")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["type"] == "summary" and lines[1]["family"] == "even"


def test_parse_cyclotomic():
    K = cyc_field(12)
    assert parse_cyclotomic("-i*sqrt3") == -(imag_unit(K) * sqrt3(K))
    assert parse_cyclotomic("(1 + i)**2 / 2") == imag_unit(K)
    with pytest.raises(Exception):
        parse_cyclotomic("__import__('os')")


@pytest.mark.parametrize("args", [
    ["roots", "--matrix", "1 2; 3", "--n", "2"],
    ["roots", "--matrix", "1 1; 1 1", "--n", "2"],
    ["roots", "--matrix", "1 -2; 2 -1", "--n", "2"],
    ["roots", "--n", "2"],
    ["canon", "--matrix", "1 2; 3 4"],
    ["search", "--problem", "ii", "--lambda", "3,2"],
    ["random-search", "--dim", "3", "--budget", "5", "--resume"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, args):
    assert main(args) == 2


def test_search_jsonl_schema(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, _, _ = run(capsys, "search", "--problem", "i", "--dim", "3", "--classes",
                     "--format", "jsonl", "--output", str(path))
    assert code == 0
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    head, sols = lines[0], lines[1:]
    assert head["type"] == "summary" and head["count"] == 576 and head["version"] == __version__
    assert head["config"]["problem"] == "i"
    assert len(sols) == 576
    assert set(sols[0]) == {"type", "matrix", "inverse", "norm", "canonical_form", "class_id"}
    assert {s["class_id"] for s in sols} == {0}


def test_search_output_independent_of_workers(capsys):
    outs = []
    for w in ("1", "2"):
        _, out, _ = run(capsys, "search", "--problem", "i", "--dim", "3", "--format", "jsonl", "--workers", w)
        lines = out.splitlines()
        outs.append(lines[1:])
    assert outs[0] == outs[1]


def test_no_solution_is_success(capsys):
    code, out, _ = run(capsys, "search", "--problem", "i", "--dim", "3", "--b-max", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["complete"] and doc["summary"]["count"] == 0


def test_canon_commands(capsys):
    _, out, _ = run(capsys, "canon", "--order", "row-major", "--matrix", "1 1; -2 4")
    assert "-4 -2; -1 1" in out
    _, out, _ = run(capsys, "canon", "--order", "structural", "--equivalent", "1 1; -2 4", "1 2; -1 4")
    assert out.strip() == "false"
    _, out, _ = run(capsys, "canon", "--order", "structural", "--matrix", "1 1; -2 4", "--orbit", "--format", "json")
    assert json.loads(out)["summary"]["orbit_size"] == 32


def test_random_search_checkpoint_resume(capsys, tmp_path):
    ck = tmp_path / "state.json"
    _, full, _ = run(capsys, "random-search", "--dim", "4", "--budget", "40", "--seed", "3", "--format", "json")
    run(capsys, "random-search", "--dim", "4", "--budget", "20", "--seed", "3", "--checkpoint", str(ck))
    state = json.loads(ck.read_text())
    assert set(state) == {"seed", "iterations_done", "best_norm", "witnesses"}
    _, resumed, _ = run(capsys, "random-search", "--dim", "4", "--budget", "40", "--seed", "3",
                        "--checkpoint", str(ck), "--resume", "--format", "json")
    a, b = json.loads(full), json.loads(resumed)
    assert a["records"] == b["records"] and a["summary"]["minimal_norm"] == b["summary"]["minimal_norm"]


def test_verify_paper_exit_code(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert "PASS  cube roots of C^3" in out
    # three published values disagree with exact computation, so the run reports failure
    assert code == 1 and "FAIL  quintic roots" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nthroots", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
