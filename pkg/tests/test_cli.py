import argparse
import json
import subprocess
import sys

import pytest

from isomon.cli import build_parser, main
from isomon.report import VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_dp3(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "dp", "--n", "3")
    assert code == 0 and len(out.splitlines()) == 22


def test_enumerate_to_file(tmp_path, capsys):
    path = tmp_path / "odp.txt"
    code, _, _ = run(capsys, "enumerate", "--family", "odp", "--n", "4", "--out", str(path))
    assert code == 0 and len(path.read_text(encoding="utf-8").splitlines()) == 38


def test_prove_exit_codes(capsys):
    assert run(capsys, "prove", "--kind", "R", "--n", "3")[0] == 0
    assert run(capsys, "prove", "--kind", "R", "--n", "3", "--max-states", "1")[0] == 2
    assert run(capsys, "prove", "--kind", "R", "--n", "4", "--drop", "R12")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["prove", "--kind", "R", "--n", "2"],
        ["bogus"],
        ["prove", "--kind", "R", "--n", "3", "--frobnicate"],
        ["prove", "--n", "3"],
        ["enumerate", "--family", "dp", "--n", "3..5"],
        ["census", "--n", "x", "--domain", "1"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--kind", "R", "--n", "4", "--from", "x1 x2", "--to", "x2 x1")
    assert code == 0 and "R2[1,2]" in out
    assert run(capsys, "derive", "--kind", "R", "--n", "3", "--from", "x1", "--to", "x2")[0] == 1


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--n", "9", "--domain", "3,5,6")
    assert code == 0
    assert "3->1 5->3 6->4" in out


def test_kb(capsys):
    code, out, _ = run(capsys, "kb", "--kind", "V", "--n", "3")
    assert code == 0 and "22" in out


def test_json_round_trip_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "verify-relations", "--kind", "R", "--n", "4", "--json", str(path), "--no-timings")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text(encoding="utf-8"))
    assert {"tool_version", "n", "kind", "checks", "limits"} <= set(data)
    assert len(data["checks"]) == 13
    r = VerificationReport.from_dict(data)
    assert r.to_dict(timings=False) == data


def test_prove_json_witnesses_replay(capsys):
    from isomon.presentations import build_presentation
    from isomon.rewrite import Derivation, replay

    code, out, _ = run(capsys, "prove", "--kind", "R", "--n", "3", "--json", "--table", "--no-timings")
    assert code == 0
    data = json.loads(out[out.index("{"):])
    rels = build_presentation("R", 3).relations
    assert data["verdict"] == {"3": "defined"}
    table = data["closure_table"]["3"]
    assert table
    for row in table:
        if row.get("derivation"):
            replay(Derivation.from_dict(row["derivation"]), rels)


def test_io_failure(capsys):
    assert run(capsys, "verify-relations", "--kind", "R", "--n", "3", "--json", "/nonexistent/dir/x.json")[0] == 3


def test_help_lists_every_flag():
    parser = build_parser()
    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for name, sub in subs.choices.items():
        text = sub.format_help()
        for action in sub._actions:
            for opt in action.option_strings:
                assert opt in text, (name, opt)


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "isomon.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()


def test_jobs_env(monkeypatch, capsys):
    monkeypatch.setenv("ISOMON_JOBS", "2")
    assert run(capsys, "prove", "--kind", "R", "--n", "4")[0] == 0
