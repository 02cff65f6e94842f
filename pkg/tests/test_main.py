"""
Unit tests for the command-line front end.
Tests exit statuses, text and JSON output, and error reporting.
"""

import json

import pytest

from syncword import __version__
from syncword.dfa import serialize
from syncword.main import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, _ = run(capsys, *argv, "--json")
    return status, json.loads(out)


@pytest.fixture
def rotation_file(tmp_path, rotation):
    path = tmp_path / "rotation.dfa"
    path.write_text(serialize(rotation), encoding="utf-8")
    return str(path)


def test_check(capsys):
    status, out, _ = run(capsys, "check", "cerny:4")
    assert status == 0
    assert out.strip() == "synchronizing"


def test_check_permutation_automaton(capsys, rotation_file):
    status, report = run_json(capsys, "check", rotation_file)
    assert status == 1
    assert report["synchronizing"] is False
    assert report["strongly_connected"] is True


def test_sync_cerny(capsys):
    status, report = run_json(capsys, "sync", "--algo", "cycle", "cerny:9")
    assert status == 0
    assert report["expected_length"] == 64
    assert report["length"] == len(report["word"])
    assert report["deviation"] == report["length"] - 64
    assert report["cubic_bound"] == 120
    assert report["trace"]


def test_sync_text_and_trace(capsys):
    status, out, _ = run(capsys, "sync", "cerny:3", "--trace")
    assert status == 0
    lines = out.splitlines()
    assert lines[:2] == ["length 4", "baab"]
    assert len(lines) == 4


def test_sync_non_synchronizing(capsys, rotation_file):
    status, out, err = run(capsys, "sync", rotation_file)
    assert status == 1
    assert err.startswith("error:")


def test_exact(capsys):
    status, report = run_json(capsys, "exact", "cerny:4")
    assert status == 0
    assert report["length"] == 9
    assert report["synchronizing"] is True


def test_exact_negative_answer(capsys, rotation_file):
    status, out, _ = run(capsys, "exact", rotation_file)
    assert status == 1
    assert out.startswith("not synchronizing")


def test_semigroup(capsys):
    assert run(capsys, "semigroup", "cerny:6")[:2] == (0, "2742\n")
    assert run(capsys, "semigroup", "cerny:6", "--cap", "10")[:2] == (0, "over cap(10)\n")


def test_unknown_catalog_name(capsys):
    status, report = run_json(capsys, "exact", "nonesuch")
    assert status == 2
    assert report["error_code"] == "usage"
    status, report = run_json(capsys, "catalog", "nonesuch")
    assert status == 2
    assert report["error_code"] == "catalog"


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.dfa"
    path.write_text("3 2\n1 2 0\n0 0 7\n", encoding="utf-8")
    status, report = run_json(capsys, "check", str(path))
    assert status == 2
    assert report["error_code"] == "parse"
    assert "line 3" in report["detail"]


def test_enumerate(capsys):
    status, report = run_json(capsys, "enumerate", "3", "2")
    assert status == 0
    assert report["max_length"] == 4
    assert report["spec"]["threshold"] == 4
    assert report["extremal"]


def test_enumerate_text(capsys):
    status, out, _ = run(capsys, "enumerate", "3", "2", "--shards", "3")
    assert status == 0
    assert out.startswith("n=3 q=2 threshold=4 shards=3")
    assert "max length 4" in out


def test_enumerate_checkpoint(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'checkpoints.db'}"
    first = run_json(capsys, "enumerate", "3", "2", "--shards", "3", "--checkpoint", url)
    again = run_json(capsys, "enumerate", "3", "2", "--shards", "3", "--checkpoint", url)
    assert first[1]["counts"] == again[1]["counts"]


def test_enumerate_limits(capsys):
    status, report = run_json(capsys, "enumerate", "7", "3")
    assert status == 2
    assert report["error_code"] == "capacity"
    status, report = run_json(capsys, "enumerate", "1", "2")
    assert status == 2
    assert report["error_code"] == "usage"


def test_catalog_list(capsys):
    status, report = run_json(capsys, "catalog", "--list")
    assert status == 0
    assert {e["name"] for e in report["entries"]} >= {"cpr", "kari", "roman"}


def test_catalog_cerny(capsys):
    status, out, _ = run(capsys, "catalog", "cerny:3")
    assert status == 0
    assert out.splitlines()[0] == "3 2"
    status, report = run_json(capsys, "catalog", "cerny:3")
    assert report["table"] == [[1, 2, 0], [1, 1, 2]]


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_argument_errors_exit_with_usage_status(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["sync", "cerny:3", "--algo", "random"])
    assert excinfo.value.code == 2


def test_shipped_cpr(capsys):
    status, report = run_json(capsys, "catalog", "cpr")
    assert status == 0
    assert (report["n"], report["q"]) == (4, 2)
    assert run_json(capsys, "exact", "cpr")[1]["length"] == 9
    assert run(capsys, "semigroup", "cpr")[:2] == (0, "145\n")
