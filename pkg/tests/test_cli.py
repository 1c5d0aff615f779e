import json
import subprocess
import sys

import pytest

from conftest import DATA
from dsdenum.cli import EXIT_INPUT, EXIT_NUMERIC, EXIT_OK, EXIT_TRUNCATED, main


def test_fig1_condensed_crn(capsys):
    assert main([str(DATA / "fig1_two_strand.pil"), "--condense", "--rates"]) == EXIT_OK
    assert capsys.readouterr().out == "B + T -> 1 @ 2.000000e+06 /M/s\n"


def test_output_file(tmp_path):
    out = tmp_path / "net.json"
    assert main([str(DATA / "fig1_two_strand.pil"), "-f", "json", "-o", str(out)]) == EXIT_OK
    assert len(json.loads(out.read_text())["complexes"]) == 5


def test_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.pil"
    bad.write_text("length a = 5\nX = a b\n")
    assert main([str(bad)]) == EXIT_INPUT
    assert "line 2, column 7" in capsys.readouterr().err


def test_missing_file_and_empty_input(tmp_path):
    assert main([str(tmp_path / "nope.pil")]) == EXIT_INPUT
    empty = tmp_path / "empty.pil"
    empty.write_text("# nothing\nlength a = 3\n")
    assert main([str(empty)]) == EXIT_INPUT


def test_truncation_still_writes(tmp_path, capsys):
    out = tmp_path / "hcr.json"
    code = main([str(DATA / "hcr.pil"), "--max-complexes", "50", "-f", "json", "-o", str(out)])
    assert code == EXIT_TRUNCATED
    assert json.loads(out.read_text())["truncated"] is True
    assert "truncated" in capsys.readouterr().err


def test_numerical_failure_exit_code(tmp_path, monkeypatch):
    import dsdenum.cli as cli
    from dsdenum.condense import NumericalError

    def boom(*a, **k):
        raise NumericalError("singular")

    monkeypatch.setattr(cli, "condense_reactions", boom)
    assert main([str(DATA / "fig1_two_strand.pil"), "-c"]) == EXIT_NUMERIC


def test_kinetic_override_and_config_file(tmp_path, capsys):
    assert main([str(DATA / "fig1_two_strand.pil"), "-c", "--rates", "--k-bind", "3e6"]) == EXIT_OK
    assert capsys.readouterr().out == "B + T -> 1 @ 6.000000e+06 /M/s\n"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k-bind": 2e6}))
    assert main([str(DATA / "fig1_two_strand.pil"), "-c", "--rates", "--config", str(cfg)]) == EXIT_OK
    assert capsys.readouterr().out == "B + T -> 1 @ 4.000000e+06 /M/s\n"
    cfg.write_text(json.dumps({"no-such-option": 1}))
    assert main([str(DATA / "fig1_two_strand.pil"), "--config", str(cfg)]) == EXIT_INPUT


def test_release_cutoff_changes_network(capsys):
    main([str(DATA / "fig1_two_strand.pil")])
    default = capsys.readouterr().out
    main([str(DATA / "fig1_two_strand.pil"), "--release-cutoff", "11"])
    assert capsys.readouterr().out != default


@pytest.mark.parametrize("fmt", ["crn", "json", "dot", "sbml"])
def test_module_entry_point_is_deterministic(fmt):
    cmd = [sys.executable, "-m", "dsdenum", str(DATA / "three_arm_junction.pil"), "-f", fmt]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a
