"""Command line behavior: output shapes, exit codes, config handling."""

from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from isospec.cli import run
from isospec.isospectral_search import FAMILY_REPORT_SCHEMA
from isospec.spectrum import odd_sphere, space_lattice, spectrum_table


def _run(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# counting commands


def test_theta_full_plane(capsys):
    code, out, err = _run(
        capsys, ["theta", "--family", "D", "--n", "2", "--q", "1", "--s", "0,0", "--terms", "5"]
    )
    assert (code, err) == (0, "")
    assert out == "1,4,8,12,16\n"


def test_theta_twisted_line(capsys):
    code, out, _ = _run(
        capsys,
        ["theta", "--family", "D", "--n", "2", "--q", "4", "--s", "0,1", "--u", "1", "--terms", "6"],
    )
    assert code == 0
    assert out == "0,1,2,3,4,5\n"


def test_theta_even_sublattice_flag(capsys):
    code, out, _ = _run(
        capsys,
        ["theta", "--family", "C2", "--n", "2", "--q", "1", "--s", "0,0", "--even", "--terms", "4"],
    )
    assert code == 0
    assert out == "1,4,8,12\n"  # even-sum max-norm rings of Z^2


def test_rational_md_and_json(capsys):
    base = ["rational", "--family", "D", "--n", "1", "--q", "1", "--s", "0"]
    code, out, _ = _run(capsys, base)
    assert code == 0
    assert out.splitlines() == [
        "q: 1",
        "rank: 1",
        "numerator: 1,1",
        "denominator: (1-z^1)^2",
    ]
    code, out, _ = _run(capsys, base + ["--format", "json"])
    assert code == 0
    assert json.loads(out) == {"q": 1, "rank": 1, "numerator": [1, 1]}


# ---------------------------------------------------------------------------
# spectral commands


def test_spectrum_json_matches_library(capsys):
    code, out, _ = _run(
        capsys,
        ["spectrum", "--space", "s:3", "--q", "7", "--s", "1,2", "--levels", "10", "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 10
    space = odd_sphere(2)
    table = spectrum_table(space_lattice(space, 7, (1, 2)), space, 10)
    assert payload == [
        {"k": k, "eigenvalue": lam, "multiplicity": m} for k, lam, m in table.entries
    ]


def test_spectrum_csv_header(capsys):
    code, out, _ = _run(
        capsys,
        ["spectrum", "--space", "hp1", "--q", "4", "--s", "0,1", "--levels", "3", "--format", "csv"],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,eigenvalue,multiplicity"
    assert len(lines) == 4


def test_genfun_exact_md(capsys):
    code, out, _ = _run(
        capsys, ["genfun", "--space", "s:3", "--q", "1", "--s", "0,0", "--terms", "5"]
    )
    assert code == 0
    assert out.splitlines() == [
        "exact: yes",
        "numerator: 1,1,-1,-1",
        "denominator: (1-z)^3 (1-z^2)",
        "series: 1,4,9,16,25",
    ]


def test_genfun_twisted_series_only(capsys):
    code, out, _ = _run(
        capsys,
        ["genfun", "--space", "s:3", "--q", "4", "--s", "0,1", "--u", "1", "--format", "json"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["exact"] is False
    assert doc["numerator"] is None
    assert len(doc["series"]) == 2 * 3 * 4  # default terms 2(n+1)q


# ---------------------------------------------------------------------------
# subgroup bookkeeping


def test_conjugate_canonical_form(capsys):
    code, out, _ = _run(capsys, ["conjugate", "--family", "D", "--n", "2", "--q", "7", "--s", "2,4"])
    assert (code, out) == (0, "1,2\n")


def test_conjugate_pair_decision(capsys):
    code, out, _ = _run(
        capsys,
        ["conjugate", "--family", "D", "--n", "2", "--q", "7", "--s", "1,2", "--s2", "2,4"],
    )
    assert (code, out) == (0, "true\n")
    code, out, _ = _run(
        capsys,
        ["conjugate", "--family", "D", "--n", "3", "--q", "11", "--s", "1,2,3", "--s2", "1,2,4"],
    )
    assert (code, out) == (0, "false\n")


def test_enumerate_lists_representatives(capsys):
    code, out, _ = _run(capsys, ["enumerate", "--family", "D", "--n", "2", "--q", "4"])
    assert code == 0
    assert out.splitlines() == ["0,1", "1,1", "1,2"]


# ---------------------------------------------------------------------------
# searches and bundled tables


def test_search_csv(capsys):
    code, out, _ = _run(
        capsys,
        ["search", "--space", "s:3", "--qmax", "7", "--mode", "twisted", "--format", "csv"],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "space,q,family,s,u,manifold,singularity_profile"
    assert len(lines) == 8  # 2 + 3 + 2 members across the three families


def test_search_json_schema(capsys):
    code, out, _ = _run(
        capsys,
        ["search", "--space", "hp1", "--qmax", "9", "--mode", "twisted", "--format", "json"],
    )
    assert code == 0
    jsonschema.validate(json.loads(out), FAMILY_REPORT_SCHEMA)


def test_search_requires_qmax(capsys):
    code, out, err = _run(capsys, ["search", "--space", "s:3"])
    assert code == 1
    assert out == ""
    assert err.startswith("error:") and "qmax" in err


def test_tables_command(capsys):
    code, out, _ = _run(capsys, ["tables", "--table", "5", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, FAMILY_REPORT_SCHEMA)
    assert sum(len(block["families"]) for block in doc) == 17


def test_verify_passing_table(capsys):
    code, out, _ = _run(capsys, ["verify", "--table", "5"])
    assert code == 0
    assert out == "table 5 (q<=9): ok, 17 families\n"


def test_verify_prefix(capsys):
    code, out, _ = _run(capsys, ["verify", "--table", "2", "--qmax", "11"])
    assert code == 0
    assert out == "table 2 (q<=11): ok, 3 families\n"


def test_verify_reports_table_gaps(capsys):
    # the bundled untwisted projective table omits families the search
    # provably finds, so the diff lists extras and exits nonzero
    code, out, _ = _run(capsys, ["verify", "--table", "4"])
    assert code == 1
    lines = out.splitlines()
    assert lines[0].startswith("table 4 (q<=10): MISMATCH, 10 expected, 15 found")
    assert sum(1 for line in lines if line.startswith("  extra:")) == 5
    assert not any(line.startswith("  missing:") for line in lines)


def test_noncyclic_command(capsys):
    code, out, _ = _run(capsys, ["noncyclic", "--depth", "20", "--budget", "20"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "one-norm theta equal to depth 20: yes"
    assert lines[1] == "two-norm theta equal up to 20: yes"
    assert lines[2] == "eigenvalue-matched element pairs: 8/8"
    assert lines[3] == "pairing covers both groups: yes"


# ---------------------------------------------------------------------------
# exit codes


def test_gcd_violation_exits_one(capsys):
    code, out, err = _run(
        capsys, ["theta", "--family", "D", "--n", "2", "--q", "4", "--s", "0,2"]
    )
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_unknown_space_is_usage_error(capsys):
    code, _, _ = _run(capsys, ["search", "--space", "rp:2", "--qmax", "5"])
    assert code == 2


def test_missing_required_flag_is_usage_error(capsys):
    code, _, _ = _run(capsys, ["theta", "--family", "D", "--n", "2", "--s", "1,2"])
    assert code == 2


def test_unknown_command_is_usage_error(capsys):
    assert run(["frobnicate"]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()


def test_bad_term_count_exits_one(capsys):
    code, _, err = _run(
        capsys, ["theta", "--family", "D", "--n", "2", "--q", "5", "--s", "1,2", "--terms", "0"]
    )
    assert code == 1
    assert "term" in err


# ---------------------------------------------------------------------------
# configuration


def test_config_supplies_search_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[search]\nqmax = 7\nmode = "twisted"\nformat = "csv"\n')
    code, from_cfg, _ = _run(capsys, ["search", "--space", "s:3", "--config", str(cfg)])
    assert code == 0
    code, explicit, _ = _run(
        capsys,
        ["search", "--space", "s:3", "--qmax", "7", "--mode", "twisted", "--format", "csv"],
    )
    assert code == 0
    assert from_cfg == explicit


def test_config_flags_can_be_overridden(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('qmax = 5\nmode = "twisted"\n')
    code, out, _ = _run(
        capsys, ["search", "--space", "s:3", "--qmax", "7", "--config", str(cfg), "--format", "csv"]
    )
    assert code == 0
    assert any(line.startswith("s:3,7,") for line in out.splitlines())


def test_config_missing_file(capsys):
    code, _, err = _run(capsys, ["search", "--space", "s:3", "--config", "/nonexistent.toml"])
    assert code == 1
    assert "cannot load config" in err


def test_config_malformed(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("qmax = [unterminated")
    code, _, err = _run(capsys, ["search", "--space", "s:3", "--config", str(cfg)])
    assert code == 1
    assert "cannot load config" in err


def test_threads_env_fallback_keeps_output(monkeypatch, capsys):
    argv = ["search", "--space", "s:3", "--qmax", "6", "--mode", "twisted", "--format", "csv"]
    code, baseline, _ = _run(capsys, argv)
    assert code == 0
    monkeypatch.setenv("ISOSPEC_THREADS", "3")
    code, with_env, _ = _run(capsys, argv)
    assert code == 0
    assert with_env == baseline


def test_repeat_runs_are_byte_identical(capsys):
    argv = ["tables", "--table", "1", "--format", "md"]
    code, first, _ = _run(capsys, argv)
    code2, second, _ = _run(capsys, argv)
    assert (code, code2) == (0, 0)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "isospec.cli", "theta", "--family", "D", "--n", "2",
         "--q", "1", "--s", "0,0", "--terms", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1,4,8,12,16\n"
