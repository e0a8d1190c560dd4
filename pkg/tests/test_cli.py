"""Exit codes, JSON shape, and determinism of the command line front end."""

import json
import subprocess
import sys

import pytest

from hermquot import cli, models
from hermquot.gfield import make_field


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_field_payload(capsys):
    code, d = run_cli(capsys, "field", "--p", "2", "--h", "3")
    assert code == 0
    assert d["q"] == 8 and d["deg"] == 12 and d["order"] == 4096
    assert d["modulus"] == make_field(2, 3).modulus
    assert d["version"]


def test_construct_defaults_to_first_admissible_b(capsys):
    ctx = make_field(2, 3)
    first = int(models.admissible_b(ctx, "family_I")[0])
    code, d = run_cli(capsys, "construct", "--family", "I", "--p", "2", "--h", "3")
    assert code == 0 and d["b"] == first
    code, d2 = run_cli(
        capsys, "construct", "--family", "I", "--p", "2", "--h", "3", "--b", str(first)
    )
    assert code == 0 and d2 == d


def test_construct_family_II_char2_is_invalid_input(capsys):
    code, _ = run_cli(capsys, "construct", "--family", "II", "--p", "2", "--h", "3")
    assert code == 2


def test_unknown_family_is_usage_error():
    with pytest.raises(SystemExit) as e:
        cli.main(["construct", "--family", "IV", "--p", "2", "--h", "3"])
    assert e.value.code == 2


def test_count_hermitian(capsys):
    code, d = run_cli(capsys, "count", "--family", "hermitian", "--p", "3", "--h", "1")
    assert code == 0
    assert d["N"] == 28 and d["maximal"] and d["path"] == "direct"
    assert d["affine"] == 27 and d["infinity"] == 1


def test_count_family_III_goes_through_quotient(capsys):
    code, d = run_cli(capsys, "count", "--family", "III", "--p", "2", "--h", "2")
    assert code == 0
    assert d["N"] == 25 and d["path"] == "quotient" and d["maximal"]
    code, _ = run_cli(
        capsys, "count", "--family", "III", "--p", "2", "--h", "2", "--k", "2"
    )
    assert code == 2


def test_genus_formula_and_claimed(capsys):
    code, d = run_cli(capsys, "genus", "--family", "II", "--p", "5", "--h", "2")
    assert code == 0 and d["genus"] == 10
    code, d = run_cli(capsys, "genus", "--family", "hermitian", "--p", "2", "--h", "2")
    assert code == 0 and d["genus"] == 6


def test_semigroup_modes(capsys):
    code, d = run_cli(capsys, "semigroup", "--gens", "2,9")
    assert code == 0 and d["genus"] == 4 and d["largest_gap"] == 7
    code, d = run_cli(capsys, "semigroup", "--family", "II", "--p", "3", "--h", "2")
    assert code == 0
    assert d["generators"] == [3, 4, 10] and d["telescopic"] and d["genus"] == 3
    # no semigroup is attached to family III
    code, _ = run_cli(capsys, "semigroup", "--family", "III", "--p", "2", "--h", "2")
    assert code == 2
    code, _ = run_cli(capsys, "semigroup", "--gens", "2,x")
    assert code == 2


def test_iso_family_I_with_oracle(capsys):
    ctx = make_field(2, 3)
    bs = [int(x) for x in models.admissible_b(ctx, "family_I")]
    code, d = run_cli(
        capsys, "iso", "--family", "I", "--p", "2", "--h", "3",
        "--b", str(bs[0]), "--bbar", str(bs[1]), "--oracle", "1",
    )
    assert code == 0
    assert d["iso"] is True and d["case"] == "both_cubic"
    assert d["oracle"] is True and d["oracle_tier"] == 1
    w = d["witness"]
    assert set(w) == {"c", "delta", "sigma", "b", "bbar"}


def test_iso_family_II_kappa(capsys):
    ctx = make_field(3, 2)
    b = int(models.admissible_b(ctx, "family_II")[0])
    bbar = int(ctx.mul(b, 2))
    code, d = run_cli(
        capsys, "iso", "--family", "II", "--p", "3", "--h", "2",
        "--b", str(b), "--bbar", str(bbar),
    )
    assert code == 0 and d["iso"] is True and d["kappa"] == 2


def test_iso_inventory(capsys):
    code, d = run_cli(capsys, "iso", "--family", "I", "--p", "2", "--h", "4",
                      "--inventory")
    assert code == 0
    assert d["class_sizes"] == [6, 6, 2] and d["classifier_agreement"] is True


def test_iso_requires_b_pair_or_inventory(capsys):
    code, _ = run_cli(capsys, "iso", "--family", "I", "--p", "2", "--h", "3")
    assert code == 2


def test_lemma_subcommands(capsys):
    code, d = run_cli(capsys, "verify-lemma-a", "--p", "3")
    assert code == 0 and d["ok"] and d["total_degree"] == 66
    code, d = run_cli(capsys, "verify-lemma-b", "--p", "2", "--h", "3")
    assert code == 0
    assert len(d["results"]) == 8
    assert all(r["terminal_ok"] and r["identity_ok"] for r in d["results"])
    code, _ = run_cli(capsys, "verify-lemma-b", "--p", "3", "--h", "2")
    assert code == 2


def test_verify_single_check(capsys):
    code, d = run_cli(capsys, "verify", "--check", "hermitian_baseline")
    assert code == 0 and d["all_ok"] is True
    assert [r["id"] for r in d["results"]] == ["hermitian_baseline"]
    assert "seconds" not in d["results"][0]


def test_verify_no_selection_is_empty(capsys):
    code, d = run_cli(capsys, "verify")
    assert code == 0 and d == {"results": []}


def test_verify_unknown_id(capsys):
    code, _ = run_cli(capsys, "verify", "--check", "nonsense")
    assert code == 2


def test_verify_failure_exits_one(capsys, monkeypatch):
    fake = [{"id": "family_II", "ok": False, "details": {}, "seconds": 0.0}]
    monkeypatch.setattr(cli.acceptance, "run_all", lambda ids=None: fake)
    code, d = run_cli(capsys, "verify", "--all")
    assert code == 1 and d["all_ok"] is False
    assert d["results"][0]["id"] == "family_II"


def test_stdout_is_byte_identical_across_runs(capsys):
    argv = ["aut", "--family", "III", "--p", "2", "--h", "2"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    second = capsys.readouterr().out
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hermquot", "field", "--p", "2", "--h", "1"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    d = json.loads(proc.stdout)
    assert d["q"] == 2
    # timings stay on stderr so stdout parses clean
    assert proc.stderr.startswith("#")
