import json
import subprocess
import sys

import pytest

from lingrowth import groups, sets
from lingrowth.cli import COMMANDS, build_parser, run
from lingrowth.reports import validate_report
from lingrowth.verdict import VIOLATED, Verdict


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    doc = json.loads(out)
    validate_report(doc)
    assert doc["exit_code"] == code
    return code, doc


SMOKE = [
    ("field-check", "--field", "GF(9)"),
    ("group-order", "SL(2,5)", "--enumerate"),
    ("enumerate", "PSL(2,5)"),
    ("tripling", "SL(2,5)", "--random-size", "10", "--kmax", "4"),
    ("ruzsa", "SL(2,5)", "--trials", "5"),
    ("subgroup-growth", "SL(2,5)", "--random-size", "8", "--symmetrize", "--subgroup", "upper"),
    ("slow-growth", "--n", "3"),
    ("diameter", "PSL(2,7)", "--random-pair"),
    ("girth", "PSL(2,7)", "--random-pair"),
    ("gap", "SL(2,5)"),
    ("expansion", "PSL(2,7)", "--random-pair", "--size", "10"),
    ("babai-sweep", "--p-range", "5..7", "--trials", "2"),
    ("girth-gap-scan", "--p-range", "5", "--trials", "2"),
    ("gowers", "PSL(2,7)", "--random-size", "150"),
    ("turbo", "PSL(2,7)", "--trials", "2"),
    ("product-free", "PSL(2,5)", "--budget", "500"),
    ("psl-trick", "PSL(2,7)", "--trials", "2"),
    ("baby-product", "--n", "3", "--q", "4", "--trials", "1"),
    ("sylow-cover", "SL(2,5)"),
    ("class-cover", "SL(2,5)"),
    ("conj-decomp", "PSL(2,5)", "--size", "5", "--trials", "1"),
    ("waring", "PSL(2,5)", "--word", "x^2", "--trials", "2"),
    ("coset-cover", "SL(2,5)", "--random-size", "20", "--subgroup", "diagonal"),
    ("soluble", "SL(2,3)"),
]


def test_every_subcommand_is_smoke_tested():
    build_parser()
    assert {argv[0] for argv in SMOKE} | {"suite"} == set(COMMANDS)


@pytest.mark.parametrize("argv", SMOKE, ids=[a[0] for a in SMOKE])
def test_subcommand_runs_and_validates(capsys, argv):
    code, doc = report(capsys, *argv)
    assert code == 0, doc
    assert doc["status"] == "ok" and doc["results"]
    assert doc["config"]["command"] == argv[0]


def test_byte_identical_reruns(capsys):
    argv = ["ruzsa", "SL(2,7)", "--trials", "10", "--seed", "4"]
    _, first, _ = invoke(capsys, *argv)
    _, second, _ = invoke(capsys, *argv)
    assert first == second
    _, third, _ = invoke(capsys, *argv[:-1], "5")
    assert third != first


def test_exit_codes(capsys):
    code, _, err = invoke(capsys, "group-order", "SL(2)")
    assert code == 2 and "UsageError" in err
    code, doc = report(capsys, "enumerate", "SL(3,5)", "--enumeration-cap", "1000")
    assert code == 3 and doc["status"] == "resource_cap"
    assert groups.ENUMERATION_CAP == 10**7  # restored afterwards
    code, doc = report(capsys, "ruzsa", "SL(2,7)", "--trials", "3", "--product-cap", "10")
    assert code == 3
    assert sets.PRODUCT_CAP == 10**7
    code, _ = report(capsys, "class-cover", "SL(2,5)", "--element", "zz")
    assert code == 2
    code, _ = report(capsys, "suite", "--profile", "nope")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_non_subgroup_is_usage_error(capsys, tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("SL(2,5)\n" + format(int(groups.make_spec("SL", 2, 5).transvection(0, 1, 1).code), "x") + "\n")
    code, doc = report(capsys, "soluble", "SL(2,5)", "--subgroup", str(path))
    assert code == 2 and doc["status"] == "usage_error" and "NotASubgroup" in doc["error"]


def test_violated_verdict_exits_one(capsys, monkeypatch):
    import lingrowth.cli as cli

    def fake(S, k):
        return Verdict("stub", str(S.spec), {"k": k}, VIOLATED, S.to_lines(), {})

    monkeypatch.setattr(cli, "check_ruzsa", fake)
    code, doc = report(capsys, "ruzsa", "SL(2,5)")
    assert code == 1 and doc["status"] == "violation"
    assert doc["results"][0]["witness_or_counterexample"][0] == "SL(2,5)"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# diameter run\nspec = PSL(2,7)\nseed = 3\nrandom-pair = true\n")
    code, doc = report(capsys, "diameter", "--config", str(cfg))
    assert code == 0 and doc["config"]["seed"] == 3 and doc["config"]["options"]["random_pair"] is True
    code, doc = report(capsys, "diameter", "--config", str(cfg), "--seed", "5")
    assert doc["config"]["seed"] == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("spec = PSL(2,7)\nwibble = 1\n")
    code, _, _ = invoke(capsys, "diameter", "--config", str(bad))
    assert code == 2


def test_csv_and_output_file(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, stdout, _ = invoke(capsys, "babai-sweep", "--p-range", "5,7", "--trials", "3", "--format", "csv", "-o", str(out))
    assert code == 0 and stdout == ""
    lines = out.read_text().splitlines()
    assert lines[0].startswith("spec,seed,trial") and len(lines) == 7


def test_saved_set_round_trip(capsys, tmp_path):
    path = tmp_path / "g.txt"
    code, _ = report(capsys, "enumerate", "SL(2,3)", "--save", str(path))
    assert code == 0 and len(path.read_text().splitlines()) == 25
    code, doc = report(capsys, "tripling", "SL(2,3)", "--set", str(path))
    assert doc["results"][0]["sizes"][:3] == [24, 24, 24]


def test_timing_flag(capsys):
    code, doc = report(capsys, "group-order", "SL(2,5)", "--timing")
    assert "wall_time_s" in doc


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "lingrowth", "sylow-cover", "SL(2,5)"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["exact_quantities"]["m"] <= 5
