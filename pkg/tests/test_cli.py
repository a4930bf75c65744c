import subprocess
import sys

import pytest

from fanosod import cli


def run(*argv):
    return subprocess.run(
        [sys.executable, "-m", "fanosod", *argv], capture_output=True, text=True, check=False
    )


@pytest.mark.parametrize("name", ["M", "X", "P3", "K3cover"])
def test_analyze_text_golden(name, golden):
    res = run("analyze", f"{name}.vd")
    assert res.returncode == 0, res.stderr
    assert res.stdout == golden(f"analyze_{name}.txt")


def test_analyze_machine_golden(golden):
    res = run("--format", "machine", "analyze", "X.vd")
    assert res.returncode == 0
    assert res.stdout == golden("analyze_X.machine")
    kv = dict(line.split("=", 1) for line in res.stdout.splitlines())
    assert kv["hodge.h[3,3]"] == "20"
    assert kv["k0"] == "Z^48 (+) Z/2"
    assert kv["obstruction"] == "Obstructed(2)"


def test_format_flag_after_subcommand(capsys):
    assert cli.main(["analyze", "M.vd", "--format", "machine"]) == 0
    out = capsys.readouterr().out
    assert "hodge.h[2,2]=12\n" in out
    assert "canonical=-s1 - H'\n" in out


def test_analyze_is_deterministic():
    assert run("analyze", "X.vd").stdout == run("analyze", "X.vd").stdout


def test_text_report_contents(capsys):
    cli.main(["analyze", "M.vd"])
    out = capsys.readouterr().out
    assert "h^{2,2} = 12" in out
    assert "diagonal = yes" in out
    assert "K0 = Z^18 (+) Z/2" in out
    assert "full exceptional collection: Obstructed(2)" in out


def test_verify_paper_golden(golden):
    res = run("--format", "machine", "verify-paper")
    assert res.returncode == 0, res.stdout + res.stderr
    assert res.stdout == golden("verify_paper_seed1.machine")


def test_verify_paper_only_group(capsys):
    assert cli.main(["verify-paper", "--only", "theorem1"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 4 and all("theorem1" in l for l in lines)


def test_verify_paper_degenerate_fails(capsys):
    assert cli.main(["verify-paper", "--inject-degenerate", "--only", "lemma"]) == 1
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "first failing check: section avoids E1 and E2" in captured.err


def test_verify_paper_with_section_file(tmp_path, capsys, golden):
    good = tmp_path / "phi.txt"
    good.write_text(golden("section_seed1.txt"))
    assert cli.main(["verify-paper", "--only", "lemma", "--section", str(good)]) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("1 0 0 0 0 0 1 0 0 0 0 0\n0 1 0 0 0 0 0 0 0 1 0 0\n0 0 1 0 0 0 0 0 0 0 0 1\n")
    assert cli.main(["verify-paper", "--only", "lemma", "--section", str(bad)]) == 1
    garbled = tmp_path / "garbled.txt"
    garbled.write_text("not numbers\n")
    assert cli.main(["verify-paper", "--section", str(garbled)]) == 2


@pytest.mark.parametrize(
    "file, cls, expected",
    [
        ("J.vd", "H", ["h0 = 12", "h1 = 0", "chi = 12"]),
        ("Jt.vd", "-6Ht", ["h5 = 1", "chi = -1"]),
        ("P3.vd", "-h", ["h0 = 0", "h3 = 0", "chi = 0"]),
        ("P3.vd", "-4h", ["h3 = 1"]),
    ],
)
def test_cohomology_command(file, cls, expected, capsys):
    # "--" keeps negative classes such as -6Ht from being read as options
    assert cli.main(["cohomology", file, "--", cls]) == 0
    out = capsys.readouterr().out.splitlines()
    for line in expected:
        assert line in out


def test_cohomology_machine_format(capsys):
    assert cli.main(["--format", "machine", "cohomology", "J.vd", "H"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "h0=12"


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "does-not-exist.vd"],
        ["cohomology", "X.vd", "H"],
        ["cohomology", "J.vd", "H7"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2
    assert capsys.readouterr().err.startswith("fanosod: error:")


def test_parse_error_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.vd"
    f.write_text("X = projective\n")
    assert cli.main(["analyze", str(f)]) == 2
    assert "line 1, column 15" in capsys.readouterr().err


def test_usage_error_exit_2():
    assert run("verify-paper", "--only", "nonsense").returncode == 2
    assert run().returncode == 2
