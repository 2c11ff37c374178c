import json
import subprocess
import sys

import pytest

from twinlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_census_stdout(capsys):
    code, out, _ = run_cli(capsys, "census", "--limit", "1000")
    assert code == 0
    assert out.splitlines() == [
        "n,pi2,c1,c7,c9,exceptional",
        "10,2,0,0,0,2",
        "100,8,3,1,2,2",
        "1000,35,13,9,11,2",
    ]


def test_census_json_to_file(capsys, tmp_path):
    out_path = tmp_path / "census.json"
    code, out, _ = run_cli(capsys, "census", "--limit", "100",
                           "--format", "json", "--out", str(out_path))
    assert code == 0 and out == ""
    data = json.loads(out_path.read_text())
    assert data[-1]["pi2"] == 8


def test_scientific_limit_notation(capsys):
    code, out, _ = run_cli(capsys, "census", "--limit", "1e3",
                           "--checkpoints", "1e2,1e3")
    assert code == 0
    assert out.splitlines()[1] == "100,8,3,1,2,2"


def test_classes_skips_with_notice(capsys):
    code, out, err = run_cli(capsys, "classes", "--limit", "10000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,p1,p7,p9,chi2,p_value"
    assert len(lines) == 4  # n=10 has no classed pairs
    assert "no classed twin pairs" in err


def test_integral_both_methods(capsys):
    code, out, _ = run_cli(capsys, "integral", "--limit", "1000000",
                           "--checkpoints", "1000,1000000")
    assert code == 0
    assert out.startswith("n,integral,error_estimate,hl_pred\n")
    code, out2, _ = run_cli(capsys, "integral", "--limit", "1000000",
                            "--checkpoints", "1000,1000000",
                            "--method", "quadrature")
    assert code == 0
    a = float(out.splitlines()[2].split(",")[1])
    b = float(out2.splitlines()[2].split(",")[1])
    assert abs(a - b) <= 1e-9 * a


def test_mc_reproducible(capsys):
    args = ("mc", "--limit", "10000", "--samples", "4096", "--seed", "11")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args, "--threads", "4")
    assert out1 == out2
    assert out1.startswith("n,samples,source,integral,stderr,scaled\n")


def test_mc_stratified_mode(capsys):
    code, out, _ = run_cli(capsys, "mc", "--limit", "10000",
                           "--samples", "128", "--mode", "annex-stratified")
    assert code == 0
    assert out.splitlines()[1].startswith("10000,128,annex-stratified,")


def test_mc_study(capsys):
    code, out, _ = run_cli(capsys, "mc", "--limit", "100000", "--study",
                           "--ladder", "256,1024", "--study-seeds", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,mean_rel_err,fitted_slope"
    assert [line.split(",")[0] for line in lines[1:]] == ["256", "1024"]


def test_mc_study_needs_ladder(capsys):
    code, _, err = run_cli(capsys, "mc", "--limit", "1000", "--study")
    assert code == 2
    assert "ladder" in err


def test_qmc_sources(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "qmc", "--limit", "100000",
                           "--samples", "4096", "--lds", "vdc:3")
    assert code == 0
    assert out.splitlines()[1].split(",")[2] == "vdc:3"
    gap_file = tmp_path / "gaps.txt"
    gap_file.write_text("2\n4\n6\n4\n2\n")
    code, out, _ = run_cli(capsys, "qmc", "--limit", "100000",
                           "--lds-file", str(gap_file))
    assert code == 0
    assert out.splitlines()[1].split(",")[2] == "file"


def test_brun_table(capsys):
    code, out, _ = run_cli(capsys, "brun", "--limit", "100000",
                           "--checkpoints", "10,100000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "limit,r,last_q,brun_sum"
    assert lines[1].startswith("10,2,5,8.76190e-01")


def test_report_with_side_files(capsys, tmp_path):
    classes_out = tmp_path / "classes.csv"
    brun_out = tmp_path / "brun.csv"
    figdir = tmp_path / "figs"
    code, out, err = run_cli(
        capsys, "report", "--limit", "100000", "--samples", "2048",
        "--classes-out", str(classes_out), "--brun-out", str(brun_out),
        "--figures", str(figdir))
    assert code == 0
    assert out.startswith("n,pi2,hl_pred,hl_err_pct,mc,mc_err_pct,lds,lds_err_pct\n")
    assert classes_out.read_text().startswith("n,p1,p7,p9,chi2,p_value\n")
    assert brun_out.read_text().startswith("limit,r,last_q,brun_sum\n")
    made = {p.name for p in figdir.iterdir()}
    assert made == {"comparison.png", "proportions.png", "brun.png"}
    for p in figdir.iterdir():
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_invalid_values_exit_2(capsys):
    code, _, err = run_cli(capsys, "census", "--limit", "1000",
                           "--checkpoints", "500,100")
    assert code == 2 and "ascending" in err
    code, _, err = run_cli(capsys, "qmc", "--limit", "1000",
                           "--lds", "halton")
    assert code == 2
    code, _, err = run_cli(capsys, "census", "--limit", "0")
    assert code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["census", "--limit", "100", "--bogus"])
    assert exc.value.code == 2


def test_missing_output_directory_exit_3(capsys):
    code, _, err = run_cli(capsys, "census", "--limit", "100",
                           "--out", "/nonexistent-dir/x.csv")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "twinlab", "census", "--limit", "100"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "100,8,3,1,2,2"
