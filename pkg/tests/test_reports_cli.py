import json
import subprocess
import sys
from fractions import Fraction

import pytest

from extremal_regular import reports
from extremal_regular.cli import run
from extremal_regular.enumeration import FamilySpec
from extremal_regular.extremal import check_many
from extremal_regular.graphcore import complete
from extremal_regular.hunt import maximizer_profile, scan_conjecture

from families import cubic_connected


# report serialisation ------------------------------------------------------------------


def test_bound_reports_roundtrip():
    rs = check_many(cubic_connected(10), "occupancy_max", lam=Fraction(2, 3))
    assert reports.bound_reports_from_json(reports.bound_reports_json(rs)) == rs
    rows = reports.read_csv(reports.bound_reports_csv(rs))
    assert len(rows) == len(rs) and rows[0]["bound_id"] == "occupancy_max"
    assert all("/" in r["lhs_base"] or r["lhs_base"].isdigit() for r in rows)


def test_scan_and_profile_roundtrip():
    fam = FamilySpec.parse("d=3,connected,nmax=8")
    scan = scan_conjecture("potts_energy", fam, {"q": 3}, keep_values=True)
    assert reports.scan_from_json(reports.scan_json(scan)) == scan
    rows = reports.read_csv(reports.scan_csv(scan))
    assert {r["label"] for r in rows} == {"x=1/4", "x=1/2", "x=3/4"}
    prof = maximizer_profile(3, fam, complete(3), k_grid=[1, 2])
    assert reports.profile_from_json(reports.profile_json(prof)) == prof
    assert len(reports.read_csv(reports.profile_csv(prof))) == len(prof.values)


def test_counts_are_exact_decimals():
    big = reports.dumps({"x": str(3**200)})
    assert str(3**200) in big and "e+" not in big
    assert reports.approx_root(15, 6).startswith("~1.57")


# command line ----------------------------------------------------------------------------


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_c4_hind(capsys):
    assert cli(capsys, "count", "C:4", "H_ind")[:2] == (0, "7\n")


def test_count_exact_large(capsys):
    code, out, _ = cli(capsys, "count", "C:30", "K:4")
    assert code == 0 and out.strip() == str(3**30 + 3)


def test_count_malformed_graph6(tmp_path, capsys):
    bad = tmp_path / "malformed.g6"
    bad.write_text("C~\nC~!\n")
    code, _, err = cli(capsys, "count", "--file", str(bad), "H_ind")
    assert code == 2 and "line 2, column 3" in err


def test_count_lg_target(tmp_path, capsys):
    lg = tmp_path / "wr.lg"
    lg.write_text("3\n110\n111\n011\n")
    assert cli(capsys, "count", "C:4", "--target-file", str(lg))[:2] == (0, "35\n")
    lg.write_text("3\n110\n111\n001\n")
    code, _, err = cli(capsys, "count", "C:4", "--target-file", str(lg))
    assert code == 2 and "asymmetric" in err


def test_poly_and_occupancy(capsys):
    assert cli(capsys, "poly", "K:3,3", "--kind", "match")[:2] == (0, "1 9 18 6\n")
    assert cli(capsys, "poly", "C:4")[:2] == (0, "1 4 2\n")
    code, out, _ = cli(capsys, "poly", "K:2", "--kind", "potts", "--q", "2", "--format", "json")
    assert code == 0 and json.loads(out)[0]["coefficients"] == ["2", "2"]
    code, out, _ = cli(capsys, "occupancy", "K:3,3", "--lambda", "1")
    assert code == 0 and out.startswith("4/15")
    assert cli(capsys, "poly", "K:2", "--kind", "potts")[0] == 2


def test_verify_family_exit_zero(capsys):
    code, out, _ = cli(capsys, "verify", "--bound", "zhao_max_ind", "--family", "d=3,connected,nmax=8", "--no-cache")
    assert code == 0 and "violated 0" in out


def test_verify_single_graph_and_hypothesis_error(capsys):
    code, out, _ = cli(capsys, "verify", "--bound", "pm_max", "--graph", "K:3,3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["reports"][0]["verdict"] == "tight"
    code, _, err = cli(capsys, "verify", "--bound", "kahn_max_ind", "--graph", "petersen")
    assert code == 2 and "bipartite" in err


def test_verify_bigraph_target(capsys):
    code, _, _ = cli(capsys, "verify", "--bound", "bigraph_target_max", "--graph", "petersen", "--A", "C:4", "--B", "K:1,1")
    assert code == 0


def test_usage_errors(capsys):
    assert cli(capsys)[0] == 2
    assert cli(capsys, "count")[0] == 2
    assert cli(capsys, "count", "C:4", "nonsense")[0] == 2
    assert cli(capsys, "verify", "--bound", "pm_max")[0] == 2
    assert cli(capsys, "enumerate", "--family", "d=3,nmax=20", "--no-cache")[0] == 2
    assert cli(capsys, "scan", "--conjecture", "coloring_max", "--family", "d=3,nmax=8", "--q", "2", "--no-cache")[0] == 2
    assert cli(capsys, "occupancy", "C:4", "--lambda", "x")[0] == 2


def test_enumerate_writes_graph6(tmp_path, capsys):
    out = tmp_path / "cubic.g6"
    code, _, _ = cli(capsys, "enumerate", "--family", "d=3,connected,nmax=8", "--out", str(out), "--cache-dir", str(tmp_path / "c"))
    assert code == 0 and len(out.read_text().split()) == 8
    assert list((tmp_path / "c").iterdir())
    code, text, _ = cli(capsys, "enumerate", "--family", "d=3,nmax=12", "--max-n", "12", "--no-cache", "--format", "json")
    assert code == 0 and json.loads(text)["count"] == 124  # 112 connected plus 12 disconnected


def test_scan_violation_exit_code(capsys):
    __import__("test_hunt")  # registers the planted scanner

    code, out, _ = cli(capsys, "scan", "--conjecture", "planted_ind_cap", "--family", "d=3,connected,nmax=8", "--no-cache")
    assert code == 1 and "violation " in out
    code, out, _ = cli(capsys, "scan", "--conjecture", "coloring_max", "--family", "d=3,nmax=8", "--q", "3", "--no-cache")
    assert code == 0 and "violations 0" in out


def test_scan_and_profile_outputs(capsys):
    code, out, _ = cli(capsys, "scan", "--conjecture", "potts_energy", "--family", "d=3,connected,nmax=8", "--q", "3", "--x-grid", "1/3,2/3", "--values", "--format", "csv", "--no-cache")
    assert code == 0 and out.startswith("graph,n,label,base,root,verdict")
    code, out, _ = cli(capsys, "profile", "--d", "4", "--target", "K:4", "--family", "d=4,connected,nmax=7", "--k-grid", "1,1000", "--no-cache")
    assert code == 0 and "k=1000" in out and "neither" in out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("format = json\nworkers = 1\nno_cache = true\n")
    code, out, _ = cli(capsys, "count", "C:4", "H_ind", "--config", str(conf))
    assert code == 0 and json.loads(out)[0]["count"] == "7"
    code, out, _ = cli(capsys, "count", "C:4", "H_ind", "--config", str(conf), "--format", "csv")
    assert out.splitlines() == ["graph,target,count", "C:4,H_ind,7"]
    conf.write_text("colour = blue\n")
    assert cli(capsys, "count", "C:4", "H_ind", "--config", str(conf))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "--conjecture", "coloring_max", "--family", "d=3,connected,nmax=10", "--q", "3", "--values"],
        ["verify", "--bound", "indep_poly_max", "--family", "d=3,connected,nmax=10", "--lambda", "3/2"],
        ["profile", "--d", "3", "--target", "H_WR", "--family", "d=3,nmax=10"],
    ],
)
@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_output_independent_of_worker_count(argv, fmt, capsys):
    base = argv + ["--format", fmt, "--no-cache"]
    one = cli(capsys, *base, "--workers", "1")
    two = cli(capsys, *base, "--workers", "2")
    assert one[0] == two[0] == 0
    assert one[1] == two[1]


def test_json_reparses_to_report(capsys):
    code, out, _ = cli(capsys, "scan", "--conjecture", "coloring_max", "--family", "d=3,connected,nmax=8", "--q", "3", "--format", "json", "--no-cache")
    report = reports.scan_from_json(out)
    assert report == scan_conjecture("coloring_max", FamilySpec.parse("d=3,connected,nmax=8"), {"q": 3})


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "extremal_regular", "count", "C:4", "H_ind"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7\n"
