from modelock.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_error_exit_code(capsys):
    assert main(["scan"]) == 2  # missing required options
    assert main(["nosuchcommand"]) == 2
    assert main([]) == 2


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "shrink", "--family", "nosuch",
                       "--spec", "2,2,5", "--guess", "0,0")
    assert code == 1
    assert "error:" in err


def test_shrink_pretty_output(capsys):
    code, out, _ = run(capsys, "shrink", "--spec", "2,2,5",
                       "--guess", "-1.9,0.22")
    assert code == 0
    assert "tauR = -2" in out
    assert "identities: all pass" in out


def test_shrink_csv_record(tmp_path, capsys):
    path = tmp_path / "sp.csv"
    code, _, _ = run(capsys, "shrink", "--spec", "2,2,5",
                     "--guess", "-1.9,0.22", "--csv", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    assert any("spec = 2,2,5" in ln for ln in header)
    data = [ln for ln in lines if not ln.startswith("#")]
    cols = data[0].split(",")
    vals = dict(zip(cols, data[1].split(",")))
    assert abs(float(vals["xi1"]) + 2.0) < 1e-9
    assert abs(float(vals["xi2"]) - 0.2) < 1e-9
    assert abs(float(vals["eta"])) < 1e-12


def test_csv_output_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["scan", "--x-range", "-2.2,-1.8", "--y-range", "0.1,0.3",
            "--grid", "8,4", "--n-max", "15", "--threads", "4"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_scan_full_precision(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    assert main(["scan", "--x-range", "-2.2,-1.8", "--y-range", "0.1,0.3",
                 "--grid", "4,2", "--n-max", "10",
                 "--out", str(path)]) == 0
    rows = [ln for ln in path.read_text().splitlines()
            if not ln.startswith("#")]
    assert rows[0] == "x,y,ell,m,n,period,rotnum,margin"
    # 17 significant digits survive a float round trip
    x = rows[1].split(",")[0]
    assert "%.17g" % float(x) == x
    assert abs(float(x) + 2.15) < 1e-12


def test_verify_cycle(capsys):
    code, out, _ = run(capsys, "verify", "cycle", "--word", "LRRLR",
                       "--at", "-1.95,0.15")
    assert code == 0
    assert "admissible = True" in out
    assert "s-formula residual" in out


def test_nearby_csv(capsys):
    code, out, _ = run(capsys, "nearby", "--spec", "2,2,5",
                       "--guess", "-1.9,0.22", "--side", "plus",
                       "--chi", "-1", "--k", "10")
    assert code == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0].startswith("side,chi,k,found")
    fields = lines[1].split(",")
    assert fields[:4] == ["plus", "-1", "10", "1"]


def test_predict_pretty(capsys):
    code, out, _ = run(capsys, "predict", "--spec", "2,2,5",
                       "--guess", "-1.9,0.22", "--k", "10",
                       "--chi-max", "1", "--format", "pretty")
    assert code == 0
    assert "shrinking-point" in out and "multiplier-minus1" in out
