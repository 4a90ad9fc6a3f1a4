import csv
import hashlib
import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from oracles import raney_bruteforce
from raney.cli import main
from raney.density import eval_closed_p32


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_moments_exact(capsys):
    code, out, err = run(capsys, "moments", "--p", "2", "--r", "1", "--max", "5", "--exact")
    assert code == 0
    table = rows(out)
    assert table[0] == ["m", "value"]
    assert [r[1] for r in table[1:]] == ["1", "1", "2", "5", "14", "42"]
    manifest = json.loads(err)
    assert manifest["command"] == "moments"
    assert manifest["output_sha256"] == hashlib.sha256(out.encode()).hexdigest()


def test_moments_r_zero(capsys):
    code, out, _ = run(capsys, "moments", "--p", "2", "--r", "0", "--max", "3")
    assert [float(r[1]) for r in rows(out)[1:]] == [1, 0, 0, 0]


def test_moments_bures(capsys):
    _, out, _ = run(capsys, "moments", "--p", "3/2", "--r", "1/2", "--max", "3", "--exact")
    values = [Fraction(r[1]) for r in rows(out)[1:]]
    assert values == [1, Fraction(1, 2), Fraction(5, 8), 1]
    assert all((4 ** m * v).denominator == 1 for m, v in enumerate(values))


def test_moments_float_digits(capsys):
    _, out, _ = run(capsys, "moments", "--p", "5/2", "--r", "1/3", "--max", "4")
    last = rows(out)[-1][1]
    assert float(last) == pytest.approx(float(raney_bruteforce(Fraction(5, 2), Fraction(1, 3), 4)), rel=1e-16)
    assert len(last.replace(".", "").lstrip("0")) <= 17


def test_decimal_flags_are_exact(capsys):
    _, a, _ = run(capsys, "moments", "--p", "1.5", "--r", "0.5", "--max", "6", "--exact")
    _, b, _ = run(capsys, "moments", "--p", "3/2", "--r", "1/2", "--max", "6", "--exact")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["moments", "--p", "two", "--r", "1", "--max", "3"],
    ["moments", "--p", "1/2", "--r", "1", "--max", "3"],
    ["moments", "--p", "2", "--r", "-1", "--max", "3"],
    ["moments", "--p", "2", "--r", "1"],
    ["density", "--p", "2", "--r", "1", "--points", "1"],
    ["scan", "--p-range", "3:2"],
    ["rmt", "--size", "1"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    err = capsys.readouterr().err
    flag = next(a for a in argv if a.startswith("--"))
    if argv[0] != "moments" or "--max" in argv:
        assert flag.lstrip("-").split("-")[0] in err


def test_density_semicircle(capsys):
    code, out, err = run(capsys, "density", "--p", "2", "--r", "2", "--points", "3", "--range", "0:4")
    assert code == 0
    table = rows(out)
    assert table[0] == ["x", "density", "flag"]
    assert [float(r[0]) for r in table[1:]] == [0, 2, 4]
    assert table[1][1] == "0" and table[3][1] == "0"
    assert float(table[2][1]) == pytest.approx(1 / math.pi, rel=1e-15)
    assert {r[2] for r in table[1:]} == {"ok"}
    assert json.loads(err)["extra"]["closed_form_tag"] == "semicircle"


def test_density_closed_form_curve(capsys):
    _, out, _ = run(capsys, "density", "--p", "3/2", "--r", "1", "--points", "512", "--force-general")
    table = np.array([[float(v) for v in r[:2]] for r in rows(out)[1:]])
    assert table.shape == (512, 2)
    inner = table[1:-1]
    assert np.max(np.abs(inner[:, 1] - eval_closed_p32(1.0, inner[:, 0]))) < 1e-10


def test_density_signed(capsys, tmp_path):
    out_file = tmp_path / "w.csv"
    code, out, err = run(capsys, "density", "--p", "3/2", "--r", "2.3", "--points", "512",
                         "--out", str(out_file))
    assert code == 0 and out == "" and err == ""
    values = [float(r[1]) for r in rows(out_file.read_text())[1:]]
    assert min(values) < 0
    manifest = json.loads((tmp_path / "w.csv.manifest.json").read_text())
    assert manifest["extra"]["negative_values"] is True and manifest["extra"]["signed"] is True
    assert manifest["parameters"]["r"] == "23/10"


def test_sample(capsys):
    code, out, err = run(capsys, "sample", "--p", "2", "--r", "1", "-n", "1000000", "--seed", "7")
    assert code == 0
    x = np.loadtxt(io.StringIO(out), skiprows=1)
    assert x.size == 1_000_000
    assert x.mean() == pytest.approx(1.0, abs=0.005)
    manifest = json.loads(err)
    assert manifest["seed"] == 7 and manifest["extra"]["rng"] == "numpy.PCG64"
    assert len(manifest["extra"]["factors"]) == 2


def test_sample_deterministic(capsys):
    _, a, _ = run(capsys, "sample", "--p", "5/2", "--r", "2", "-n", "500", "--seed", "3")
    _, b, _ = run(capsys, "sample", "--p", "5/2", "--r", "2", "-n", "500", "--seed", "3")
    assert a == b


def test_sample_support(capsys):
    _, out, _ = run(capsys, "sample", "--p", "3", "--r", "3", "-n", "1000000", "--seed", "1")
    x = np.loadtxt(io.StringIO(out), skiprows=1)
    assert x.max() <= 27 / 4


def test_sample_outside_sigma(capsys):
    code, out, err = run(capsys, "sample", "--p", "2", "--r", "3", "-n", "5")
    assert code == 3 and out == ""
    assert "no probability measure for r>p" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--r", "1", "--max-moment", "12", "--tol", "1e-6")
    assert code == 0 and json.loads(out)["passed"]
    code, _, _ = run(capsys, "verify", "--p", "5/2", "--r", "2", "--max-moment", "10", "--tol", "1e-6")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--p", "2", "--r", "1", "--max-moment", "12", "--tol", "1e-15")
    assert code == 1 and not json.loads(out)["passed"]
    code, _, _ = run(capsys, "verify", "--p", "2", "--r", "3")
    assert code == 3


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--p-range", "3/2:2", "--r-range", "2:2.5:0.1", "--p-den-max", "2")
    assert code == 0
    table = rows(out)
    assert table[0] == ["p_num", "p_den", "r", "min_density", "is_nonnegative", "flag"]
    cells = {(Fraction(int(r[0]), int(r[1])), Fraction(r[2])): r for r in table[1:]}
    assert len(cells) == 2 * 6
    assert cells[(Fraction(3, 2), Fraction(23, 10))][4] == "false"
    assert cells[(Fraction(2), Fraction(2))][4] == "true"
    assert cells[(Fraction(2), Fraction(5, 2))][4] == "false"


def test_rmt_small(capsys):
    code, out, err = run(capsys, "rmt", "--size", "2", "--power", "1", "--trials", "1",
                         "--seed", "0", "--dump-eigenvalues")
    assert code == 0
    report = json.loads(out)
    assert report["eigenvalue_count"] == 2 and len(report["eigenvalues"]) == 2
    assert sum(report["histogram"]["counts"]) == 2
    assert json.loads(err)["extra"]["ensemble"] == "complex Ginibre"
    _, again, _ = run(capsys, "rmt", "--size", "2", "--power", "1", "--trials", "1",
                      "--seed", "0", "--dump-eigenvalues")
    assert again == out


def test_rmt_moderate(capsys):
    code, out, _ = run(capsys, "rmt", "--size", "100", "--power", "2", "--trials", "4", "--seed", "1")
    assert code == 0 and json.loads(out)["ks"] < 0.08


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "raney", "moments", "--p", "3", "--r", "1",
                           "--max", "4", "--exact"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1:] == ["0,1", "1,1", "2,3", "3,12", "4,55"]
