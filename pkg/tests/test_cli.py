import json
import subprocess
import sys

import pytest

from densediv.cli import main
from densediv.special import constants


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_dense(capsys):
    code, out, _ = run(capsys, "enumerate", "--rule", "dense", "--t", "2", "--x", "30")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12
    assert lines[0] == "1 - 0 0"
    assert lines[-1] == "30 2:1,3:1,5:1 3 3"


def test_enumerate_practical_one(capsys):
    code, out, _ = run(capsys, "enumerate", "--rule", "practical", "--x", "1")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["1"]


def test_validation_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--rule", "dense", "--t", "1.5", "--x", "10")
    assert code == 2 and "t >= 2" in err
    code, _, _ = run(capsys, "enumerate", "--rule", "dense", "--x", "10")
    assert code == 2
    code, _, _ = run(capsys, "s0", "--phi", "0.6")
    assert code == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--rule", "dense", "--t", "2", "--x", str(10**10))
    assert code == 3 and "budget" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["ekac", "--rule", "nonsense", "--x", "10"])
    assert exc.value.code == 2


def test_constants_json(capsys):
    code, out, _ = run(capsys, "constants")
    data = json.loads(out)
    assert code == 0
    assert list(data) == ["gamma", "A", "W", "B", "C", "K", "V"]
    assert abs(data["C"] - 2.280291) < 1e-6
    assert data["V"] == data["C"] + 2 * data["K"]
    code, again, _ = run(capsys, "constants")
    assert again == out


def test_constants_with_coefficients(capsys):
    _, out, _ = run(capsys, "constants", "--coeffs", "3")
    data = json.loads(out)
    assert data["b"][1] == [1.0, 0.0] and len(data["c"]) == 4


def test_s0_row(capsys):
    code, out, _ = run(capsys, "s0", "--phi", "0.05")
    head, row = out.splitlines()
    assert head == "phi,re_s0,im_s0,re_Cz,im_Cz,residual"
    assert float(row.split(",")[1]) < -1


def test_dz_value(capsys):
    code, out, _ = run(capsys, "dz", "--z", "1", "--v", "10")
    head, row = out.splitlines()
    assert head == "v,re_d,im_d,re_asym,im_asym"
    assert abs(float(row.split(",")[1]) * 11 / constants().C - 1) < 0.01


def test_omega_rows(capsys):
    code, out, _ = run(capsys, "omega", "--z", "1", "--u", "1.5", "20")
    rows = out.splitlines()
    assert rows[0] == "u,re_omega,im_omega"
    assert abs(float(rows[1].split(",")[1]) - 2 / 3) < 1e-10
    assert len(rows) == 3


def test_ekac_row(capsys):
    code, out, _ = run(capsys, "ekac", "--rule", "dense", "--t", "2", "--x", "1000000", "--mode", "omega")
    head, row = out.splitlines()
    assert head == "x,t,mode,n_samples,mean,mu_ref,variance,sigma2_ref,ks"
    fields = dict(zip(head.split(","), row.split(",")))
    assert 0 <= float(fields["ks"]) <= 1 and fields["mode"] == "omega"


def test_ekac_json_manifest(capsys):
    _, out, _ = run(capsys, "ekac", "--rule", "practical", "--x", "5000", "--format", "json")
    data = json.loads(out)
    assert set(data) == {"config", "config_hash", "rows"}
    _, again, _ = run(capsys, "ekac", "--rule", "practical", "--x", "5000", "--format", "json")
    assert again == out


def test_sifted_row(capsys):
    code, out, _ = run(capsys, "sifted", "--x", "1000000", "--y", "100", "--phi", "0.1")
    head, row = out.splitlines()
    assert head == "x,y,phi,mode,re_exact,im_exact,re_main,im_main,rel_err"
    assert float(row.split(",")[-1]) < 0.05


def test_output_file(tmp_path, capsys):
    path = tmp_path / "roots.csv"
    code, out, _ = run(capsys, "s0", "--phi", "0.1", "-0.1", "--output", str(path))
    assert code == 0 and out == ""
    assert len(path.read_text().splitlines()) == 3


def test_threads_flag(capsys, monkeypatch):
    code, _, _ = run(capsys, "constants", "--threads", "4")
    assert code == 0
    code, _, _ = run(capsys, "constants", "--threads", "0")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "densediv", "enumerate", "--rule", "practical", "--x", "30"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 12
