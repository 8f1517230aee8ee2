import json
import subprocess
import sys

import pytest

from shalika.cli import main, parse_partition, UsageError
from shalika.germs import gamma_from_json, master_symfun, parse_gamma
from shalika.orbital import OrbitalReport
from shalika.qpoly import QPoly, QTRatFun
from shalika.symfunc import SymFun

CABLE = "2,1;2,3"


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_msf_table(capsys):
    rc, out, _ = run(capsys, "msf", "--newton", CABLE)
    assert rc == 0
    assert out.splitlines()[-1] == "e[4]\tq^8"
    assert len(out.splitlines()) == 5


def test_msf_latex(capsys):
    rc, out, _ = run(capsys, "msf", "--newton", CABLE, "--latex")
    assert out.strip() == (
        r"\left(q^{2} + q + 1\right)e_{1,1,1,1} + \left(q^{5} + 2 q^{4} + 4 q^{3} + 2 q^{2} + 2 q\right)e_{2,1,1} + "
        r"\left(q^{6} + q^{4} + q^{2}\right)e_{2,2} + \left(q^{7} + q^{6} + 2 q^{5} + q^{4}\right)e_{3,1} + q^{8}e_{4}"
    )


def test_msf_json_round_trip(capsys):
    rc, out, _ = run(capsys, "msf", "--newton", CABLE, "--json")
    f = SymFun.from_json(json.loads(out))
    assert f == master_symfun(parse_gamma(CABLE))


def test_orbital_golden(capsys):
    rc, out, _ = run(capsys, "orbital", "--newton", CABLE, "--parahoric", "4", "--order", "asc")
    assert rc == 0
    assert out.strip() == "1+q+2q^2+3q^3+4q^4+4q^5+4q^6+3q^7+q^8"


def test_orbital_desc(capsys):
    rc, out, _ = run(capsys, "orbital", "--newton", "2,3+2,3", "--parahoric", "4")
    assert out.strip() == "q^8+2*q^7+q^6"


def test_orbital_all_json(capsys):
    rc, out, _ = run(capsys, "orbital", "--newton", CABLE, "--all", "--json")
    rep = OrbitalReport.from_json(json.loads(out))
    assert rep == OrbitalReport.build(parse_gamma(CABLE))


def test_orbital_json(capsys):
    rc, out, _ = run(capsys, "orbital", "--newton", "u:2,1", "--parahoric", "2", "--json")
    data = json.loads(out)
    assert data["parahoric"] == [2]
    assert QPoly.from_json(data["polynomial"]) == QPoly({0: 2, 1: 1})


def test_germs_check(capsys):
    rc, out, err = run(capsys, "germs", "--newton", CABLE, "--check")
    assert rc == 0 and "agree" in err


def test_germs_kinds(capsys):
    rc, out, _ = run(capsys, "germs", "--newton", "2,3+2,3", "--kind", "dyck")
    assert out.splitlines() == ["1,1,1,1\t1", "2,1,1\t2*q", "2,2\tq^2"]
    rc, out, _ = run(capsys, "germs", "--newton", "2,3+2,3", "--json")
    data = json.loads(out)
    assert data["kind"] == "shalika" and data["degree"] == 4


def test_jacobian_components_delta(capsys):
    assert run(capsys, "jacobian", "--newton", "2,3", "--order", "asc")[1].strip() == "1+q"
    rc, out, _ = run(capsys, "components", "--newton", CABLE, "--json")
    assert json.loads(out) == {"components": 24, "top_frobenius": [1, 1, 1, 1]}
    assert run(capsys, "delta", "--puiseux", "15/8,7/4,3/2")[1].strip() == "42"
    assert run(capsys, "delta", "--newton", "2,3+2,3")[1].strip() == "8"
    assert run(capsys, "delta", "--newton", "2,3+2,3", "--contact", "0,1=2")[1].strip() == "10"
    assert run(capsys, "delta", "--newton", "2,3+2,3", "--dim", "5")[1].strip() == "5"


def test_spec_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"branches": [{"puiseux": ["3/2"]}, {"steps": [{"ramified": [2, 3]}]}], "contact": {"0,1": "3/2"}}))
    rc, out, _ = run(capsys, "orbital", "--spec", str(path), "--parahoric", "1^4")
    assert out.strip() == "24*q^8+24*q^7+6*q^6"


def test_superpoly(capsys):
    rc, out, _ = run(capsys, "superpoly", "--torus", "3,2")
    assert out.splitlines()[0] == "a^0\tq+t"
    rc, out, _ = run(capsys, "superpoly", "--newton", "2,3", "--qt", "--json")
    data = json.loads(out)
    coeffs = {tuple(l): QTRatFun.from_json(c) for l, c in data["coeffs"]}
    assert coeffs[(2,)].swap_qt() == coeffs[(1, 1)]


def test_convert(capsys):
    assert run(capsys, "convert", "--puiseux", "7/4,3/2", "--to", "cabling")[1].strip() == "[[2,13],[2,3]]"
    assert run(capsys, "convert", "--cabling", "2,13;2,3", "--to", "newton")[1].strip() == "[[2,1],[2,3]]"
    assert run(capsys, "convert", "--newton", "2,1;2,1;2,3", "--to", "puiseux")[1].strip() == '["15/8","7/4","3/2"]'


@pytest.mark.parametrize(
    "argv,field",
    [
        (["msf", "--newton", "2,4"], "--newton"),
        (["msf", "--newton", "x"], "--newton"),
        (["msf"], "exactly one"),
        (["msf", "--newton", "2,3", "--puiseux", "3/2"], "exactly one"),
        (["orbital", "--newton", "2,3", "--parahoric", "a"], "--parahoric"),
        (["orbital", "--newton", "2,3", "--parahoric", "3"], "--parahoric"),
        (["orbital", "--newton", "2,3"], "--parahoric"),
        (["delta", "--newton", "2,3+2,3", "--contact", "0=1"], "--contact"),
        (["delta", "--spec", "/nonexistent.json"], "--spec"),
        (["convert", "--puiseux", "3/2,7/4", "--to", "newton"], "--puiseux"),
        (["superpoly", "--torus", "4,2"], "lowest terms"),
        (["superpoly", "--newton", "2,1;2,3"], "torus"),
    ],
)
def test_parse_errors(capsys, argv, field):
    rc, out, err = run(capsys, *argv)
    assert rc == 2
    assert field in err and out == ""


def test_compute_errors(capsys):
    rc, _, err = run(capsys, "delta", "--newton", "+2,3")
    assert rc == 1 and "contact" in err
    rc, _, err = run(capsys, "delta", "--newton", "2,3+2,3", "--contact", "0,1=1/3")
    assert rc == 1


def test_degree_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("SHALIKA_DEGREE_CAP", "3")
    rc, _, err = run(capsys, "germs", "--newton", CABLE)
    assert rc == 1


def test_parse_partition():
    assert parse_partition("2,1^2") == (2, 1, 1)
    assert parse_partition("1^4") == (1, 1, 1, 1)
    with pytest.raises(UsageError):
        parse_partition("0")


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "shalika", "orbital", "--newton", CABLE, "--all", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2
