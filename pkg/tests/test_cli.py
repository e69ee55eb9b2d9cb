import json
import subprocess
import sys

import pytest

from bornlp.cli import _angle, main


def test_angle_parser():
    import math
    assert _angle("pi/4") == pytest.approx(math.pi / 4)
    assert _angle("0.5") == 0.5
    with pytest.raises(Exception):
        _angle("__import__('os')")


def test_scenario_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = main(["scenario", "singlet", "--json", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["scenario"] == "singlet" and data["passed"]
    assert "singlet: PASS" in capsys.readouterr().out


def test_solve_builtin_and_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["solve", "triplet", "--csv", str(out)]) == 0
    assert out.read_text().startswith("name,")


def test_solve_explicit_working():
    assert main(["solve", "triplet", "--selection", "explicit",
                 "--working", "0.1,0.4,0.4,0.1"]) == 0
    assert main(["solve", "triplet", "--selection", "explicit"]) == 2


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("vars 1\nreq 1 = 1/3\nreq -1 = 1/3\n")
    assert main(["solve", str(bad)]) == 1
    bad.write_text("vars 1\nreq 4 = 1/3\n")
    assert main(["solve", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["scenario", "nope"])
    assert exc.value.code == 2


def test_chsh_commands():
    assert main(["chsh", "--state", "prbox"]) == 0
    assert main(["chsh", "--state", "local"]) == 0
    assert main(["chsh", "--state", "epr", "--samples", "50000"]) == 0


def test_epr_sim_command():
    assert main(["epr-sim", "--theta2", "pi/2", "--samples", "50000", "--seed", "4"]) == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bornlp", "scenario", "one_bit"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "one_bit: PASS" in r.stdout
