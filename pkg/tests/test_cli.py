import json
import random
import subprocess
import sys

from ratsym.cli import EXIT_CERTIFICATION, EXIT_NOT_ADMISSIBLE, EXIT_VALIDATION, main
from ratsym.fields import QQ
from ratsym.jsonio import canon_dumps, family_to_json, map_to_json
from ratsym.poly import Poly
from ratsym.ratmap import make_map
from ratsym.symmetry import random_cyclic_family


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_admissible_rows(capsys):
    code, out = run_cli(["admissible", "--dmax", "4"], capsys)
    assert code == 0
    doc = json.loads(out)
    rows = {row["d"]: row for row in doc["rows"]}
    d2 = rows[2]
    assert [e["n"] for e in d2["cyclic"]] == [2, 3]
    assert d2["dihedral"] == [{"n": 3, "cases": [{"case": "II", "r": 1}]}]
    assert not (d2["A4"] or d2["S4"] or d2["A5"])
    d4 = rows[4]
    cyc = {e["n"]: [c["case"] for c in e["cases"]] for e in d4["cyclic"]}
    assert cyc == {2: ["B"], 3: ["A"], 4: ["B"], 5: ["C"]}
    dih = {e["n"]: [c["case"] for c in e["cases"]] for e in d4["dihedral"]}
    assert dih == {3: ["I"], 5: ["II"]}
    assert not d4["A4"]


def test_admissible_includes_icosahedral_degrees(capsys):
    code, out = run_cli(["admissible", "--dmax", "11"], capsys)
    doc = json.loads(out)
    rows = {row["d"]: row for row in doc["rows"]}
    assert rows[11]["A5"] and rows[11]["A4"] and rows[11]["S4"]
    assert not rows[10]["A5"]


def test_csv_and_pretty_outputs(capsys):
    code, out = run_cli(["admissible", "--dmax", "3", "--output", "csv"], capsys)
    assert code == 0 and out.splitlines()[0] == "d,cyclic,dihedral,A4,S4,A5"
    code, out = run_cli(["dims", "--dmax", "3", "--output", "pretty"], capsys)
    assert code == 0 and "dim=" in out


def test_witness_command(capsys):
    code, out = run_cli(["witness", "3", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["group"] == {"kind": "dihedral", "n": 3}
    assert sorted(rec["order"] for rec in doc["autos"]) == [2, 3]
    # the map is 1/z^2
    assert doc["map"]["num"] == ["1"] and doc["map"]["den"] == ["0", "0", "1"]

    code, _ = run_cli(["witness", "5", "7"], capsys)
    assert code == EXIT_NOT_ADMISSIBLE
    code, _ = run_cli(["witness", "5", "5"], capsys)
    assert code == EXIT_CERTIFICATION


def test_milnor_command(tmp_path, capsys):
    target = tmp_path / "map.json"
    phi = make_map(Poly(QQ, [1]), Poly(QQ, [0, 0, 1]))
    target.write_text(canon_dumps(map_to_json(phi)))
    code, out = run_cli(["milnor", str(target)], capsys)
    assert code == 0
    assert json.loads(out) == {"sigma1": "-6", "sigma2": "12", "cubic": "0"}


def test_path_connect_validate_roundtrip(tmp_path, capsys):
    f0 = random_cyclic_family(random.Random(1), 2, 1, "A")
    f1 = random_cyclic_family(random.Random(2), 2, 1, "A")
    p0, p1 = tmp_path / "f0.json", tmp_path / "f1.json"
    p0.write_text(canon_dumps(family_to_json(f0)))
    p1.write_text(canon_dumps(family_to_json(f1)))
    cert_file = tmp_path / "cert.json"
    code, _ = run_cli(["path", str(p0), str(p1), "--out-file", str(cert_file)], capsys)
    assert code == 0
    code, out = run_cli(["validate", str(cert_file)], capsys)
    assert code == 0 and json.loads(out) == {"valid": True}

    c3 = random_cyclic_family(random.Random(3), 3, 1, "A")
    c2 = random_cyclic_family(random.Random(4), 2, 2, "B")
    q0, q1 = tmp_path / "c3.json", tmp_path / "c2.json"
    q0.write_text(canon_dumps(family_to_json(c3)))
    q1.write_text(canon_dumps(family_to_json(c2)))
    conn_file = tmp_path / "conn.json"
    code, _ = run_cli(["connect", str(q0), str(q1), "--out-file", str(conn_file)], capsys)
    assert code == 0
    code, out = run_cli(["validate", str(conn_file)], capsys)
    assert code == 0 and json.loads(out) == {"valid": True}


def test_validate_rejects_tampering(tmp_path, capsys):
    f0 = random_cyclic_family(random.Random(5), 2, 2, "B")
    f1 = random_cyclic_family(random.Random(6), 2, 2, "B")
    p0, p1 = tmp_path / "f0.json", tmp_path / "f1.json"
    p0.write_text(canon_dumps(family_to_json(f0)))
    p1.write_text(canon_dumps(family_to_json(f1)))
    cert_file = tmp_path / "cert.json"
    code, _ = run_cli(["path", str(p0), str(p1), "--out-file", str(cert_file)], capsys)
    assert code == 0
    doc = json.loads(cert_file.read_text())
    seg = doc["segments"][0]
    seg["end_a"][0] = "7" if seg["end_a"][0] != "7" else "5"
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(canon_dumps(doc))
    code, _ = run_cli(["validate", str(bad_file)], capsys)
    assert code == EXIT_VALIDATION


def test_deterministic_output(tmp_path, capsys):
    f0 = random_cyclic_family(random.Random(7), 3, 2, "A")
    f1 = random_cyclic_family(random.Random(8), 3, 2, "A")
    p0, p1 = tmp_path / "f0.json", tmp_path / "f1.json"
    p0.write_text(canon_dumps(family_to_json(f0)))
    p1.write_text(canon_dumps(family_to_json(f1)))
    outs = []
    for _ in range(2):
        code, out = run_cli(["path", str(p0), str(p1), "--seed", "11"], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    code, out_a = run_cli(["admissible", "--dmax", "12"], capsys)
    code, out_b = run_cli(["admissible", "--dmax", "12"], capsys)
    assert out_a == out_b


def test_console_script_subprocess(tmp_path):
    # the installed entry point behaves like main(); smoke one command
    result = subprocess.run([sys.executable, "-m", "ratsym.cli", "admissible",
                             "--dmax", "2"], capture_output=True, text=True)
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["rows"][0]["d"] == 2
