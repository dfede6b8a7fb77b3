import json
import subprocess
import sys

import pytest

from magicplanes import geometry as geo
from magicplanes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_plane_build_and_check(tmp_path, capsys):
    path = tmp_path / "pg3.json"
    code, _, _ = run(capsys, "plane", "build", "--q", "3", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["order"] == 3 and len(data["lines"]) == 13
    code, out, _ = run(capsys, "plane", "check", "--in", str(path), "--json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_plane_build_is_byte_identical(capsys):
    _, a, _ = run(capsys, "plane", "build", "--q", "4")
    _, b, _ = run(capsys, "plane", "build", "--q", "4")
    assert a == b


def test_plane_check_flags_corruption(tmp_path, capsys):
    data = geo.build_plane(2).to_json()
    data["lines"][0] = data["lines"][0][:2]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "plane", "check", "--in", str(path))
    assert code == 1
    assert "line-size" in out


def test_plane_check_incidence_format(tmp_path, capsys):
    path = tmp_path / "fano.txt"
    path.write_text(geo.FANO_INCIDENCE)
    code, _, _ = run(capsys, "plane", "check", "--in", str(path), "--format", "incidence")
    assert code == 0


def test_matrix_textbook_and_determinant(capsys):
    code, out, _ = run(capsys, "plane", "matrix", "--q", "2", "--textbook")
    assert code == 0 and out.strip() == geo.FANO_INCIDENCE.strip()
    code, out, _ = run(capsys, "plane", "matrix", "--q", "3", "--det")
    assert code == 0 and "8503056" in out


def test_matrix_figure(tmp_path, capsys):
    fig = tmp_path / "a.png"
    code, _, _ = run(capsys, "plane", "matrix", "--q", "2", "--gram", "--figure", str(fig))
    assert code == 0 and fig.stat().st_size > 0


def test_label_vline(capsys):
    code, out, _ = run(capsys, "label", "vline", "--q", "3", "--line", "0", "--mod", "9")
    assert code == 0
    data = json.loads(out)
    assert data["report"]["classification"] == "pseudomagic"
    assert {v[0] for v in data["labeling"]["values"]} == {0, 3}


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7))
def test_label_magic(capsys, q):
    code, out, err = run(capsys, "label", "magic", "--q", str(q), "--compact")
    assert code == 0
    assert json.loads(out)["report"]["classification"] == "magic"
    assert "magic" in err


def test_label_product_and_verify(tmp_path, capsys):
    lab = tmp_path / "lab.json"
    plane = tmp_path / "plane.json"
    assert run(capsys, "label", "product", "--q", "3", "--out", str(lab))[0] == 0
    assert run(capsys, "plane", "build", "--q", "3", "--out", str(plane))[0] == 0
    code, out, _ = run(capsys, "label", "verify", "--plane", str(plane), "--labeling", str(lab))
    assert code == 0
    assert json.loads(out)["classification"] == "magic"


def test_verify_not_line_invariant_exits_1(tmp_path, capsys):
    plane = tmp_path / "plane.json"
    plane.write_text(geo.build_plane(2).dumps())
    lab = tmp_path / "lab.json"
    lab.write_text(json.dumps({"group": [3], "values": [[1]] + [[0]] * 6}))
    code, out, _ = run(capsys, "label", "verify", "--plane", str(plane), "--labeling", str(lab))
    assert code == 1
    assert json.loads(out)["classification"] == "not-line-invariant"


def test_oracle_cyclic_csv(tmp_path, capsys):
    fig = tmp_path / "c.png"
    code, out, _ = run(capsys, "oracle", "cyclic", "--q", "2", "--mod", "2-13", "--figure", str(fig))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == 'm,count_line_invariant,max_image_size,"gcd(n,m)",magic_found'
    assert len(lines) == 13
    assert lines[5] == "6,48,2,2,False"
    assert fig.stat().st_size > 0


def test_oracle_bound(capsys, monkeypatch):
    code, _, err = run(capsys, "oracle", "cyclic", "--q", "3", "--mod", "6", "--bound", "100")
    assert code == 1 and "exceed" in err
    monkeypatch.setenv("MAGICPLANES_BOUND", "10")
    code, _, _ = run(capsys, "oracle", "cyclic", "--q", "2", "--mod", "6")
    assert code == 1


def test_oracle_spot(capsys):
    code, out, _ = run(capsys, "oracle", "spot")
    assert code == 0
    assert out.splitlines()[0] == "check,passed,detail"
    assert ",False," not in out


@pytest.mark.parametrize("argv", [
    ["plane", "build", "--q", "6"],
    ["plane", "build", "--q", "1"],
    ["label", "vline", "--q", "2", "--line", "0", "--mod", "1"],
    ["plane", "check", "--in", "/nonexistent/plane.json"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("magicplanes: error:")


@pytest.mark.parametrize("argv", [
    ["plane", "build"],
    ["plane", "build", "--q", "x"],
    ["oracle", "cyclic", "--q", "2", "--mod", "a-b"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_timestamps_flag(capsys):
    _, out, _ = run(capsys, "label", "magic", "--q", "2", "--timestamps")
    assert "generated_at" in json.loads(out)
    _, out, _ = run(capsys, "label", "magic", "--q", "2")
    assert "generated_at" not in json.loads(out)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "magicplanes", "plane", "build", "--q", "2", "--compact"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["order"] == 2
