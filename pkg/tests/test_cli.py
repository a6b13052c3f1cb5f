"""Command-line round trips and exit codes."""
import json

import pytest

from balloonpack import parse_instance, parse_json, parse_tree
from balloonpack.cli import main


def run(capsysbinary, *argv):
    code = main(list(argv))
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err.decode()


def test_gen_radii_is_deterministic(capsysbinary):
    code, out1, _ = run(capsysbinary, "gen", "--kind", "radii", "--n", "5", "--seed", "9")
    assert code == 0
    code, out2, _ = run(capsysbinary, "gen", "--kind", "radii", "--n", "5", "--seed", "9")
    assert out1 == out2
    radii, free = parse_instance(out1)
    assert len(radii) == 5 and free == 0
    assert sum(radii) == pytest.approx(1.0)


def test_gen_tree(capsysbinary):
    code, out, _ = run(capsysbinary, "gen", "--kind", "tree", "--n", "12", "--seed", "3")
    assert code == 0
    t = parse_tree(out)
    assert t.n == 12


def test_layout_json_pipeline(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b'{"radii": [1.0], "free_spokes": 2}')
    code, out, err = run(capsysbinary, "layout", "--in", str(inst))
    assert code == 0
    lay = parse_json(out)
    assert lay.covering_radius == pytest.approx(2.051462224238267, abs=1e-12)
    assert "check=pass" in err


def test_layout_svg_output(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b'{"radii": [0.25, 0.25, 0.25, 0.25], "free_spokes": 0}')
    out_path = tmp_path / "layout.svg"
    code, _, _ = run(capsysbinary, "layout", "--in", str(inst), "--format", "svg",
                     "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.count("<circle") == 5
    assert text.count("<line") == 4


def test_verify_accepts_good_layout(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b'{"radii": [0.4, 0.3, 0.3], "free_spokes": 1}')
    lay_path = tmp_path / "layout.json"
    code, _, _ = run(capsysbinary, "layout", "--in", str(inst), "--out", str(lay_path))
    assert code == 0
    code, out, _ = run(capsysbinary, "verify", "--in", str(lay_path))
    assert code == 0
    assert out.decode().strip() == "pass"


def test_verify_rejects_corrupted_layout(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b'{"radii": [0.4, 0.3, 0.3], "free_spokes": 0}')
    lay_path = tmp_path / "layout.json"
    run(capsysbinary, "layout", "--in", str(inst), "--out", str(lay_path))
    doc = json.loads(lay_path.read_bytes())
    doc["center"] = [0.2 * c for c in doc["center"]]
    lay_path.write_text(json.dumps(doc))
    code, out, err = run(capsysbinary, "verify", "--in", str(lay_path))
    assert code == 1
    assert out.decode().strip() == "fail"
    assert "FAIL [" in err


def test_tree_pipeline_with_stats(tmp_path, capsysbinary):
    tf = tmp_path / "tree.txt"
    tf.write_bytes(b"0 1\n1 2\n")
    dr_path = tmp_path / "drawing.json"
    code, _, err = run(capsysbinary, "tree", "--in", str(tf), "--stats",
                       "--out", str(dr_path))
    assert code == 0
    assert "covering_radius=5.0" in err
    code, out, _ = run(capsysbinary, "verify", "--in", str(dr_path))
    assert code == 0


def test_tree_svg(tmp_path, capsysbinary):
    tf = tmp_path / "tree.txt"
    tf.write_bytes(b"0 1\n0 2\n0 3\n")
    code, out, _ = run(capsysbinary, "tree", "--in", str(tf), "--format", "svg")
    assert code == 0
    text = out.decode()
    assert text.count("<line") == 3


def test_missing_field_exits_two(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b'{"free_spokes": 0}')
    code, _, err = run(capsysbinary, "layout", "--in", str(inst))
    assert code == 2
    assert "radii" in err


def test_junk_json_exits_two(tmp_path, capsysbinary):
    inst = tmp_path / "inst.json"
    inst.write_bytes(b"{{{{")
    code, _, err = run(capsysbinary, "layout", "--in", str(inst))
    assert code == 2
    assert "error" in err


def test_missing_file_exits_two(capsysbinary):
    code, _, err = run(capsysbinary, "layout", "--in", "/nonexistent/path.json")
    assert code == 2


def test_bad_flags_exit_two(capsysbinary):
    assert run(capsysbinary, "layout")[0] == 2  # --in is required
    assert run(capsysbinary, "frobnicate")[0] == 2
    assert run(capsysbinary, "gen", "--kind", "radii", "--n", "4", "--free", "7")[0] == 2


def test_bench_smoke(capsysbinary):
    code, _, err = run(capsysbinary, "bench", "--max-n", "4096")
    assert code == 0
