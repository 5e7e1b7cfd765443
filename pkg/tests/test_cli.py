import json

from tropcurves.cli import main
from tropcurves.serialize import config_to_json, type_to_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_with_oracle(capsys):
    code, out, _err = run_cli(capsys, "--json", "count", "--d", "3", "--g", "0", "--oracle")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 12
    assert data["oracle"] == 12
    assert data["agrees"]


def test_count_scale_refusal(capsys):
    code, _out, err = run_cli(capsys, "count", "--d", "7", "--g", "0")
    assert code == 3
    assert "scale" in err


def test_byte_determinism(capsys):
    _c, out1, _ = run_cli(capsys, "--json", "count", "--d", "2", "--g", "0")
    _c, out2, _ = run_cli(capsys, "--json", "count", "--d", "2", "--g", "0")
    assert out1 == out2


def test_markings_classes(capsys):
    code, out, _ = run_cli(capsys, "--json", "markings", "--d", "4", "--delta", "3", "--classes")
    assert code == 0
    data = json.loads(out)
    assert data["irreducible_classes"] == 1


def test_markings_witness(capsys):
    code, out, _ = run_cli(capsys, "--json", "markings", "--d", "4", "--delta", "4", "--witness")
    assert code == 0
    data = json.loads(out)
    assert data["empty"] is True


def test_walk_trace(tmp_path, capsys):
    out_file = tmp_path / "t.json"
    code, _out, _err = run_cli(
        capsys, "--json", "walk", "--d", "2", "--g", "0", "--trace", str(out_file)
    )
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["events"][-1][0] == "terminal"
    assert data["terminal"]["stratum"]["edges"][data["terminal"]["free_edge"]]["slope"] == [0, 0]


def test_fiber_subcommand(tmp_path, capsys):
    from fixtures import tropical_line
    from tropcurves.evaluation import PointConfiguration

    t = tropical_line(n_marks=2)
    # subdivide: put marks on rays via the corpus helper for a solvable fiber
    from tropcurves.corpus import _attach_mark, _mark_sites

    base = tropical_line()
    # attach two marks on two different rays
    t1 = _attach_mark(base, ("leg", 0))
    t2 = _attach_mark(t1, ("leg", 2))
    tf = tmp_path / "type.json"
    tf.write_text(json.dumps(type_to_json(t2)))
    cfg = PointConfiguration(((3, 5), (-5, -1)))
    pf = tmp_path / "pts.json"
    pf.write_text(json.dumps(config_to_json(cfg)))
    code, out, _ = run_cli(capsys, "--json", "fiber", "--type", str(tf), "--points", str(pf))
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "point"


def test_enumerate_and_classify(tmp_path, capsys):
    out_file = tmp_path / "curves.json"
    code, _o, _e = run_cli(
        capsys, "--json", "enumerate", "--d", "2", "--g", "0", "--out", str(out_file)
    )
    assert code == 0
    data = json.loads(out_file.read_text())
    assert len(data["solutions"]) == 1
    tf = tmp_path / "type.json"
    tf.write_text(json.dumps(data["solutions"][0]["curve"]))
    code, out, _ = run_cli(capsys, "--json", "classify-stratum", "--type", str(tf))
    assert code == 0
    cone = json.loads(out)
    assert cone["classification"] == "nice"


def test_validate_family_cli(tmp_path, capsys):
    from fixtures import smooth_cubic_curve
    from tropcurves.families import constant_family, BaseCurve
    from tropcurves.graphs import TropicalGraph
    from tropcurves.serialize import family_to_json
    from fractions import Fraction as F

    base = BaseCurve(TropicalGraph((0, 0), ((0, 1),), (F(1),), (0,)))
    fam = constant_family(base, smooth_cubic_curve())
    ff = tmp_path / "fam.json"
    ff.write_text(json.dumps(family_to_json(fam)))
    code, out, _ = run_cli(capsys, "--json", "validate-family", "--family", str(ff))
    assert code == 0
    assert json.loads(out)["ok"] is True
