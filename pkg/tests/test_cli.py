import json

import numpy as np
import pytest

from mwldtext.cli import main
from mwldtext.evalharness import format_gt_csv, load_detections, load_gt
from mwldtext.pixbuf import write_ppm
from mwldtext.textdetect import DetectionResult

from fixtures import metric_fixture


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def _write_frames(d, frames):
    d.mkdir(parents=True, exist_ok=True)
    for i, f in enumerate(frames):
        (d / f"frame_{i:06d}.ppm").write_bytes(write_ppm(f))
    return d


def _det_json(path, results):
    path.write_text(json.dumps([r.to_dict() for r in results]))
    return path


def test_keyframes_identical_frames(tmp_path, capsys):
    d = _write_frames(tmp_path / "f", [np.full((8, 8, 3), 50, np.uint8)] * 5)
    code, out, _ = _run(["keyframes", "--input", d], capsys)
    assert code == 0
    assert json.loads(out) == [{"start": 0, "end": 4, "keyframe": 0}]


def test_keyframes_three_shots(tmp_path, capsys):
    d = tmp_path / "s"
    assert _run(["synth", "--preset", "shots", "--seed", 3, "--out", d, "--frames-per-shot", 6,
                 "--width", 160, "--height", 120], capsys)[0] == 0
    out_file = tmp_path / "shots.json"
    code, _, _ = _run(["keyframes", "--input", d, "--tau", "100", "--out", out_file], capsys)
    assert code == 0
    shots = json.loads(out_file.read_text())
    truth = json.loads((d / "shots.json").read_text())
    assert [(s["start"], s["end"]) for s in shots] == [(s["start"], s["end"]) for s in truth]
    assert len(shots) == 3


def test_keyframes_missing_dir(tmp_path, capsys):
    code, _, err = _run(["keyframes", "--input", tmp_path / "nope"], capsys)
    assert code == 2 and err


def test_detect_constant_frame(tmp_path, capsys):
    p = tmp_path / "c.ppm"
    p.write_bytes(write_ppm(np.full((60, 80, 3), 128, np.uint8)))
    code, out, _ = _run(["detect", "--input", p], capsys)
    assert code == 0
    assert json.loads(out) == [{"frame": 0, "boxes": []}]


def test_detect_single_line_overlaps_gt(tmp_path, capsys):
    d = tmp_path / "s"
    _run(["synth", "--preset", "single-line", "--seed", 1, "--n-frames", 3, "--out", d], capsys)
    det_path = tmp_path / "det.json"
    ann = tmp_path / "ann"
    code, _, _ = _run(["detect", "--input", d, "--out-json", det_path, "--out-annotated", ann], capsys)
    assert code == 0
    gt = load_gt(d / "gt.csv")
    for r in load_detections(det_path):
        (g,) = gt[r.frame_index]
        assert any(b.intersection_area(g) > 0 for b in r.boxes)
    assert len(list(ann.glob("*_boxes.ppm"))) == 3


def test_detect_single_scale_and_csv(tmp_path, capsys):
    d = tmp_path / "s"
    _run(["synth", "--seed", 2, "--n-frames", 1, "--out", d], capsys)
    csv = tmp_path / "det.csv"
    code, out, _ = _run(["detect", "--input", d, "--scales", "8:1", "--fusion", "max", "--out-csv", csv], capsys)
    assert code == 0
    res = json.loads(out)
    assert len(res) == 1
    rows = [ln for ln in csv.read_text().splitlines() if not ln.startswith("#")]
    assert len(rows) == len(res[0]["boxes"])


@pytest.mark.parametrize(
    "flag,value",
    [("--scales", "8-1"), ("--scales", "0:1"), ("--threshold", "300"), ("--rules", "bogus"),
     ("--merge-se", "4x21"), ("--stretch", "5"), ("--workers", "0")],
)
def test_detect_bad_flags(tmp_path, flag, value, capsys):
    with pytest.raises(SystemExit) as e:
        main(["detect", "--input", str(tmp_path), flag, value])
    assert e.value.code == 2


def test_eval_identity(tmp_path, capsys):
    det, gt = metric_fixture()
    gt_path = tmp_path / "gt.csv"
    gt_path.write_text(format_gt_csv(gt))
    perfect = [DetectionResult(f, tuple(b)) for f, b in gt.items()]
    code, out, _ = _run(["eval", "--det", _det_json(tmp_path / "p.json", perfect), "--gt", gt_path], capsys)
    rep = json.loads(out)
    assert code == 0 and (rep["dr"], rep["fpr"], rep["mdr"]) == (1.0, 0.0, 0.0)

    code, out, _ = _run(["eval", "--det", _det_json(tmp_path / "e.json", []), "--gt", gt_path], capsys)
    assert json.loads(out)["dr"] == 0

    code, out, _ = _run(["eval", "--det", _det_json(tmp_path / "f.json", det), "--gt", gt_path], capsys)
    rep = json.loads(out)
    assert rep["dr"] == 0.9 and rep["fpr"] == 2 / 11 and rep["mdr"] == 1 / 9


def test_eval_malformed_csv(tmp_path, capsys):
    gt_path = tmp_path / "gt.csv"
    gt_path.write_text("0,1,1,5,5\n0,1,x,5,5\n")
    code, _, err = _run(["eval", "--det", _det_json(tmp_path / "e.json", []), "--gt", gt_path], capsys)
    assert code == 2 and "line 2" in err


def test_eval_bad_json(tmp_path, capsys):
    (tmp_path / "d.json").write_text("{not json")
    (tmp_path / "gt.csv").write_text("")
    code, _, _ = _run(["eval", "--det", tmp_path / "d.json", "--gt", tmp_path / "gt.csv"], capsys)
    assert code == 2


def test_synth_deterministic(tmp_path, capsys):
    for name in ("a", "b"):
        _run(["synth", "--preset", "mixed", "--seed", 7, "--n-frames", 3, "--out", tmp_path / name], capsys)
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_synth_single_line_one_row_per_frame(tmp_path, capsys):
    _run(["synth", "--seed", 0, "--n-frames", 4, "--out", tmp_path], capsys)
    rows = [ln for ln in (tmp_path / "gt.csv").read_text().splitlines() if ln and not ln.startswith("#")]
    assert sorted(int(r.split(",")[0]) for r in rows) == [0, 1, 2, 3]


def test_synth_shots_truth(tmp_path, capsys):
    code, _, _ = _run(["synth", "--preset", "shots", "--n-shots", 2, "--frames-per-shot", 3,
                       "--width", 120, "--height", 90, "--out", tmp_path], capsys)
    assert code == 0
    assert json.loads((tmp_path / "shots.json").read_text()) == [
        {"start": 0, "end": 2, "keyframe": 0},
        {"start": 3, "end": 5, "keyframe": 3},
    ]


def test_synth_too_small(tmp_path, capsys):
    code, _, err = _run(["synth", "--preset", "shots", "--width", 30, "--height", 30, "--out", tmp_path], capsys)
    assert code == 2 and "too small" in err


def test_synth_unwritable(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = _run(["synth", "--out", blocker / "sub"], capsys)
    assert code == 2 and err


def test_detect_json_round_trip(tmp_path, capsys):
    d = tmp_path / "s"
    _run(["synth", "--preset", "multi-line", "--seed", 5, "--n-frames", 2, "--out", d], capsys)
    code, out, _ = _run(["detect", "--input", d], capsys)
    path = tmp_path / "det.json"
    path.write_text(out)
    results = load_detections(path)
    assert [r.to_dict() for r in results] == json.loads(out)
