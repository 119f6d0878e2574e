"""Command-line front end: ``mwldtext {keyframes,detect,eval,synth}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from .errors import MwldError
from .evalharness import MDB_COVERAGE, format_gt_csv, load_detections, load_gt, evaluate
from .keyframe import ADAPTIVE, color_moments, detect_shots
from .morphcc import StructElem
from .mwld import MwldConfig, parse_scales
from .pixbuf import draw_boxes, indexed_frame_files, load_image, read_frame_sequence, write_ppm
from .synthgen import make_sequence, preset_frames
from .textdetect import MERGE_SE, PIPELINE_STRETCH, GeomRules, detect_frame, parse_rules

log = logging.getLogger("mwldtext")

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3


def _arg(fn):
    """Wrap a parser so ValueError becomes an argparse usage error."""

    def parse(text):
        try:
            return fn(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from None

    parse.__name__ = fn.__name__
    return parse


def _tau(text: str):
    return ADAPTIVE if text == ADAPTIVE else float(text)


def _se(text: str) -> StructElem:
    h, sep, w = text.lower().partition("x")
    if not sep:
        raise ValueError(f"bad structuring element {text!r}, expected HxW")
    return StructElem(int(h), int(w))


def _pct_range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"bad stretch range {text!r}, expected LO:HI")
    return float(lo), float(hi)


def _threshold(text: str) -> int:
    t = int(text)
    if not 0 <= t <= 255:
        raise ValueError("threshold must be in [0, 255]")
    return t


def _workers(text: str) -> int:
    n = int(text)
    if n < 1:
        raise ValueError("workers must be >= 1")
    return n


def _map(fn, items, workers: int):
    if workers == 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _json_list(items) -> str:
    """JSON array with one compact element per line; stable across runs."""
    return "[\n" + ",\n".join(json.dumps(x) for x in items) + "\n]\n"


def _write_or_print(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_keyframes(args) -> int:
    frames = read_frame_sequence(args.input)
    moments = np.stack(_map(color_moments, frames, args.workers))
    shots = detect_shots(frames, args.tau, moments=moments)
    payload = _json_list(s.to_dict() for s in shots)
    _write_or_print(payload, args.out)
    log.info("%d frames, %d shots", len(frames), len(shots))
    return EXIT_OK


def _detect_one(item, cfg, rules, threshold, merge_se, stretch, scale_rules, annotate_dir, thickness):
    index, path = item
    frame = load_image(path)
    r = rules.scaled(frame.shape[0]) if scale_rules else rules
    result = detect_frame(frame, cfg, r, threshold, index, merge_se, stretch)
    if annotate_dir is not None:
        out = Path(annotate_dir) / f"{Path(path).stem}_boxes.ppm"
        out.write_bytes(write_ppm(draw_boxes(frame, result.boxes, thickness)))
    return result


def cmd_detect(args) -> int:
    src = Path(args.input)
    if src.is_file() and src.suffix.lower() in (".ppm", ".pgm"):
        items = [(0, src)]
    else:
        items = indexed_frame_files(src)
    if args.out_annotated:
        Path(args.out_annotated).mkdir(parents=True, exist_ok=True)
    fn = partial(
        _detect_one,
        cfg=MwldConfig(args.scales, args.fusion),
        rules=args.rules,
        threshold=args.threshold,
        merge_se=args.merge_se,
        stretch=args.stretch,
        scale_rules=args.scale_rules,
        annotate_dir=args.out_annotated,
        thickness=args.thickness,
    )
    results = _map(fn, items, args.workers)
    for r in results:
        if len(set(r.boxes)) != len(r.boxes):
            raise AssertionError(f"duplicate boxes in frame {r.frame_index}")
    _write_or_print(_json_list(r.to_dict() for r in results), args.out_json)
    if args.out_csv:
        lines = ["# frame,x0,y0,x1,y1"] + [line for r in results for line in r.csv_lines()]
        Path(args.out_csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
    log.info("%d frames, %d boxes", len(results), sum(len(r.boxes) for r in results))
    return EXIT_OK


def cmd_eval(args) -> int:
    report = evaluate(load_detections(args.det), load_gt(args.gt), args.mdb_coverage)
    sys.stdout.write(report.to_json() + "\n")
    return EXIT_OK


def cmd_synth(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.preset == "shots":
        frames, gt, shots = make_sequence(
            args.seed, args.n_shots, args.frames_per_shot, args.width, args.height
        )
        (out / "shots.json").write_text(
            _json_list(s.to_dict() for s in shots), encoding="utf-8"
        )
    else:
        frames, gt = preset_frames(args.preset, args.seed, args.n_frames, args.width, args.height)
    for i, frame in enumerate(frames):
        (out / f"frame_{i:06d}.ppm").write_bytes(write_ppm(frame))
    (out / "gt.csv").write_text(format_gt_csv(gt), encoding="utf-8")
    log.info("wrote %d frames to %s", len(frames), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mwldtext", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("keyframes", help="segment a frame sequence into shots")
    k.add_argument("--input", required=True, help="frame directory or manifest file")
    k.add_argument("--tau", type=_arg(_tau), default=ADAPTIVE, help="'adaptive' or a fixed distance")
    k.add_argument("--out", default=None, help="shots JSON path (default stdout)")
    k.add_argument("--workers", type=_arg(_workers), default=1)
    k.set_defaults(func=cmd_keyframes)

    d = sub.add_parser("detect", help="localize text in frames")
    d.add_argument("--input", required=True, help="PPM file, frame directory or manifest")
    d.add_argument("--scales", type=_arg(parse_scales), default=MwldConfig().scales, help="e.g. 8:1,16:2,24:3")
    d.add_argument("--fusion", choices=("mean", "max"), default="mean")
    d.add_argument("--threshold", type=_arg(_threshold), default=200)
    d.add_argument("--rules", type=_arg(parse_rules), default=GeomRules(), help="e.g. h6:50,w5,a24")
    d.add_argument("--scale-rules", action="store_true", help="scale rule constants with frame height")
    d.add_argument("--merge-se", type=_arg(_se), default=MERGE_SE, help="line-merge element HxW (default 3x21)")
    d.add_argument("--stretch", type=_arg(_pct_range), default=PIPELINE_STRETCH, help="contrast percentiles LO:HI")
    d.add_argument("--out-json", default=None, help="results JSON path (default stdout)")
    d.add_argument("--out-csv", default=None)
    d.add_argument("--out-annotated", default=None, help="directory for box-annotated PPMs")
    d.add_argument("--thickness", type=int, default=2)
    d.add_argument("--workers", type=_arg(_workers), default=1)
    d.set_defaults(func=cmd_detect)

    e = sub.add_parser("eval", help="score detections against ground truth")
    e.add_argument("--det", required=True)
    e.add_argument("--gt", required=True)
    e.add_argument("--mdb-coverage", type=float, default=MDB_COVERAGE)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("synth", help="generate synthetic frames with ground truth")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--preset", choices=("single-line", "multi-line", "mixed", "shots"), default="single-line")
    s.add_argument("--out", required=True)
    s.add_argument("--n-frames", type=int, default=10)
    s.add_argument("--n-shots", type=int, default=3)
    s.add_argument("--frames-per-shot", type=int, default=10)
    s.add_argument("--width", type=int, default=640)
    s.add_argument("--height", type=int, default=480)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (MwldError, OSError, json.JSONDecodeError) as e:
        print(f"mwldtext {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as e:
        print(f"mwldtext {args.command}: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
