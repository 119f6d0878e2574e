"""Block-level scoring: detection rate, false positive rate, misdetection rate."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

from .bbox import BBox
from .errors import FormatError
from .textdetect import DetectionResult

MDB_COVERAGE = 0.9


class Classification(NamedTuple):
    tdb: list[BBox]
    fdb: list[BBox]
    mdb: list[BBox]


def _best_gt(det: BBox, gt: Sequence[BBox]) -> tuple[int, int]:
    """(index, intersection) of the GT box overlapping ``det`` most; lowest index on ties."""
    best, best_area = -1, 0
    for j, g in enumerate(gt):
        a = det.intersection_area(g)
        if a > best_area:
            best, best_area = j, a
    return best, best_area


def classify_detections(
    det: Sequence[BBox], gt: Sequence[BBox], mdb_coverage: float = MDB_COVERAGE
) -> Classification:
    """Split detections into true (any GT overlap), false, and missing-data blocks.

    A true block is also a missing-data block when it covers less than
    ``mdb_coverage`` of the area of its best-overlapping GT box.
    """
    tdb, fdb, mdb = [], [], []
    for d in det:
        j, inter = _best_gt(d, gt)
        if j < 0:
            fdb.append(d)
            continue
        tdb.append(d)
        if inter / gt[j].area < mdb_coverage:
            mdb.append(d)
    return Classification(tdb, fdb, mdb)


def match_ground_truth(det: Sequence[BBox], gt: Sequence[BBox]) -> list[tuple[int, int]]:
    """One-to-one (det index, gt index) pairs, greedy by descending intersection area."""
    pairs = []
    for i, d in enumerate(det):
        for j, g in enumerate(gt):
            a = d.intersection_area(g)
            if a > 0:
                pairs.append((-a, i, j))
    pairs.sort()
    used_d, used_g, out = set(), set(), []
    for _, i, j in pairs:
        if i in used_d or j in used_g:
            continue
        used_d.add(i)
        used_g.add(j)
        out.append((i, j))
    return out


@dataclass
class FrameReport:
    frame: int
    detections: int
    gt: int
    tdb: int
    fdb: int
    mdb: int
    matched: int


@dataclass
class EvalReport:
    tdb: int = 0
    fdb: int = 0
    mdb: int = 0
    gt_total: int = 0
    matched: int = 0
    dr: float = 0.0
    fpr: float = 0.0
    mdr: float = 0.0
    frames: list[FrameReport] = field(default_factory=list)
    frames_without_gt: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def evaluate(
    detections: Sequence[DetectionResult],
    gt: Mapping[int, Sequence[BBox]],
    mdb_coverage: float = MDB_COVERAGE,
) -> EvalReport:
    """Aggregate per-frame classifications into DR / FPR / MDR.

    DR counts GT blocks credited to a detection (each GT block at most
    once, each detection at most once). Frames detected but absent
    from ``gt`` are scored as having no text and listed in
    ``frames_without_gt``. GT frames with no detection entry count as
    fully missed.
    """
    rep = EvalReport()
    by_frame = {}
    for r in detections:
        by_frame.setdefault(r.frame_index, []).extend(r.boxes)
    for f in sorted(set(by_frame) | set(gt)):
        det = by_frame.get(f, [])
        truth = list(gt.get(f, []))
        if f in by_frame and f not in gt:
            rep.frames_without_gt.append(f)
        c = classify_detections(det, truth, mdb_coverage)
        matched = len(match_ground_truth(det, truth))
        rep.frames.append(FrameReport(f, len(det), len(truth), len(c.tdb), len(c.fdb), len(c.mdb), matched))
        rep.tdb += len(c.tdb)
        rep.fdb += len(c.fdb)
        rep.mdb += len(c.mdb)
        rep.gt_total += len(truth)
        rep.matched += matched
    rep.dr = _ratio(rep.matched, rep.gt_total)
    rep.fpr = _ratio(rep.fdb, rep.tdb + rep.fdb)
    rep.mdr = _ratio(rep.mdb, rep.tdb)
    return rep


def parse_gt_csv(text: str) -> dict[int, list[BBox]]:
    """Parse ``frame,x0,y0,x1,y1`` lines; ``#`` comments and blank lines skipped."""
    gt: dict[int, list[BBox]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().replace(" ", "").startswith("frame,x0"):
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            if len(parts) != 5:
                raise ValueError(f"expected 5 fields, got {len(parts)}")
            f, x0, y0, x1, y1 = (int(p) for p in parts)
            box = BBox(x0, y0, x1, y1)
        except ValueError as e:
            raise FormatError(f"line {lineno}: {e}: {raw!r}") from None
        gt.setdefault(f, []).append(box)
    return gt


def load_gt(path) -> dict[int, list[BBox]]:
    return parse_gt_csv(Path(path).read_text(encoding="utf-8"))


def format_gt_csv(gt: Mapping[int, Sequence[BBox]]) -> str:
    lines = ["# frame,x0,y0,x1,y1"]
    for f in sorted(gt):
        lines.extend(f"{f},{b.x0},{b.y0},{b.x1},{b.y1}" for b in gt[f])
    return "\n".join(lines) + "\n"


def load_detections(path) -> list[DetectionResult]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = [data]
    try:
        return [DetectionResult.from_dict(d) for d in data]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed detection results in {path}: {e}") from None
