"""Geometric filtering, box localization and the per-frame pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._rounding import round_half_away
from .bbox import BBox
from .morphcc import (
    Component,
    StructElem,
    binarize,
    dilate_binary,
    label_image,
    morph_gradient_h,
)
from .mwld import MwldConfig, mwld_map
from .preprocess import rgb_to_y, stretch_contrast

MERGE_SE = StructElem(3, 21)
# min-max stretch; percentile clipping blows flat noisy backgrounds up to full range
PIPELINE_STRETCH = (0.0, 100.0)

# frame height the default rule constants are tuned for (--scale-rules)
REFERENCE_HEIGHT = 480


@dataclass(frozen=True)
class GeomRules:
    max_height: int = 50
    min_height: int = 6
    min_width: int = 5
    min_area: int = 24

    def __post_init__(self):
        if min(self.max_height, self.min_height, self.min_width, self.min_area) <= 0:
            raise ValueError("rule constants must be positive")
        if self.min_height >= self.max_height:
            raise ValueError("min_height must be below max_height")

    def rejects(self, bbox: BBox) -> bool:
        h, w = bbox.height, bbox.width
        return h > self.max_height or h < self.min_height or w < self.min_width or h * w < self.min_area

    def scaled(self, frame_height: int) -> "GeomRules":
        """Scale every length linearly with frame height (areas quadratically)."""
        f = frame_height / REFERENCE_HEIGHT

        def rnd(v):
            return int(round_half_away(v))

        max_h = max(2, rnd(self.max_height * f))
        return GeomRules(
            max_height=max_h,
            min_height=min(max(1, rnd(self.min_height * f)), max_h - 1),
            min_width=max(1, rnd(self.min_width * f)),
            min_area=max(1, rnd(self.min_area * f * f)),
        )


def parse_rules(text: str) -> GeomRules:
    """Parse ``"h6:50,w5,a24"``: height range, minimum width, minimum area."""
    kw = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, val = item[0], item[1:]
        if key == "h":
            lo, sep, hi = val.partition(":")
            if not sep:
                raise ValueError(f"bad height rule {item!r}, expected hMIN:MAX")
            kw["min_height"], kw["max_height"] = int(lo), int(hi)
        elif key == "w":
            kw["min_width"] = int(val)
        elif key == "a":
            kw["min_area"] = int(val)
        else:
            raise ValueError(f"unknown rule {item!r}")
    return GeomRules(**kw)


@dataclass(frozen=True)
class DetectionResult:
    frame_index: int
    boxes: tuple[BBox, ...] = ()

    def to_dict(self) -> dict:
        return {"frame": self.frame_index, "boxes": [b.as_list() for b in self.boxes]}

    @classmethod
    def from_dict(cls, d: dict) -> "DetectionResult":
        return cls(int(d["frame"]), tuple(BBox.from_xyxy(*b) for b in d["boxes"]))

    def csv_lines(self) -> list[str]:
        return [f"{self.frame_index},{b.x0},{b.y0},{b.x1},{b.y1}" for b in self.boxes]


def filter_components(components: Sequence[Component], rules: GeomRules = GeomRules()) -> list[Component]:
    """Drop components whose bounding box breaks any of the text-line rules."""
    return [c for c in components if not rules.rejects(c.bbox)]


def filter_boxes(boxes: Sequence[BBox], rules: GeomRules = GeomRules()) -> list[BBox]:
    """Same rule set as :func:`filter_components`, applied to merged line boxes."""
    return [b for b in boxes if not rules.rejects(b)]


def render_mask(components: Sequence[Component], shape, labels: np.ndarray | None = None) -> np.ndarray:
    """Binary mask of the given components.

    With a label image the exact pixels are used; otherwise each
    component's bbox is filled.
    """
    mask = np.zeros(shape, dtype=bool)
    if labels is not None:
        keep = np.zeros(int(labels.max()) + 1, dtype=bool)
        keep[[c.label for c in components]] = True
        keep[0] = False
        return keep[labels]
    for c in components:
        b = c.bbox
        mask[b.y0 : b.y1 + 1, b.x0 : b.x1 + 1] = True
    return mask


def localize(
    filtered: Sequence[Component],
    frame_dims: tuple[int, int],
    merge_se: StructElem = MERGE_SE,
    labels: np.ndarray | None = None,
) -> list[BBox]:
    """Merge nearby components into text-line boxes, sorted top-down, left-right.

    ``frame_dims`` is ``(height, width)``. Components are rendered into a
    mask, dilated by ``merge_se`` and relabeled; each merged region's box
    is the union of its member components' boxes, so dilation never
    inflates the output.
    """
    if not filtered:
        return []
    mask = render_mask(filtered, frame_dims, labels)
    merged_labels, _ = label_image(dilate_binary(mask, merge_se))
    n = len(filtered)
    if labels is None:
        # bbox-filled mask: the top-left corner is a member pixel
        ry = np.array([c.bbox.y0 for c in filtered])
        rx = np.array([c.bbox.x0 for c in filtered])
        region = merged_labels[ry, rx]
    else:
        present, first = np.unique(labels.ravel(), return_index=True)
        first_pixel = dict(zip(present.tolist(), first.tolist()))
        idx = np.array([first_pixel[c.label] for c in filtered])
        region = merged_labels.ravel()[idx]
    # dilation is extensive, so every member pixel lies in exactly one merged region
    coords = np.array([c.bbox.as_list() for c in filtered]).reshape(n, 4)
    n_regions = int(merged_labels.max())
    lo = np.full((n_regions + 1, 2), np.iinfo(np.int64).max)
    hi = np.full((n_regions + 1, 2), -1)
    np.minimum.at(lo, region, coords[:, :2])
    np.maximum.at(hi, region, coords[:, 2:])
    boxes = {
        int(r): BBox(int(lo[r, 0]), int(lo[r, 1]), int(hi[r, 0]), int(hi[r, 1]))
        for r in np.unique(region)
    }
    return sorted(boxes.values(), key=BBox.sort_key)


def detect_frame(
    frame: np.ndarray,
    cfg: MwldConfig = MwldConfig(),
    rules: GeomRules = GeomRules(),
    threshold: int = 200,
    frame_index: int = 0,
    merge_se: StructElem = MERGE_SE,
    stretch: tuple[float, float] = PIPELINE_STRETCH,
) -> DetectionResult:
    """Full pipeline on one RGB frame.

    stretch -> luma -> fused MWLD map -> horizontal gradient -> threshold
    -> 4-connected components -> merge into lines -> geometric rules.
    The rules run on merged line candidates: single gradient components
    are stroke edges only 2-4 px wide and would all fail ``min_width``.
    """
    y = rgb_to_y(stretch_contrast(frame, *stretch))
    grad = morph_gradient_h(mwld_map(y, cfg))
    labels, comps = label_image(binarize(grad, threshold))
    lines = localize(comps, y.shape, merge_se, labels=labels)
    return DetectionResult(frame_index, tuple(filter_boxes(lines, rules)))
