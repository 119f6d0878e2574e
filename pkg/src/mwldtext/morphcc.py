"""Rectangular-SE morphology, thresholding and 4-connected labeling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .bbox import BBox

_FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class StructElem:
    """Fully set rectangle centered on its origin; both sides odd."""

    height: int
    width: int

    def __post_init__(self):
        if self.height < 1 or self.width < 1 or self.height % 2 == 0 or self.width % 2 == 0:
            raise ValueError(f"structuring element sides must be odd and positive: {self.height}x{self.width}")

    @property
    def origin(self) -> tuple[int, int]:
        return self.height // 2, self.width // 2


HORIZONTAL_1X3 = StructElem(1, 3)


@dataclass(frozen=True)
class Component:
    label: int
    pixel_count: int
    bbox: BBox


def _window_reduce(img: np.ndarray, se: StructElem, reduce) -> np.ndarray:
    ry, rx = se.origin
    # edge padding only repeats values already inside each clipped window
    p = np.pad(img, ((ry, ry), (rx, rx)), mode="edge")
    h, w = img.shape
    out = p[0:h, 0:w].copy()
    for dy in range(se.height):
        for dx in range(se.width):
            reduce(out, p[dy : dy + h, dx : dx + w], out=out)
    return out


def dilate(img: np.ndarray, se: StructElem = HORIZONTAL_1X3) -> np.ndarray:
    """Grayscale dilation: maximum over the SE window."""
    return _window_reduce(img, se, np.maximum)


def erode(img: np.ndarray, se: StructElem = HORIZONTAL_1X3) -> np.ndarray:
    """Grayscale erosion: minimum over the SE window."""
    return _window_reduce(img, se, np.minimum)


def morph_gradient_h(img: np.ndarray) -> np.ndarray:
    """Dilation minus erosion with the 1x3 horizontal element."""
    return (dilate(img, HORIZONTAL_1X3) - erode(img, HORIZONTAL_1X3)).astype(np.uint8)


def binarize(img: np.ndarray, threshold: int = 200) -> np.ndarray:
    """Foreground where the pixel strictly exceeds ``threshold``."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must be in [0, 255], got {threshold}")
    return img > threshold


def dilate_binary(mask: np.ndarray, se: StructElem) -> np.ndarray:
    return _window_reduce(mask.astype(bool), se, np.logical_or)


def label_image(mask: np.ndarray) -> tuple[np.ndarray, list[Component]]:
    """4-connected labeling.

    Labels start at 1 and follow raster order of each region's first pixel.
    Returns the label image (0 = background) and the component list.
    """
    raw, n = ndimage.label(mask, structure=_FOUR_CONNECTED)
    if n == 0:
        return raw, []
    flat = raw.ravel()
    present, first = np.unique(flat, return_index=True)
    keep = present > 0
    present, first = present[keep], first[keep]
    order = present[np.argsort(first)]
    remap = np.zeros(n + 1, dtype=raw.dtype)
    remap[order] = np.arange(1, n + 1, dtype=raw.dtype)
    labels = remap[raw]

    counts = np.bincount(labels.ravel(), minlength=n + 1)
    comps = []
    for lab, sl in enumerate(ndimage.find_objects(labels), start=1):
        ys, xs = sl
        bbox = BBox(xs.start, ys.start, xs.stop - 1, ys.stop - 1)
        comps.append(Component(lab, int(counts[lab]), bbox))
    return labels, comps


def label_components(mask: np.ndarray) -> list[Component]:
    return label_image(mask)[1]
