"""Weber local descriptor maps at multiple (P, R) scales."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._rounding import round_half_away
from .errors import RangeError

HALF_PI = math.pi / 2

ORIENTATION_BINS = 8  # T
EXCITATION_SEGMENTS = 6  # M
SUB_BINS = 20  # S

# 3x3 ring, counter-clockwise from the right-hand neighbor (row offset, col offset)
_RING_3X3 = ((0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1))


@dataclass(frozen=True)
class WldScale:
    P: int
    R: int

    def __post_init__(self):
        if self.P < 4 or self.R < 1:
            raise ValueError(f"need P >= 4 and R >= 1, got P={self.P} R={self.R}")

    def __str__(self):
        return f"{self.P}:{self.R}"


DEFAULT_SCALES = (WldScale(8, 1), WldScale(16, 2), WldScale(24, 3))


@dataclass(frozen=True)
class MwldConfig:
    scales: tuple[WldScale, ...] = DEFAULT_SCALES
    fusion: str = "mean"

    def __post_init__(self):
        object.__setattr__(self, "scales", tuple(self.scales))
        if not self.scales:
            raise ValueError("at least one scale required")
        if len(set(self.scales)) != len(self.scales):
            raise ValueError("scales must be pairwise distinct")
        if self.fusion not in ("mean", "max"):
            raise ValueError(f"unknown fusion {self.fusion!r}")


def parse_scales(text: str) -> tuple[WldScale, ...]:
    """Parse ``"8:1,16:2,24:3"``."""
    scales = []
    for item in text.split(","):
        p, sep, r = item.strip().partition(":")
        if not sep:
            raise ValueError(f"bad scale {item!r}, expected P:R")
        scales.append(WldScale(int(p), int(r)))
    return tuple(scales)


@lru_cache(maxsize=None)
def neighbor_offsets(scale: WldScale) -> tuple[tuple[float, float], ...]:
    """(row, col) offsets of the P samples around the center."""
    if scale.P == 8 and scale.R == 1:
        return tuple((float(dy), float(dx)) for dy, dx in _RING_3X3)
    out = []
    for i in range(scale.P):
        a = 2.0 * math.pi * i / scale.P
        dy, dx = -scale.R * math.sin(a), scale.R * math.cos(a)
        # snap sin/cos residue so axis-aligned samples stay interpolation-free
        dy = round(dy) if abs(dy - round(dy)) < 1e-9 else dy
        dx = round(dx) if abs(dx - round(dx)) < 1e-9 else dx
        out.append((dy, dx))
    return tuple(out)


def _sample(padded: np.ndarray, pad: int, shape, dy: float, dx: float) -> np.ndarray:
    """Bilinear sample of the padded image at every pixel shifted by (dy, dx)."""
    h, w = shape
    iy, ix = math.floor(dy), math.floor(dx)
    fy, fx = dy - iy, dx - ix
    r0, c0 = pad + iy, pad + ix

    def win(r, c):
        return padded[r : r + h, c : c + w]

    top = win(r0, c0)
    if fx:
        top = top + fx * (win(r0, c0 + 1) - top)
    if not fy:
        return top
    bottom = win(r0 + 1, c0)
    if fx:
        bottom = bottom + fx * (win(r0 + 1, c0 + 1) - bottom)
    # a + f * (b - a) keeps flat regions exact
    return top + fy * (bottom - top)


def neighbor_sum(y: np.ndarray, scale: WldScale) -> np.ndarray:
    """Sum over the P neighbors of (x_i - x_c), replicate border."""
    img = y.astype(np.float64)
    pad = scale.R + 1
    padded = np.pad(img, pad, mode="edge")
    acc = np.zeros_like(img)
    for dy, dx in neighbor_offsets(scale):
        acc += _sample(padded, pad, img.shape, dy, dx)
    return acc - scale.P * img


def differential_excitation(y: np.ndarray, scale: WldScale = WldScale(8, 1)) -> np.ndarray:
    """xi = arctan(sum_i (x_i - x_c) / x_c); a zero center uses denominator 1."""
    center = y.astype(np.float64)
    denom = np.where(center == 0, 1.0, center)
    return np.arctan(neighbor_sum(y, scale) / denom)


def orientation(y: np.ndarray) -> np.ndarray:
    """theta = arctan((left - right) / (above - below)) in [-pi/2, pi/2].

    A zero vertical difference maps to +-pi/2 by the sign of the
    horizontal one, or 0 when both vanish.
    """
    p = np.pad(y.astype(np.float64), 1, mode="edge")
    lr = p[1:-1, :-2] - p[1:-1, 2:]
    ab = p[:-2, 1:-1] - p[2:, 1:-1]
    safe = np.where(ab == 0, 1.0, ab)
    return np.where(ab == 0, np.sign(lr) * HALF_PI, np.arctan(lr / safe))


def excitation_to_gray(xi: np.ndarray) -> np.ndarray:
    xi = np.asarray(xi, dtype=np.float64)
    if xi.size and not (np.all(xi > -HALF_PI) and np.all(xi < HALF_PI)):
        raise RangeError("excitation values must lie strictly inside (-pi/2, pi/2)")
    v = round_half_away((xi + HALF_PI) / math.pi * 255.0)
    return np.clip(v, 0, 255).astype(np.uint8)


def scale_maps(y: np.ndarray, cfg: MwldConfig) -> list[np.ndarray]:
    return [excitation_to_gray(differential_excitation(y, s)) for s in cfg.scales]


def fuse(maps: Sequence[np.ndarray], fusion: str = "mean") -> np.ndarray:
    stack = np.stack([m.astype(np.int64) for m in maps])
    if fusion == "max":
        return stack.max(axis=0).astype(np.uint8)
    n = len(maps)
    # integer round-half-up of sum / n (inputs are non-negative)
    return ((2 * stack.sum(axis=0) + n) // (2 * n)).astype(np.uint8)


def mwld_map(y: np.ndarray, cfg: MwldConfig = MwldConfig()) -> np.ndarray:
    """Quantized excitation at every configured scale, fused per pixel."""
    return fuse(scale_maps(y, cfg), cfg.fusion)


def _bin(values: np.ndarray, n_bins: int) -> np.ndarray:
    idx = np.floor((values + HALF_PI) / math.pi * n_bins).astype(np.int64)
    return np.clip(idx, 0, n_bins - 1)


def wld_histogram(y: np.ndarray, cfg: MwldConfig = MwldConfig()) -> np.ndarray:
    """Concatenated joint (orientation, excitation) histograms, normalized to sum 1.

    Each scale contributes ``T * M * S`` bins laid out orientation-major.
    """
    if y.size == 0:
        raise ValueError("image must be non-empty")
    n_xi = EXCITATION_SEGMENTS * SUB_BINS
    t_idx = _bin(orientation(y), ORIENTATION_BINS).ravel()
    parts = []
    for s in cfg.scales:
        x_idx = _bin(differential_excitation(y, s), n_xi).ravel()
        parts.append(np.bincount(t_idx * n_xi + x_idx, minlength=ORIENTATION_BINS * n_xi))
    hist = np.concatenate(parts).astype(np.float64)
    return hist / hist.sum()
