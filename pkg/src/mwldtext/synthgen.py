"""Seeded synthetic frames with bitmap-font text and exact ground truth."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from ._rounding import round_half_away
from .bbox import BBox
from .errors import LayoutError
from .font5x7 import ADVANCE, CHARSET, GLYPH_H, text_bitmap
from .keyframe import Shot

MAX_NOISE = 30
# noise the default pipeline tolerates; see scripts/robustness.py
BENCH_NOISE = 15
WORD_CHARS = CHARSET.replace(" ", "")
SHOT_LEVELS = (30, 120, 220, 75, 170)


def _rgb(c) -> np.ndarray:
    if isinstance(c, (int, np.integer)):
        c = (c, c, c)
    arr = np.asarray(c, dtype=np.int64)
    if arr.shape != (3,) or arr.min() < 0 or arr.max() > 255:
        raise ValueError(f"bad color {c!r}")
    return arr


def _background(rng: np.random.Generator, width: int, height: int, bg) -> np.ndarray:
    if bg is None or isinstance(bg, (int, np.integer, list, tuple)):
        bg = {"kind": "flat", "color": 0 if bg is None else bg}
    kind = bg.get("kind", "flat")
    base = _rgb(bg.get("color", 0))
    if kind == "flat":
        img = np.broadcast_to(base, (height, width, 3)).astype(np.float64)
    elif kind == "gradient":
        end = _rgb(bg.get("color2", base))
        t = np.linspace(0.0, 1.0, width)[None, :, None]
        img = np.broadcast_to(base + t * (end - base), (height, width, 3))
    elif kind == "noise":
        amp = int(bg.get("amplitude", 10))
        if not 0 <= amp <= MAX_NOISE:
            raise ValueError(f"noise amplitude must be in [0, {MAX_NOISE}]")
        noise = rng.integers(-amp, amp + 1, size=(height, width, 1))
        img = base + noise
    else:
        raise ValueError(f"unknown background kind {kind!r}")
    return np.clip(round_half_away(img), 0, 255).astype(np.uint8)


def render_text_frame(seed: int, spec: Mapping) -> tuple[np.ndarray, list[BBox]]:
    """Render ``spec`` and return the frame plus one tight box per text line.

    ``spec`` keys: ``width``, ``height``, optional ``background`` (a gray
    level, an RGB triple, or ``{"kind": "flat"|"gradient"|"noise", "color",
    "color2", "amplitude"}``) and ``lines``. Each line has ``text``,
    ``scale``, ``fg``, ``position`` ``[x, y]`` (top-left of the first
    glyph cell) and an optional ``bg`` plate color painted ``scale``
    pixels around the line.
    """
    width, height = int(spec["width"]), int(spec["height"])
    rng = np.random.default_rng(seed)
    frame = _background(rng, width, height, spec.get("background"))
    boxes = []
    for line in spec.get("lines", ()):
        text, scale = str(line["text"]), int(line.get("scale", 1))
        if scale < 1:
            raise ValueError("scale must be >= 1")
        x, y = (int(v) for v in line["position"])
        ink = text_bitmap(text, scale)
        h, w = ink.shape
        pad = scale if line.get("bg") is not None else 0
        if x - pad < 0 or y - pad < 0 or x + w + pad > width or y + h + pad > height:
            raise LayoutError(f"line {text!r} at ({x}, {y}) does not fit a {width}x{height} frame")
        if pad:
            frame[y - pad : y + h + pad, x - pad : x + w + pad] = _rgb(line["bg"])
        region = frame[y : y + h, x : x + w]
        region[ink] = _rgb(line["fg"])
        if ink.any():
            rows = np.flatnonzero(ink.any(axis=1))
            cols = np.flatnonzero(ink.any(axis=0))
            boxes.append(BBox(x + cols[0], y + rows[0], x + cols[-1], y + rows[-1]))
    return frame, boxes


def random_word(rng: np.random.Generator, lo: int = 3, hi: int = 10) -> str:
    n = int(rng.integers(lo, hi + 1))
    return "".join(rng.choice(list(WORD_CHARS), size=n))


def _random_colors(rng: np.random.Generator, min_contrast: int = 100) -> tuple[int, int]:
    """(background, foreground) gray levels at least ``min_contrast`` apart."""
    if rng.random() < 0.5:
        bg = int(rng.integers(0, 101))
        fg = int(rng.integers(bg + min_contrast, 256))
    else:
        bg = int(rng.integers(155, 256))
        fg = int(rng.integers(0, bg - min_contrast + 1))
    return bg, fg


def random_spec(
    rng: np.random.Generator,
    n_lines: int,
    width: int = 640,
    height: int = 480,
    scales: Sequence[int] = (2, 3, 4, 5),
    max_noise: int = MAX_NOISE,
    margin: int = 10,
    background_kinds: Sequence[str] = ("flat", "gradient", "noise"),
    noisy_dark: bool = True,
) -> dict:
    """Random layout with ``n_lines`` words, one per horizontal band.

    Foreground/background gray levels differ by at least 100. With
    ``noisy_dark=False`` dark backgrounds are never noisy.
    """
    bg, fg = _random_colors(rng)
    kinds = list(background_kinds)
    if bg < 128 and not noisy_dark:
        # Weber ratios explode on noisy near-black pixels
        kinds = [k for k in kinds if k != "noise"] or ["flat"]
    kind = str(rng.choice(kinds))
    background = {"kind": kind, "color": bg}
    if kind == "gradient":
        # keep the whole gradient on the background side of the text contrast
        shift = int(rng.integers(-40, 41))
        end = min(max(bg + shift, 0), 255)
        if abs(end - fg) < 100:
            end = bg
        background["color2"] = end
    elif kind == "noise":
        background["amplitude"] = int(rng.integers(1, max_noise + 1))

    band = height // n_lines
    lines = []
    for k in range(n_lines):
        scale = int(rng.choice(scales))
        line_h = GLYPH_H * scale
        for _ in range(100):
            text = random_word(rng)
            w = text_bitmap(text, scale).shape[1]
            if w + 2 * margin <= width:
                break
        top_lo = k * band + margin
        top_hi = (k + 1) * band - margin - line_h
        if top_hi < top_lo:
            raise LayoutError(f"{n_lines} lines at scale {scale} do not fit height {height}")
        y = int(rng.integers(top_lo, top_hi + 1))
        x = int(rng.integers(margin, width - margin - w + 1))
        lines.append({"text": text, "scale": scale, "fg": fg, "position": [x, y]})
    return {"width": width, "height": height, "background": background, "lines": lines}


def preset_frames(
    preset: str, seed: int, n_frames: int, width: int = 640, height: int = 480, **kw
) -> tuple[list[np.ndarray], dict[int, list[BBox]]]:
    """Independent frames for the ``single-line`` / ``multi-line`` / ``mixed`` presets."""
    frames, gt = [], {}
    for i in range(n_frames):
        rng = np.random.default_rng([seed, i])
        if preset == "single-line":
            n_lines = 1
        elif preset == "multi-line":
            n_lines = int(rng.integers(2, 5))
        elif preset == "mixed":
            n_lines = 1 if i % 2 == 0 else int(rng.integers(2, 5))
        else:
            raise ValueError(f"unknown preset {preset!r}")
        spec = random_spec(rng, n_lines, width, height, **kw)
        frame, boxes = render_text_frame(int(rng.integers(2**31)), spec)
        frames.append(frame)
        gt[i] = boxes
    return frames, gt


def benchmark_corpus(seed: int = 0, n_frames: int = 50, width: int = 640, height: int = 480):
    """Alternating single- and multi-line frames used by the end-to-end benchmark.

    Line heights 14-35 px, contrast >= 100, noise (light backgrounds only)
    up to ``BENCH_NOISE``.
    """
    return preset_frames(
        "mixed", seed, n_frames, width, height, max_noise=BENCH_NOISE, noisy_dark=False
    )


def make_sequence(
    seed: int,
    n_shots: int,
    frames_per_shot: int = 10,
    width: int = 320,
    height: int = 240,
    levels: Sequence[int] = SHOT_LEVELS,
    jitter: int = 1,
) -> tuple[list[np.ndarray], dict[int, list[BBox]], list[Shot]]:
    """Multi-shot sequence: one flat background level and one text layout per shot.

    Consecutive shots use different entries of ``levels`` (cycled), and
    frames inside a shot differ only by +-``jitter`` gray-level noise.
    Returns frames, per-frame GT boxes and the true shot partition
    (key frame set to the shot's first frame).
    """
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    if frames_per_shot < 1:
        raise ValueError("frames_per_shot must be >= 1")
    rng = np.random.default_rng(seed)
    frames, gt, shots = [], {}, []
    for s in range(n_shots):
        bg = int(levels[s % len(levels)])
        fg = 255 if bg < 128 else 0
        scale = int(rng.integers(2, 4))
        fit = (width - 20 + scale) // (ADVANCE * scale)
        if fit < 3 or height - 20 < GLYPH_H * scale:
            raise LayoutError(f"{width}x{height} frame too small for a shot caption")
        text = random_word(rng, 3, min(8, fit))
        w = text_bitmap(text, scale).shape[1]
        x = int(rng.integers(10, width - 10 - w + 1))
        y = int(rng.integers(10, height - 10 - GLYPH_H * scale + 1))
        start = len(frames)
        for _ in range(frames_per_shot):
            spec = {
                "width": width,
                "height": height,
                "background": {"kind": "noise", "color": bg, "amplitude": jitter},
                "lines": [{"text": text, "scale": scale, "fg": fg, "position": [x, y]}],
            }
            frame, boxes = render_text_frame(int(rng.integers(2**31)), spec)
            gt[len(frames)] = boxes
            frames.append(frame)
        shots.append(Shot(start, len(frames) - 1, start))
    return frames, gt, shots
