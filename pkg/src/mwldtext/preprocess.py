"""Contrast stretch and luma extraction."""

from __future__ import annotations

import numpy as np

from ._rounding import round_half_away


def stretch_contrast(frame: np.ndarray, lo_pct: float = 1.0, hi_pct: float = 99.0) -> np.ndarray:
    """Per-channel linear stretch mapping the [lo_pct, hi_pct] percentiles to [0, 255].

    Values outside the percentile range are clamped. A channel whose two
    percentiles coincide is returned unchanged.
    """
    if not 0 <= lo_pct < hi_pct <= 100:
        raise ValueError(f"need 0 <= lo_pct < hi_pct <= 100, got {lo_pct}, {hi_pct}")
    out = frame.copy()
    for c in range(frame.shape[2]):
        ch = frame[:, :, c]
        p_lo, p_hi = np.percentile(ch, [lo_pct, hi_pct])
        if p_hi <= p_lo:
            continue
        mapped = round_half_away((ch.astype(np.float64) - p_lo) * 255.0 / (p_hi - p_lo))
        out[:, :, c] = np.clip(mapped, 0, 255).astype(np.uint8)
    return out


def rgb_to_y(frame: np.ndarray) -> np.ndarray:
    """BT.601 luma, rounded half away from zero.

    Evaluated in integer thousandths so ties round exactly.
    """
    f = frame.astype(np.int64)
    s = 299 * f[:, :, 0] + 587 * f[:, :, 1] + 114 * f[:, :, 2]
    return np.clip((s + 500) // 1000, 0, 255).astype(np.uint8)
