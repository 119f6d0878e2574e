"""Shot segmentation by color-moment distance and key-frame selection."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence, Union

import numpy as np

from .errors import EmptyInputError

ADAPTIVE = "adaptive"


@dataclass(frozen=True)
class Shot:
    start: int
    end: int
    keyframe: int

    def __post_init__(self):
        if not (self.start <= self.keyframe <= self.end):
            raise ValueError(f"invalid shot {self}")

    def to_dict(self) -> dict:
        return asdict(self)


def color_moments(frame: np.ndarray) -> np.ndarray:
    """Per-channel (mean, stddev, skewness) as a 9-vector, R then G then B.

    Population moments; skewness is the signed cube root of the third
    central moment so all nine entries are in intensity units.
    """
    x = frame.reshape(-1, 3).astype(np.float64)
    mean = x.mean(axis=0)
    d = x - mean
    std = np.sqrt((d * d).mean(axis=0))
    skew = np.cbrt((d * d * d).mean(axis=0))
    # constant channels can leave ~1e-14 residue in the third moment
    skew = np.where(std == 0, 0.0, skew)
    return np.stack([mean, std, skew], axis=1).reshape(9)


def moment_distance(a: np.ndarray, b: np.ndarray) -> float:
    d = np.asarray(a, np.float64) - np.asarray(b, np.float64)
    m = float(np.abs(d).max(initial=0.0))
    if m == 0.0:
        return 0.0
    # scale first so tiny differences do not underflow to 0 when squared
    return m * float(np.linalg.norm(d / m))


def adaptive_threshold(distances: np.ndarray) -> float:
    """mean + 3 * stddev of the consecutive-frame distance series."""
    if len(distances) == 0:
        return 0.0
    return float(distances.mean() + 3.0 * distances.std())


def detect_shots(
    frames: Sequence[np.ndarray],
    tau: Union[float, str] = ADAPTIVE,
    moments: np.ndarray | None = None,
) -> list[Shot]:
    """Split ``frames`` at hard cuts and choose one key frame per shot.

    A cut is placed between frames i and i+1 when their moment distance
    exceeds ``tau``; ``tau="adaptive"`` uses mean + 3 sigma of all
    consecutive distances. The key frame is the one whose moments are
    closest to the shot's mean moment vector (lowest index on ties).

    ``moments`` may carry precomputed color moments, one row per frame.
    """
    if moments is None:
        if len(frames) == 0:
            raise EmptyInputError("no frames to segment")
        moments = np.stack([color_moments(f) for f in frames])
    moments = np.asarray(moments, dtype=np.float64)
    n = len(moments)
    if n == 0:
        raise EmptyInputError("no frames to segment")

    dists = np.linalg.norm(np.diff(moments, axis=0), axis=1)
    threshold = adaptive_threshold(dists) if tau == ADAPTIVE else float(tau)
    cuts = [i + 1 for i, d in enumerate(dists) if d > threshold]

    shots = []
    bounds = [0] + cuts + [n]
    for start, stop in zip(bounds[:-1], bounds[1:]):
        seg = moments[start:stop]
        centroid = seg.mean(axis=0)
        # argmin returns the first minimum, giving the lower-index tie-break
        key = start + int(np.argmin(np.linalg.norm(seg - centroid, axis=1)))
        shots.append(Shot(start, stop - 1, key))
    return shots
