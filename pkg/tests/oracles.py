"""Slow, obviously-correct reference implementations used only by tests."""

import math
from collections import deque

import numpy as np


def clamp_px(img, r, c):
    h, w = img.shape
    return int(img[min(max(r, 0), h - 1), min(max(c, 0), w - 1)])


def excitation_3x3(img):
    """Differential excitation at (P=8, R=1) by explicit loops."""
    h, w = img.shape
    out = np.zeros((h, w))
    for r in range(h):
        for c in range(w):
            xc = int(img[r, c])
            total = 0
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    if dr or dc:
                        total += clamp_px(img, r + dr, c + dc) - xc
            out[r, c] = math.atan(total / (xc if xc else 1))
    return out


def orientation_scalar(left, right, above, below):
    lr, ab = left - right, above - below
    if ab == 0:
        return math.copysign(math.pi / 2, lr) if lr else 0.0
    return math.atan(lr / ab)


def window_reduce(img, height, width, fn):
    h, w = img.shape
    ry, rx = height // 2, width // 2
    out = np.empty_like(img)
    for r in range(h):
        for c in range(w):
            vals = [
                img[rr, cc]
                for rr in range(max(r - ry, 0), min(r + ry, h - 1) + 1)
                for cc in range(max(c - rx, 0), min(c + rx, w - 1) + 1)
            ]
            out[r, c] = fn(vals)
    return out


def flood_fill_labels(mask):
    """4-connected labels in raster order of first pixel, via BFS."""
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int64)
    nxt = 0
    for r in range(h):
        for c in range(w):
            if mask[r, c] and not labels[r, c]:
                nxt += 1
                labels[r, c] = nxt
                q = deque([(r, c)])
                while q:
                    y, x = q.popleft()
                    for ny, nx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                        if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not labels[ny, nx]:
                            labels[ny, nx] = nxt
                            q.append((ny, nx))
    return labels, nxt


def partition(labels):
    """Label image -> set of frozensets of flat pixel indices (label-agnostic)."""
    flat = labels.ravel()
    groups = {}
    for i, lab in enumerate(flat):
        if lab:
            groups.setdefault(int(lab), []).append(i)
    return {frozenset(v) for v in groups.values()}


def bilinear_clamped(img, y, x):
    """Sample at real coordinates; coordinates outside the image clamp to the border."""
    h, w = img.shape
    y = min(max(y, 0.0), h - 1.0)
    x = min(max(x, 0.0), w - 1.0)
    y0, x0 = int(math.floor(y)), int(math.floor(x))
    y1, x1 = min(y0 + 1, h - 1), min(x0 + 1, w - 1)
    fy, fx = y - y0, x - x0
    v00, v01 = float(img[y0, x0]), float(img[y0, x1])
    v10, v11 = float(img[y1, x0]), float(img[y1, x1])
    return (1 - fy) * ((1 - fx) * v00 + fx * v01) + fy * ((1 - fx) * v10 + fx * v11)


def excitation_circular(img, P, R):
    """Differential excitation on a sampled circle, one pixel at a time."""
    h, w = img.shape
    out = np.zeros((h, w))
    for r in range(h):
        for c in range(w):
            xc = float(img[r, c])
            total = 0.0
            for i in range(P):
                a = 2 * math.pi * i / P
                total += bilinear_clamped(img, r - R * math.sin(a), c + R * math.cos(a)) - xc
            out[r, c] = math.atan(total / (xc if xc else 1.0))
    return out
