"""Binary netpbm codecs (P6/P5, maxval 255), frame sequences, box overlays."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bbox import BBox
from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    FormatError,
    GapError,
    UnsupportedDepthError,
)

HIGHLIGHT = (0, 255, 0)

_WHITESPACE = b" \t\r\n\v\f"
_INDEXED_NAME = re.compile(r"^(?P<prefix>.*?)(?P<index>\d+)$")


def _check_rgb(frame: np.ndarray) -> None:
    if frame.dtype != np.uint8 or frame.ndim != 3 or frame.shape[2] != 3:
        raise ValueError(f"expected uint8 (H, W, 3) frame, got {frame.dtype} {frame.shape}")
    if frame.shape[0] < 1 or frame.shape[1] < 1:
        raise ValueError("frame must be at least 1x1")


def _check_gray(img: np.ndarray) -> None:
    if img.dtype != np.uint8 or img.ndim != 2:
        raise ValueError(f"expected uint8 (H, W) image, got {img.dtype} {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image must be at least 1x1")


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Return the next header token starting at or after ``pos``; skips comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c in _WHITESPACE and c:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("truncated header", offset=start)
    return data[start:pos], pos


def _decode(data: bytes, magic: bytes, channels: int) -> np.ndarray:
    data = bytes(data)
    if data[:2] != magic:
        found = data[:2].decode("latin-1") or "<empty>"
        raise FormatError(f"bad magic number {found!r}, expected {magic.decode()}", offset=0)
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        start = pos
        tok, pos = _read_token(data, pos)
        if not tok.isdigit():
            raise FormatError(f"non-numeric {name} {tok!r}", offset=start)
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"invalid dimensions {width}x{height}", offset=2)
    if maxval != 255:
        raise UnsupportedDepthError(f"unsupported maxval {maxval}; only 255 is supported", offset=pos)
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise FormatError("missing whitespace after maxval", offset=pos)
    pos += 1
    size = width * height * channels
    if len(data) - pos < size:
        raise FormatError(
            f"truncated payload: need {size} bytes, have {len(data) - pos}", offset=len(data)
        )
    arr = np.frombuffer(data, dtype=np.uint8, count=size, offset=pos)
    shape = (height, width, channels) if channels == 3 else (height, width)
    return arr.reshape(shape).copy()


def read_ppm(data: bytes) -> np.ndarray:
    """Decode a binary P6 pixmap into a ``(H, W, 3)`` uint8 array."""
    return _decode(data, b"P6", 3)


def read_pgm(data: bytes) -> np.ndarray:
    """Decode a binary P5 graymap into a ``(H, W)`` uint8 array."""
    return _decode(data, b"P5", 1)


def write_ppm(frame: np.ndarray) -> bytes:
    _check_rgb(frame)
    h, w = frame.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(frame).tobytes()


def write_pgm(img: np.ndarray) -> bytes:
    _check_gray(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img).tobytes()


def load_image(path) -> np.ndarray:
    """Read a P6 file as RGB; P5 files are promoted to gray RGB."""
    data = Path(path).read_bytes()
    if data[:2] == b"P5":
        gray = read_pgm(data)
        return np.repeat(gray[:, :, None], 3, axis=2)
    return read_ppm(data)


def _indexed(paths: Iterable[Path]) -> list[tuple[int, Path, str, int]]:
    out = []
    for p in paths:
        m = _INDEXED_NAME.match(p.stem)
        if m is None:
            raise FormatError(f"frame file {p.name!r} has no numeric index")
        out.append((int(m["index"]), p, m["prefix"], len(m["index"])))
    return out


def _manifest_paths(manifest: Path) -> list[Path]:
    paths = []
    for line in manifest.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p = Path(line)
        paths.append(p if p.is_absolute() else manifest.parent / p)
    return paths


def list_frame_files(source) -> list[Path]:
    """Resolve a directory, manifest file or explicit path list to ordered paths."""
    return [p for _, p in indexed_frame_files(source)]


def indexed_frame_files(source) -> list[tuple[int, Path]]:
    """Like :func:`list_frame_files` but paired with frame indices.

    Directory frames carry the index parsed from their file name; manifest
    and list entries are numbered by position.
    """
    if isinstance(source, (list, tuple)):
        paths = [Path(p) for p in source]
    else:
        source = Path(source)
        if source.is_dir():
            entries = [p for p in source.iterdir() if p.suffix.lower() in (".ppm", ".pgm")]
            if not entries:
                raise EmptyInputError(f"no frames in {source}")
            indexed = sorted(_indexed(entries), key=lambda t: t[0])
            present = {t[0] for t in indexed}
            if len(present) != len(indexed):
                raise FormatError(f"duplicate frame indices in {source}")
            _, _, prefix, width = indexed[0]
            suffix = indexed[0][1].suffix
            lo, hi = indexed[0][0], indexed[-1][0]
            missing = [f"{prefix}{i:0{width}d}{suffix}" for i in range(lo, hi + 1) if i not in present]
            if missing:
                raise GapError(missing)
            return [(t[0], t[1]) for t in indexed]
        elif source.is_file():
            paths = _manifest_paths(source)
        else:
            raise FileNotFoundError(f"no such frame source: {source}")
    if not paths:
        raise EmptyInputError("frame list is empty")
    return list(enumerate(paths))


def read_frame_sequence(source) -> list[np.ndarray]:
    """Load frames in index order (directory) or listing order (manifest/list).

    All frames must share dimensions.
    """
    frames = []
    for p in list_frame_files(source):
        frame = load_image(p)
        if frames and frame.shape != frames[0].shape:
            raise DimensionMismatchError(
                f"{p.name} is {frame.shape[1]}x{frame.shape[0]}, "
                f"expected {frames[0].shape[1]}x{frames[0].shape[0]}"
            )
        frames.append(frame)
    return frames


def draw_boxes(frame: np.ndarray, boxes: Sequence[BBox], thickness: int = 1) -> np.ndarray:
    """Return a copy of ``frame`` with box borders painted green.

    Borders grow inward from the box edge; boxes are clipped to the frame.
    """
    _check_rgb(frame)
    if thickness < 1:
        raise ValueError("thickness must be >= 1")
    out = frame.copy()
    h, w = frame.shape[:2]
    color = np.array(HIGHLIGHT, dtype=np.uint8)
    for box in boxes:
        b = box.clip(w, h)
        if b is None:
            continue
        t = thickness
        out[b.y0 : min(b.y0 + t, b.y1 + 1), b.x0 : b.x1 + 1] = color
        out[max(b.y1 - t + 1, b.y0) : b.y1 + 1, b.x0 : b.x1 + 1] = color
        out[b.y0 : b.y1 + 1, b.x0 : min(b.x0 + t, b.x1 + 1)] = color
        out[b.y0 : b.y1 + 1, max(b.x1 - t + 1, b.x0) : b.x1 + 1] = color
    return out
