"""Inclusive pixel rectangles."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box with inclusive pixel coordinates."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError(f"degenerate box {self.as_list()}")

    @classmethod
    def from_xyxy(cls, x0, y0, x1, y1) -> "BBox":
        return cls(int(x0), int(y0), int(x1), int(y1))

    def sort_key(self) -> tuple[int, int, int, int]:
        """Reading order: top to bottom, then left to right."""
        return (self.y0, self.x0, self.y1, self.x1)

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def as_list(self) -> list[int]:
        """``[x0, y0, x1, y1]``, the serialized form."""
        return [self.x0, self.y0, self.x1, self.y1]

    def intersection_area(self, other: "BBox") -> int:
        w = min(self.x1, other.x1) - max(self.x0, other.x0) + 1
        h = min(self.y1, other.y1) - max(self.y0, other.y0) + 1
        if w <= 0 or h <= 0:
            return 0
        return w * h

    def union(self, other: "BBox") -> "BBox":
        return BBox(
            min(self.x0, other.x0),
            min(self.y0, other.y0),
            max(self.x1, other.x1),
            max(self.y1, other.y1),
        )

    def clip(self, width: int, height: int) -> "BBox | None":
        """Clip to a ``width`` x ``height`` frame; ``None`` if fully outside."""
        x0, y0 = max(self.x0, 0), max(self.y0, 0)
        x1, y1 = min(self.x1, width - 1), min(self.y1, height - 1)
        if x1 < x0 or y1 < y0:
            return None
        return BBox(x0, y0, x1, y1)

    def shifted(self, dx: int, dy: int) -> "BBox":
        return BBox(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)
