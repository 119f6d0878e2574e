"""Hard-coded 5x7 bitmap font: A-Z, 0-9 and space."""

import numpy as np

GLYPH_W = 5
GLYPH_H = 7
ADVANCE = GLYPH_W + 1

_GLYPHS = {
    "A": ".###. #...# #...# ##### #...# #...# #...#",
    "B": "####. #...# #...# ####. #...# #...# ####.",
    "C": ".###. #...# #.... #.... #.... #...# .###.",
    "D": "####. #...# #...# #...# #...# #...# ####.",
    "E": "##### #.... #.... ####. #.... #.... #####",
    "F": "##### #.... #.... ####. #.... #.... #....",
    "G": ".###. #...# #.... #.### #...# #...# .####",
    "H": "#...# #...# #...# ##### #...# #...# #...#",
    "I": ".###. ..#.. ..#.. ..#.. ..#.. ..#.. .###.",
    "J": "..### ...#. ...#. ...#. ...#. #..#. .##..",
    "K": "#...# #..#. #.#.. ##... #.#.. #..#. #...#",
    "L": "#.... #.... #.... #.... #.... #.... #####",
    "M": "#...# ##.## #.#.# #.#.# #...# #...# #...#",
    "N": "#...# #...# ##..# #.#.# #..## #...# #...#",
    "O": ".###. #...# #...# #...# #...# #...# .###.",
    "P": "####. #...# #...# ####. #.... #.... #....",
    "Q": ".###. #...# #...# #...# #.#.# #..#. .##.#",
    "R": "####. #...# #...# ####. #.#.. #..#. #...#",
    "S": ".#### #.... #.... .###. ....# ....# ####.",
    "T": "##### ..#.. ..#.. ..#.. ..#.. ..#.. ..#..",
    "U": "#...# #...# #...# #...# #...# #...# .###.",
    "V": "#...# #...# #...# #...# #...# .#.#. ..#..",
    "W": "#...# #...# #...# #.#.# #.#.# #.#.# .#.#.",
    "X": "#...# #...# .#.#. ..#.. .#.#. #...# #...#",
    "Y": "#...# #...# .#.#. ..#.. ..#.. ..#.. ..#..",
    "Z": "##### ....# ...#. ..#.. .#... #.... #####",
    "0": ".###. #...# #..## #.#.# ##..# #...# .###.",
    "1": "..#.. .##.. ..#.. ..#.. ..#.. ..#.. .###.",
    "2": ".###. #...# ....# ...#. ..#.. .#... #####",
    "3": "##### ...#. ..#.. ...#. ....# #...# .###.",
    "4": "...#. ..##. .#.#. #..#. ##### ...#. ...#.",
    "5": "##### #.... ####. ....# ....# #...# .###.",
    "6": "..##. .#... #.... ####. #...# #...# .###.",
    "7": "##### ....# ...#. ..#.. .#... .#... .#...",
    "8": ".###. #...# #...# .###. #...# #...# .###.",
    "9": ".###. #...# #...# .#### ....# ...#. .##..",
    " ": "..... ..... ..... ..... ..... ..... .....",
}

CHARSET = "".join(sorted(_GLYPHS))


def _parse(rows: str) -> np.ndarray:
    bitmap = np.array([[ch == "#" for ch in row] for row in rows.split()], dtype=bool)
    assert bitmap.shape == (GLYPH_H, GLYPH_W)
    return bitmap


GLYPHS = {ch: _parse(rows) for ch, rows in _GLYPHS.items()}


def text_bitmap(text: str, scale: int = 1) -> np.ndarray:
    """Ink mask of ``text`` with a 1-column gap between glyphs, upscaled by ``scale``."""
    missing = sorted(set(text) - set(GLYPHS))
    if missing:
        raise ValueError(f"characters not in font: {''.join(missing)!r}")
    if not text:
        return np.zeros((GLYPH_H * scale, 0), dtype=bool)
    mask = np.zeros((GLYPH_H, len(text) * ADVANCE - 1), dtype=bool)
    for i, ch in enumerate(text):
        mask[:, i * ADVANCE : i * ADVANCE + GLYPH_W] = GLYPHS[ch]
    return np.kron(mask, np.ones((scale, scale), dtype=bool))
