"""Detection quality per background condition, one text line per frame.

Sweeps background kind (flat, gradient, noise at several amplitudes),
polarity (light text on dark, dark text on light) and glyph scale, and
prints DR / FPR / MDR for each cell.

    python scripts/robustness.py --frames 10 --scales 2 3 4 5
"""

import argparse

import numpy as np

from mwldtext.evalharness import evaluate
from mwldtext.font5x7 import text_bitmap
from mwldtext.synthgen import random_word, render_text_frame
from mwldtext.textdetect import detect_frame

BACKGROUNDS = ["flat", "gradient", "noise5", "noise15", "noise30"]


def make_spec(rng, background, polarity, scale, width, height):
    if polarity == "dark":
        bg = int(rng.integers(0, 60))
        fg = int(rng.integers(bg + 100, 256))
    else:
        bg = int(rng.integers(195, 256))
        fg = int(rng.integers(0, bg - 99))
    if background == "flat":
        back = {"kind": "flat", "color": bg}
    elif background == "gradient":
        end = bg + 40 if polarity == "dark" else bg - 40
        back = {"kind": "gradient", "color": bg, "color2": end}
    else:
        back = {"kind": "noise", "color": bg, "amplitude": int(background[5:])}
    text = random_word(rng, 3, 8)
    w, h = text_bitmap(text, scale).shape[1], 7 * scale
    x = int(rng.integers(10, width - 10 - w + 1))
    y = int(rng.integers(10, height - 10 - h + 1))
    return {"width": width, "height": height, "background": back,
            "lines": [{"text": text, "scale": scale, "fg": fg, "position": [x, y]}]}


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--frames", type=int, default=10, help="frames per cell")
    p.add_argument("--scales", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    args = p.parse_args()

    print(f"{'background':<10} {'polarity':<8} {'scale':>5} {'DR':>6} {'FPR':>6} {'MDR':>6}")
    for background in BACKGROUNDS:
        for polarity in ("dark", "light"):
            for scale in args.scales:
                rng = np.random.default_rng([args.seed, BACKGROUNDS.index(background), polarity == "dark", scale])
                results, gt = [], {}
                for i in range(args.frames):
                    spec = make_spec(rng, background, polarity, scale, args.width, args.height)
                    frame, boxes = render_text_frame(int(rng.integers(2**31)), spec)
                    gt[i] = boxes
                    results.append(detect_frame(frame, frame_index=i))
                r = evaluate(results, gt)
                print(f"{background:<10} {polarity:<8} {scale:>5} {r.dr:>6.2f} {r.fpr:>6.2f} {r.mdr:>6.2f}")


if __name__ == "__main__":
    main()
