"""End-to-end benchmark on the seeded synthetic corpus.

    python scripts/run_benchmark.py --seeds 0 1 2 --n-frames 50
"""

import argparse
import time

from mwldtext.evalharness import evaluate
from mwldtext.mwld import MwldConfig, parse_scales
from mwldtext.synthgen import benchmark_corpus
from mwldtext.textdetect import detect_frame


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--n-frames", type=int, default=50)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--scales", type=parse_scales, default=MwldConfig().scales)
    p.add_argument("--fusion", choices=("mean", "max"), default="mean")
    args = p.parse_args()

    cfg = MwldConfig(args.scales, args.fusion)
    print(f"{'seed':>4} {'gt':>4} {'tdb':>4} {'fdb':>4} {'mdb':>4} {'DR':>6} {'FPR':>6} {'MDR':>6} {'sec':>6}")
    for seed in args.seeds:
        frames, gt = benchmark_corpus(seed, args.n_frames, args.width, args.height)
        t0 = time.perf_counter()
        results = [detect_frame(f, cfg, frame_index=i) for i, f in enumerate(frames)]
        elapsed = time.perf_counter() - t0
        r = evaluate(results, gt)
        print(
            f"{seed:>4} {r.gt_total:>4} {r.tdb:>4} {r.fdb:>4} {r.mdb:>4} "
            f"{r.dr:>6.3f} {r.fpr:>6.3f} {r.mdr:>6.3f} {elapsed:>6.1f}"
        )


if __name__ == "__main__":
    main()
