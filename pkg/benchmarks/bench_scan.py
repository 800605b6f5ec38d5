"""Time the dense patch-degree scan on each available backend.

    python3 benchmarks/bench_scan.py --size 512 --patch 6 --repeat 5

The polynomial reference path (full reduction of every patch and its
transpose) is timed on a small crop only, since it is orders of magnitude
slower; it also checks that every backend matches it.
"""

import argparse
import time

import numpy as np

from pbpedge import kernels
from pbpedge.preprocess import preprocess
from pbpedge.scanner import ScanConfig, patch_degree, scan


def timed(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def reference_scan(q, cfg):
    h, w = cfg.patch_shape
    H, W = q.shape
    return np.array([[patch_degree(q[r : r + h, c : c + w]) for c in range(W - w + 1)] for r in range(H - h + 1)])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--patch", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--ref-size", type=int, default=48, help="crop side for the polynomial reference")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    q = preprocess(rng.integers(0, 256, size=(args.size, args.size), dtype=np.uint8))
    cfg = ScanConfig(args.patch, args.patch, 1)
    print(f"image {args.size}x{args.size}, patch {args.patch}x{args.patch}, stride 1, best of {args.repeat}")

    results = {}
    for name in sorted(kernels.BACKENDS):
        for workers in (1, args.workers):
            t, dm = timed(lambda: scan(q, cfg, workers=workers, backend=name), args.repeat)
            results[name, workers] = dm.values
            print(f"  {name:<9} workers={workers:<2} {t * 1e3:9.2f} ms")
    first = next(iter(results.values()))
    print("  all backends identical:", all(np.array_equal(first, v) for v in results.values()))

    crop = q.pixels[: args.ref_size, : args.ref_size]
    t_ref, ref = timed(lambda: reference_scan(crop, cfg), 1)
    print(f"reference polynomial path on {args.ref_size}x{args.ref_size}: {t_ref * 1e3:.1f} ms")
    for name in sorted(kernels.BACKENDS):
        t, dm = timed(lambda: scan(crop, cfg, backend=name), args.repeat)
        print(f"  {name:<9} on the same crop {t * 1e3:9.3f} ms  matches reference: {np.array_equal(dm.values, ref)}")


if __name__ == "__main__":
    main()
