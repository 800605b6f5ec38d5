"""Command-line interface.

Exit status: 0 on success, 1 when an input cannot be read or an output cannot
be written, 2 for invalid flags or malformed matrix input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .imageio import atomic_write, load_image, read_bytes, read_matrix_csv, write_degree_csv, write_pgm
from .pipeline import DEFAULT_SOBEL_THRESHOLD, compare, detect
from .polynomial import matrix_polynomial, truncate
from .preprocess import PreprocessConfig, preprocess
from .scanner import ScanConfig, group_equivalent

log = logging.getLogger("pbpedge")


class UsageError(Exception):
    pass


def _patch(text: str) -> tuple[int, int]:
    try:
        h, w = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected HxW, got {text!r}") from None
    return h, w


def _pair(text: str) -> tuple[int, int]:
    try:
        low, high = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW,HIGH, got {text!r}") from None
    return low, high


def _add_image_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="input image (PGM/PPM; other formats need Pillow), '-' for stdin")
    g = p.add_argument_group("preprocessing")
    g.add_argument("--sigma", type=float, default=1.0, help="Gaussian sigma in pixels, 0 disables (default 1.0)")
    g.add_argument("--levels", type=int, default=10, help="number of intensity levels K (default 10)")
    g.add_argument("--quantizer", choices=["uniform", "quantile"], default="uniform")
    g = p.add_argument_group("scanning")
    g.add_argument("--patch", type=_patch, default=(6, 6), metavar="HxW", help="patch size (default 6x6)")
    g.add_argument("--stride", type=int, default=1)
    g.add_argument("--degree-threshold", "-p", type=int, default=3, dest="p", metavar="P",
                   help="edge iff degree > P (default 3)")
    g.add_argument("--combine", choices=["max", "both"], default="max")
    g.add_argument("--hysteresis", type=_pair, default=None, metavar="LOW,HIGH")
    g.add_argument("--workers", type=int, default=1, help="threads for the patch scan")
    g.add_argument("--backend", choices=sorted(kernels.BACKENDS), default=None,
                   help=f"scan kernel (default {kernels.DEFAULT_BACKEND})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbpedge", description="Pseudo-Boolean polynomial edge detection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="write an edge mask")
    _add_image_flags(p)
    p.add_argument("-o", "--output", default="mask.pgm", help="mask PGM path, '-' for stdout")
    p.add_argument("--degree-csv", default=None, help="also write the degree map as CSV")
    p.add_argument("--json", action="store_true", help="print a JSON report")

    p = sub.add_parser("degree-map", help="write the patch degree map as CSV")
    _add_image_flags(p)
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("algebra", help="reduce a CSV cost matrix to its polynomial")
    p.add_argument("matrix", help="CSV file, '-' for stdin")
    p.add_argument("--transpose", action="store_true")
    p.add_argument("--truncate", type=int, default=None, metavar="P", help="drop monomials of degree > P")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("compare", help="compare against a Sobel baseline")
    _add_image_flags(p)
    p.add_argument("--out-dir", default=".", help="directory for pbp_mask.pgm, sobel_mask.pgm, diff.pgm, report.json")
    p.add_argument("--sobel-threshold", type=float, default=DEFAULT_SOBEL_THRESHOLD, metavar="T")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("group", help="group patches with identical reduced polynomials")
    _add_image_flags(p)
    p.add_argument("--json", action="store_true", help="print every group with its positions")
    p.add_argument("--top", type=int, default=10, help="groups listed in the text summary")
    return parser


def _configs(args) -> tuple[PreprocessConfig, ScanConfig]:
    try:
        pre = PreprocessConfig(args.sigma, args.levels, args.quantizer)
        h, w = args.patch
        cfg = ScanConfig(h, w, args.stride, args.p, args.combine, args.hysteresis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    return pre, cfg


def _load(path: str) -> np.ndarray:
    img = load_image(path)
    log.debug("read %s: shape %s", path, img.shape)
    return img


def _check_fits(img: np.ndarray, cfg: ScanConfig) -> None:
    if img.shape[0] < cfg.patch_height or img.shape[1] < cfg.patch_width:
        raise UsageError(f"image {img.shape[1]}x{img.shape[0]} is smaller than the "
                         f"{cfg.patch_height}x{cfg.patch_width} patch")


def cmd_detect(args) -> int:
    pre, cfg = _configs(args)
    img = _load(args.input)
    _check_fits(img, cfg)
    det = detect(img, pre, cfg, workers=args.workers, backend=args.backend)
    atomic_write(args.output, write_pgm(det.mask))
    if args.degree_csv:
        atomic_write(args.degree_csv, write_degree_csv(det.degree_map))
    if args.json:
        report = {
            "edge_px": int((det.mask > 0).sum()),
            "degree_map_shape": list(det.degree_map.shape),
            "coverage": list(det.degree_map.coverage),
            "max_degree": int(det.degree_map.values.max()),
        }
        print(json.dumps(report, sort_keys=True), file=sys.stdout if args.output != "-" else sys.stderr)
    return 0


def cmd_degree_map(args) -> int:
    pre, cfg = _configs(args)
    img = _load(args.input)
    _check_fits(img, cfg)
    det = detect(img, pre, cfg, workers=args.workers, backend=args.backend)
    atomic_write(args.output, write_degree_csv(det.degree_map))
    return 0


def cmd_algebra(args) -> int:
    text = read_bytes(args.matrix).decode("utf-8", errors="replace")
    try:
        c = read_matrix_csv(text)
    except ValueError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    if args.transpose:
        c = c.T
    poly = matrix_polynomial(c)
    if args.truncate is not None:
        if args.truncate < 0:
            raise UsageError("--truncate must be nonnegative")
        poly = truncate(poly, args.truncate)
    if args.json:
        print(json.dumps({"polynomial": str(poly), "degree": poly.degree, "monomials": len(poly)}))
    else:
        print(poly)
        print(f"degree={poly.degree}")
    return 0


def cmd_compare(args) -> int:
    pre, cfg = _configs(args)
    if args.sobel_threshold < 0:
        raise UsageError("--sobel-threshold must be nonnegative")
    img = _load(args.input)
    _check_fits(img, cfg)
    res = compare(img, pre, cfg, args.sobel_threshold, workers=args.workers, backend=args.backend)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write(out / "pbp_mask.pgm", write_pgm(res.pbp_mask))
    atomic_write(out / "sobel_mask.pgm", write_pgm(res.sobel_mask))
    atomic_write(out / "diff.pgm", write_pgm(res.diff))
    atomic_write(out / "report.json", json.dumps(res.report, sort_keys=True, indent=2) + "\n")
    if args.json:
        print(json.dumps(res.report, sort_keys=True))
    else:
        r = res.report
        print(f"pbp edge px: {r['pbp_edge_px']}  sobel edge px: {r['sobel_edge_px']}  "
              f"agreement: {r['agreement']:.4f}  iou: {r['iou']:.4f}")
    return 0


def cmd_group(args) -> int:
    pre, cfg = _configs(args)
    img = _load(args.input)
    _check_fits(img, cfg)
    groups = group_equivalent(preprocess(img, pre), cfg)
    groups.sort(key=lambda g: -len(g[1]))
    if args.json:
        payload = [{"polynomial": str(poly), "degree": poly.degree, "positions": pos} for poly, pos in groups]
        print(json.dumps({"groups": len(groups), "members": payload}))
    else:
        print(f"groups={len(groups)}")
        for poly, pos in groups[: args.top]:
            print(f"{len(pos)}\t{poly}")
    return 0


COMMANDS = {
    "detect": cmd_detect,
    "degree-map": cmd_degree_map,
    "algebra": cmd_algebra,
    "compare": cmd_compare,
    "group": cmd_group,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pbpedge: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        name = exc.filename if exc.filename is not None else ""
        print(f"pbpedge: error: {name}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # undecodable image data
        print(f"pbpedge: error: {getattr(args, 'input', '')}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
