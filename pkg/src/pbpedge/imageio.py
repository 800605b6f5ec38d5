"""Netpbm (PGM/PPM) and CSV matrix I/O."""

from __future__ import annotations

import io
import os
import re
import sys
import tempfile
from pathlib import Path

import numpy as np

__all__ = [
    "ImageFormatError",
    "atomic_write",
    "load_image",
    "read_bytes",
    "read_matrix_csv",
    "read_pgm",
    "read_pnm",
    "write_degree_csv",
    "write_matrix_csv",
    "write_pgm",
]

_TOKEN = re.compile(rb"(?:\s|#[^\n\r]*[\n\r]?)*([^\s#]+)")
_CSV_INT = re.compile(r"[0-9]+")
_CHANNELS = {b"P2": 1, b"P5": 1, b"P3": 3, b"P6": 3}


class ImageFormatError(ValueError):
    pass


def _header(data: bytes):
    """Return magic, width, height, maxval and the offset just past maxval."""
    pos = 0
    fields = []
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if not m:
            raise ImageFormatError("malformed header: unexpected end of data")
        fields.append(m.group(1))
        pos = m.end()
    magic = fields[0]
    if magic not in _CHANNELS:
        raise ImageFormatError(f"malformed header: unsupported magic {magic[:2]!r}")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise ImageFormatError("malformed header: non-numeric size or maxval") from None
    if width < 1 or height < 1:
        raise ImageFormatError(f"malformed header: bad size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise ImageFormatError(f"unsupported maxval {maxval} (must be 1..255)")
    return magic, width, height, maxval, pos


def read_pnm(data: bytes) -> np.ndarray:
    """Decode P2/P3/P5/P6 into a uint8 array (HxW, or HxWx3 for PPM).

    Samples are rescaled to 0..255 when maxval is not 255.
    """
    magic, width, height, maxval, pos = _header(data)
    channels = _CHANNELS[magic]
    count = width * height * channels
    if magic in (b"P5", b"P6"):
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or not data[pos : pos + 1].isspace():
            raise ImageFormatError("truncated pixel data")
        raw = data[pos + 1 : pos + 1 + count]
        if len(raw) < count:
            raise ImageFormatError("truncated pixel data")
        samples = np.frombuffer(raw, dtype=np.uint8).astype(np.int64)
    else:
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise ImageFormatError("truncated pixel data")
        try:
            samples = np.array([int(t) for t in tokens[:count]], dtype=np.int64)
        except ValueError:
            raise ImageFormatError("non-integer sample in ASCII raster") from None
    if samples.size and (samples.min() < 0 or samples.max() > maxval):
        raise ImageFormatError(f"sample exceeds maxval {maxval}")
    if maxval != 255:
        samples = (samples * 510 + maxval) // (2 * maxval)
    shape = (height, width) if channels == 1 else (height, width, 3)
    return samples.astype(np.uint8).reshape(shape)


def read_pgm(data: bytes) -> np.ndarray:
    img = read_pnm(data)
    if img.ndim != 2:
        raise ImageFormatError("expected a grayscale PGM (P2/P5), got a color PPM")
    return img


def write_pgm(img, magic: str = "P5") -> bytes:
    a = np.asarray(img)
    if a.ndim != 2:
        raise ValueError(f"PGM needs a 2-D image, got shape {a.shape}")
    if a.size and (a.min() < 0 or a.max() > 255):
        raise ValueError("PGM samples must lie in [0, 255]")
    h, w = a.shape
    a = a.astype(np.uint8)
    if magic == "P5":
        return f"P5\n{w} {h}\n255\n".encode("ascii") + a.tobytes()
    if magic == "P2":
        body = "\n".join(" ".join(str(v) for v in row) for row in a.tolist())
        return f"P2\n{w} {h}\n255\n{body}\n".encode("ascii")
    raise ValueError(f"unsupported PGM magic {magic!r}")


def read_matrix_csv(text: str) -> np.ndarray:
    """Parse comma-separated nonnegative integers, one matrix row per line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix")
    rows = []
    for lineno, line in enumerate(lines, 1):
        row = []
        for tok in line.split(","):
            tok = tok.strip()
            if not _CSV_INT.fullmatch(tok):
                raise ValueError(f"line {lineno}: {tok!r} is not a nonnegative integer")
            row.append(int(tok))
        if rows and len(row) != len(rows[0]):
            raise ValueError(f"line {lineno}: ragged row ({len(row)} cells, expected {len(rows[0])})")
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def write_matrix_csv(matrix) -> str:
    a = np.asarray(matrix)
    return "".join(",".join(str(int(v)) for v in row) + "\n" for row in a)


def write_degree_csv(dm) -> str:
    """Serialize a ``DegreeMap`` (or plain 2-D array) row-major."""
    return write_matrix_csv(getattr(dm, "values", dm))


def read_bytes(path: str | os.PathLike) -> bytes:
    if str(path) == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def load_image(path: str | os.PathLike) -> np.ndarray:
    """Read a Netpbm file, or anything Pillow understands when it is installed."""
    data = read_bytes(path)
    if data[:2] in _CHANNELS:
        return read_pnm(data)
    try:
        from PIL import Image
    except ImportError:
        raise ImageFormatError(f"{path}: not a PGM/PPM file and Pillow is not installed") from None
    with Image.open(io.BytesIO(data)) as im:
        if im.mode not in ("L", "RGB", "RGBA"):
            im = im.convert("RGB")
        return np.asarray(im, dtype=np.uint8)


def atomic_write(path: str | os.PathLike, data: bytes | str) -> None:
    """Write via a temp file in the target directory, then rename; ``-`` writes to stdout."""
    if isinstance(data, str):
        data = data.encode()
    if str(path) == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
