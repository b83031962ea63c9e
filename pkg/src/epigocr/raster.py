"""Image representation, decoding/encoding and geometric primitives.

Images are plain numpy arrays:

* gray images are ``(H, W)`` ``uint8`` arrays,
* RGB images are ``(H, W, 3)`` ``uint8`` arrays,
* binary images are ``(H, W)`` ``bool`` arrays with ``True`` marking ink.

Every operation returns a new array and never writes into its input.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np

# BT.601 luma weights in thousandths, so the conversion can be done exactly in integers.
_LUMA = (299, 587, 114)


class ImageFormatError(ValueError):
    """Raised when an image file cannot be decoded."""


def check_gray(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.uint8 or img.size == 0:
        raise ValueError(f"expected a non-empty 2-D uint8 image, got {img.dtype} {img.shape}")
    return img


def check_rgb(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8 or img.size == 0:
        raise ValueError(f"expected a non-empty (H, W, 3) uint8 image, got {img.dtype} {img.shape}")
    return img


def check_binary(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.bool_ or img.size == 0:
        raise ValueError(f"expected a non-empty 2-D bool image, got {img.dtype} {img.shape}")
    return img


def round_to_uint8(values: np.ndarray) -> np.ndarray:
    """Round half away from zero, then clamp into ``[0, 255]``."""
    values = np.asarray(values, dtype=np.float64)
    rounded = np.sign(values) * np.floor(np.abs(values) + 0.5)
    return np.clip(rounded, 0, 255).astype(np.uint8)


def binary_to_gray(img: np.ndarray) -> np.ndarray:
    """Render a binary image as black ink (0) on white background (255)."""
    return np.where(check_binary(img), 0, 255).astype(np.uint8)


# --------------------------------------------------------------------------- #
# Conversions and geometry
# --------------------------------------------------------------------------- #


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """Convert an RGB image to gray with the BT.601 luma weights.

    ``Y = round(0.299 R + 0.587 G + 0.114 B)``; the sum is evaluated in
    integer thousandths so that halves round up exactly.
    """
    img = check_rgb(img).astype(np.int32)
    acc = _LUMA[0] * img[..., 0] + _LUMA[1] * img[..., 1] + _LUMA[2] * img[..., 2]
    return np.clip((acc + 500) // 1000, 0, 255).astype(np.uint8)


def gray_to_rgb(img: np.ndarray) -> np.ndarray:
    img = check_gray(img)
    return np.repeat(img[..., None], 3, axis=2)


def _bilinear_axis(n_in: int, n_out: int):
    # pixel-centre alignment: src = (dst + 0.5) * scale - 0.5, clamped to the edge
    src = (np.arange(n_out, dtype=np.float64) + 0.5) * (n_in / n_out) - 0.5
    src = np.clip(src, 0.0, n_in - 1)
    lo = np.floor(src).astype(np.intp)
    hi = np.minimum(lo + 1, n_in - 1)
    return lo, hi, src - lo


def resize(img: np.ndarray, max_dim: int = 1600) -> np.ndarray:
    """Scale an image so its longer side equals ``max_dim``.

    Images whose longer side is already ``<= max_dim`` are returned
    unchanged (as a copy). The aspect ratio is kept to the nearest pixel and
    samples are bilinearly interpolated with edge replication.
    """
    img = check_gray(img)
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    h, w = img.shape
    longest = max(h, w)
    if longest <= max_dim:
        return img.copy()

    scale = max_dim / longest
    new_h = max(1, int(np.floor(h * scale + 0.5))) if h != longest else max_dim
    new_w = max(1, int(np.floor(w * scale + 0.5))) if w != longest else max_dim

    y0, y1, fy = _bilinear_axis(h, new_h)
    x0, x1, fx = _bilinear_axis(w, new_w)
    src = img.astype(np.float64)
    top = src[y0][:, x0] * (1 - fx) + src[y0][:, x1] * fx
    bottom = src[y1][:, x0] * (1 - fx) + src[y1][:, x1] * fx
    out = top * (1 - fy)[:, None] + bottom * fy[:, None]
    return round_to_uint8(out)


def rotate(img: np.ndarray, angle: float, fill: int = 255) -> np.ndarray:
    """Rotate a gray image about its centre, keeping the canvas size.

    Positive angles turn the content counter-clockwise as displayed (rows
    growing downwards). Output pixels are bilinearly sampled from the
    source; samples that fall outside the source take ``fill``.
    """
    img = check_gray(img)
    if not np.isfinite(angle):
        raise ValueError("angle must be finite")
    if angle % 360.0 == 0.0:
        return img.copy()

    h, w = img.shape
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    theta = np.deg2rad(angle)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    ys, xs = np.mgrid[0:h, 0:w].astype(np.float64)
    dx, dy = xs - cx, ys - cy
    # inverse mapping, shifted by one for the fill border added below
    sx = np.clip(cx + cos_t * dx - sin_t * dy + 1.0, 0.0, w + 1.0)
    sy = np.clip(cy + sin_t * dx + cos_t * dy + 1.0, 0.0, h + 1.0)

    padded = np.pad(img.astype(np.float64), 1, mode="constant", constant_values=fill)
    x0 = np.minimum(np.floor(sx).astype(np.intp), w)
    y0 = np.minimum(np.floor(sy).astype(np.intp), h)
    fx, fy = sx - x0, sy - y0
    out = (
        padded[y0, x0] * (1 - fx) * (1 - fy)
        + padded[y0, x0 + 1] * fx * (1 - fy)
        + padded[y0 + 1, x0] * (1 - fx) * fy
        + padded[y0 + 1, x0 + 1] * fx * fy
    )
    return round_to_uint8(out)


@dataclass(frozen=True)
class IntensityHistogram:
    """Counts of each 8-bit intensity."""

    bins: np.ndarray

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64)
        if bins.shape != (256,) or (bins < 0).any():
            raise ValueError("histogram needs 256 non-negative bins")
        object.__setattr__(self, "bins", bins)

    @property
    def total(self) -> int:
        return int(self.bins.sum())


def intensity_histogram(img: np.ndarray) -> IntensityHistogram:
    img = check_gray(img)
    return IntensityHistogram(np.bincount(img.ravel(), minlength=256))


def row_projection(img: np.ndarray) -> np.ndarray:
    """Number of ink pixels in every row of a binary image."""
    return check_binary(img).sum(axis=1, dtype=np.int64)


# --------------------------------------------------------------------------- #
# File I/O
# --------------------------------------------------------------------------- #

_PGM_TOKEN = re.compile(rb"(?:\s*(?:#[^\n]*\n)?)*\s*(\S+)")


def decode_pgm(raw: bytes) -> np.ndarray:
    """Decode a binary (P5) PGM with maxval <= 255."""
    if not raw.startswith(b"P5"):
        raise ImageFormatError("not a binary PGM (P5) file")
    pos = 2
    fields = []
    for _ in range(3):
        m = _PGM_TOKEN.match(raw, pos)
        if m is None:
            raise ImageFormatError("truncated PGM header")
        try:
            fields.append(int(m.group(1)))
        except ValueError:
            raise ImageFormatError(f"bad PGM header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = fields
    if width <= 0 or height <= 0 or not 0 < maxval < 256:
        raise ImageFormatError(f"unsupported PGM geometry {width}x{height} maxval {maxval}")
    pos += 1  # single whitespace byte after maxval
    data = raw[pos : pos + width * height]
    if len(data) != width * height:
        raise ImageFormatError("truncated PGM pixel data")
    return np.frombuffer(data, dtype=np.uint8).reshape(height, width).copy()


def encode_pgm(img: np.ndarray) -> bytes:
    """Encode a gray image as ``P5\\n<w> <h>\\n255\\n`` followed by raw bytes."""
    img = check_gray(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img).tobytes()


def read_image(path: str | os.PathLike) -> np.ndarray:
    """Load a PGM or any Pillow-readable image.

    Returns a gray ``(H, W)`` array for single-channel sources and an
    ``(H, W, 3)`` RGB array otherwise.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw.startswith(b"P5"):
        return decode_pgm(raw)

    from io import BytesIO

    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(BytesIO(raw)) as im:
            if im.mode in ("L", "1", "I;16", "I", "F"):
                return np.asarray(im.convert("L"), dtype=np.uint8).copy()
            return np.asarray(im.convert("RGB"), dtype=np.uint8).copy()
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"cannot decode {path}: {exc}") from None


def write_image(path: str | os.PathLike, img: np.ndarray) -> None:
    """Write gray, binary or RGB arrays. ``.pgm`` uses the bit-exact writer."""
    path = os.fspath(path)
    img = np.asarray(img)
    if img.dtype == np.bool_:
        img = binary_to_gray(img)
    if path.lower().endswith(".pgm"):
        with open(path, "wb") as fh:
            fh.write(encode_pgm(img))
        return

    from PIL import Image

    Image.fromarray(img).save(path)
