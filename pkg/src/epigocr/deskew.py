"""Skew estimation by projection-profile sharpness, and its correction."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import rotated_row_counts
from .raster import binary_to_gray, check_binary, check_gray, rotate, row_projection


@dataclass(frozen=True)
class SkewSearchParams:
    max_angle: float = 15.0
    coarse_step: float = 1.0
    fine_step: float = 0.1

    def __post_init__(self):
        if not 0 < self.fine_step <= self.coarse_step <= self.max_angle:
            raise ValueError("need 0 < fine_step <= coarse_step <= max_angle")


@dataclass(frozen=True)
class SkewEstimate:
    angle: float
    score: int
    scores: list = field(default_factory=list)


def profile_score(profile: np.ndarray) -> int:
    diffs = np.diff(np.asarray(profile, dtype=np.int64))
    return int(np.dot(diffs, diffs))


def skew_score(img: np.ndarray) -> int:
    """Sum of squared differences between adjacent row ink counts."""
    return profile_score(row_projection(img))


def rotated_projection(img: np.ndarray, angle: float) -> np.ndarray:
    """Row projection of the ink set after rotating it by ``angle`` degrees.

    Ink pixel centres are mapped forward with the same rotation that
    :func:`epigocr.raster.rotate` applies and binned into the nearest row;
    pixels leaving the canvas are dropped.
    """
    img = check_binary(img)
    ys, xs = np.nonzero(img)
    return _project(xs.astype(np.float64), ys.astype(np.float64), angle, img.shape)


def _project(xs, ys, angle, shape):
    h, w = shape
    theta = np.deg2rad(angle)
    return rotated_row_counts(
        xs, ys, float(np.cos(theta)), float(np.sin(theta)), (w - 1) / 2.0, (h - 1) / 2.0, h, w
    )


def _grid(lo: float, hi: float, step: float) -> list[float]:
    n_lo = int(np.ceil(lo / step - 1e-9))
    n_hi = int(np.floor(hi / step + 1e-9))
    return [round(k * step, 10) for k in range(n_lo, n_hi + 1)]


def _rank(item):
    angle, score = item
    # highest score, then smallest |angle|, then negative before positive
    return (-score, abs(angle), angle)


def estimate_skew(img: np.ndarray, params: SkewSearchParams = SkewSearchParams()) -> SkewEstimate:
    """Find the rotation that makes text rows sharpest.

    A coarse scan over ``[-max_angle, max_angle]`` is refined with a fine
    scan within one coarse step of the coarse winner. The returned angle is
    the correction to pass to :func:`epigocr.raster.rotate`.
    """
    img = check_binary(img)
    ys, xs = np.nonzero(img)
    xs = xs.astype(np.float64)
    ys = ys.astype(np.float64)
    scores: dict[float, int] = {}

    def evaluate(angles):
        for a in angles:
            if a not in scores:
                scores[a] = profile_score(_project(xs, ys, a, img.shape))

    m = params.max_angle
    evaluate(_grid(-m, m, params.coarse_step))
    coarse_best = min(scores.items(), key=_rank)[0]
    lo = max(-m, coarse_best - params.coarse_step)
    hi = min(m, coarse_best + params.coarse_step)
    evaluate(_grid(lo, hi, params.fine_step))

    best_angle, best_score = min(scores.items(), key=_rank)
    return SkewEstimate(best_angle, best_score, sorted(scores.items()))


def rotate_binary(img: np.ndarray, angle: float) -> np.ndarray:
    """Rotate a binary image (bilinear on the 0/255 rendering, re-cut at mid-gray)."""
    return rotate(binary_to_gray(img), angle, fill=255) < 128


def deskew(img: np.ndarray, binary: np.ndarray, params: SkewSearchParams = SkewSearchParams()) -> np.ndarray:
    """Rotate ``img`` by the skew correction estimated on ``binary``."""
    img = check_gray(img)
    binary = check_binary(binary)
    if img.shape != binary.shape:
        raise ValueError(f"image {img.shape} and binary {binary.shape} differ in size")
    est = estimate_skew(binary, params)
    return rotate(img, est.angle, fill=255)
