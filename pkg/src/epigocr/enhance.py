"""Intensity-domain filters: median and box blur, histogram equalization, bilateral.

All window filters replicate edge pixels outward.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ._kernels import bilateral_kernel
from .raster import check_gray, round_to_uint8

# Compare-exchange network that leaves the median of nine values in slot 4.
_MEDIAN9_NETWORK = (
    (1, 2), (4, 5), (7, 8), (0, 1), (3, 4), (6, 7), (1, 2), (4, 5), (7, 8),
    (0, 3), (5, 8), (4, 7), (3, 6), (1, 4), (2, 5), (4, 7), (4, 2), (6, 4), (4, 2),
)


def _check_kernel(k: int) -> int:
    if int(k) != k or k < 3 or k % 2 == 0:
        raise ValueError(f"kernel size must be an odd integer >= 3, got {k}")
    return int(k)


def _median3(img: np.ndarray) -> np.ndarray:
    h, w = img.shape
    padded = np.pad(img, 1, mode="edge")
    v = [padded[j : j + h, i : i + w] for j in range(3) for i in range(3)]
    for a, b in _MEDIAN9_NETWORK:
        v[a], v[b] = np.minimum(v[a], v[b]), np.maximum(v[a], v[b])
    return v[4].copy()


def median_blur(img: np.ndarray, k: int = 3) -> np.ndarray:
    """Replace every pixel by the median of its ``k x k`` neighbourhood."""
    img = check_gray(img)
    k = _check_kernel(k)
    if k == 3:
        return _median3(img)
    return ndimage.median_filter(img, size=k, mode="nearest")


def box_blur(img: np.ndarray, k: int = 3) -> np.ndarray:
    """Rounded mean over the ``k x k`` neighbourhood (a ones-matrix convolution)."""
    img = check_gray(img)
    k = _check_kernel(k)
    r = k // 2
    h, w = img.shape
    padded = np.pad(img.astype(np.int64), r, mode="edge")
    integral = np.zeros((h + 2 * r + 1, w + 2 * r + 1), dtype=np.int64)
    integral[1:, 1:] = padded.cumsum(0).cumsum(1)
    sums = integral[k:, k:] - integral[:-k, k:] - integral[k:, :-k] + integral[:-k, :-k]
    area = k * k
    # exact integer round-half-up of sums / area
    return ((2 * sums + area) // (2 * area)).astype(np.uint8)


def equalize_histogram(img: np.ndarray) -> np.ndarray:
    """Spread intensities by mapping each level through the normalized CDF.

    ``s(v) = round(255 * (cdf(v) - cdf_min) / (N - cdf_min))``. A
    single-intensity image is returned unchanged.
    """
    img = check_gray(img)
    hist = np.bincount(img.ravel(), minlength=256).astype(np.int64)
    cdf = hist.cumsum()
    total = int(cdf[-1])
    cdf_min = int(cdf[np.nonzero(hist)[0][0]])
    if cdf_min == total:
        return img.copy()
    span = total - cdf_min
    numer = 255 * np.maximum(cdf - cdf_min, 0)
    lut = ((2 * numer + span) // (2 * span)).astype(np.uint8)
    return lut[img]


@dataclass(frozen=True)
class BilateralParams:
    d: int = 9
    sigma_color: float = 75.0
    sigma_space: float = 75.0

    def __post_init__(self):
        _check_kernel(self.d)
        if not (self.sigma_color > 0 and self.sigma_space > 0):
            raise ValueError("bilateral sigmas must be strictly positive")


def bilateral_filter(img: np.ndarray, params: BilateralParams = BilateralParams()) -> np.ndarray:
    """Edge-preserving smoothing over a square ``d x d`` window.

    Each neighbour ``q`` of ``x`` is weighted by
    ``exp(-|x-q|^2 / (2 sigma_space^2)) * exp(-(I(x)-I(q))^2 / (2 sigma_color^2))``
    and the output is the rounded weighted mean.
    """
    img = check_gray(img)
    r = params.d // 2
    offs = np.arange(-r, r + 1, dtype=np.float64)
    dist2 = (offs[:, None] ** 2 + offs[None, :] ** 2).ravel()
    spatial = np.exp(-dist2 / (2.0 * params.sigma_space**2))
    levels = np.arange(256, dtype=np.float64)
    color = np.exp(-(levels**2) / (2.0 * params.sigma_color**2))
    weights = spatial[:, None] * color[None, :]

    padded = np.pad(img.astype(np.int64), r, mode="edge")
    out = bilateral_kernel(padded, img.shape[0], img.shape[1], r, weights)
    return round_to_uint8(out)
