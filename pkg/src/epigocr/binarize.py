"""Thresholding and binary-domain cleanup.

Binary images use ``True`` for ink. The opposite encoding (1 = background,
0 = foreground) is available through :func:`to_background_ones` and
:func:`from_background_ones`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import IntensityHistogram, check_binary, check_gray, intensity_histogram

WEIGHTINGS = ("mean", "gaussian")


def to_background_ones(img: np.ndarray) -> np.ndarray:
    return (~check_binary(img)).astype(np.uint8)


def from_background_ones(bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(bits)
    if bits.ndim != 2 or not np.isin(bits, (0, 1)).all():
        raise ValueError("expected a 2-D array of 0/1 values")
    return bits == 0


@dataclass(frozen=True)
class OtsuStats:
    threshold: int
    sigma_b2: float
    w0: float
    w1: float
    mu0: float
    mu1: float


def otsu_threshold(hist: IntensityHistogram) -> OtsuStats:
    """Global threshold maximizing the between-class variance.

    Class 0 holds intensities ``<= t``. The running class weights and sums
    are updated once per candidate ``t`` and candidates are compared in
    exact integer arithmetic, so the smallest maximizing ``t`` always wins.
    A single-intensity histogram yields that intensity with zero variance.
    """
    bins = [int(c) for c in hist.bins]
    total = sum(bins)
    if total == 0:
        raise ValueError("cannot threshold an empty histogram")
    occupied = [v for v, c in enumerate(bins) if c]
    grand_sum = sum(v * c for v, c in enumerate(bins))

    if len(occupied) == 1:
        v = occupied[0]
        return OtsuStats(v, 0.0, 1.0, 0.0, float(v), 0.0)

    # sigma_b2 * total^2 == (n1*s0 - n0*s1)^2 / (n0*n1); keep it as a fraction
    best_t, best_num, best_den = 0, 0, 1
    n0 = s0 = 0
    for t in range(256):
        n0 += bins[t]
        s0 += t * bins[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        num = (n1 * s0 - n0 * (grand_sum - s0)) ** 2
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den

    n0 = sum(bins[: best_t + 1])
    s0 = sum(v * bins[v] for v in range(best_t + 1))
    n1 = total - n0
    mu0 = s0 / n0
    mu1 = (grand_sum - s0) / n1 if n1 else 0.0
    w0 = n0 / total
    return OtsuStats(
        threshold=best_t,
        sigma_b2=best_num / best_den / total**2,
        w0=w0,
        w1=1.0 - w0,
        mu0=mu0,
        mu1=mu1,
    )


def apply_threshold(img: np.ndarray, t: int) -> np.ndarray:
    """Pixels ``<= t`` become ink, brighter pixels background."""
    img = check_gray(img)
    if not 0 <= t <= 255:
        raise ValueError("threshold must lie in [0, 255]")
    return img <= t


def otsu_binarize(img: np.ndarray) -> np.ndarray:
    return apply_threshold(img, otsu_threshold(intensity_histogram(img)).threshold)


@dataclass(frozen=True)
class AdaptiveParams:
    window: int = 31
    constant_c: float = 10.0
    weighting: str = "gaussian"

    def __post_init__(self):
        if int(self.window) != self.window or self.window < 3 or self.window % 2 == 0:
            raise ValueError(f"adaptive window must be odd and >= 3, got {self.window}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {self.weighting!r}")


def gaussian_window_weights(window: int) -> np.ndarray:
    """Normalized 1-D Gaussian taps; sigma follows the usual window-derived rule."""
    sigma = 0.3 * ((window - 1) * 0.5 - 1) + 0.8
    x = np.arange(window, dtype=np.float64) - (window - 1) / 2.0
    taps = np.exp(-(x**2) / (2 * sigma**2))
    return taps / taps.sum()


def local_threshold_surface(img: np.ndarray, params: AdaptiveParams) -> np.ndarray:
    """Per-pixel threshold: weighted neighbourhood mean minus ``constant_c``."""
    img = check_gray(img).astype(np.float64)
    if params.weighting == "mean":
        taps = np.full(params.window, 1.0 / params.window)
    else:
        taps = gaussian_window_weights(params.window)
    smooth = ndimage.correlate1d(img, taps, axis=0, mode="nearest")
    smooth = ndimage.correlate1d(smooth, taps, axis=1, mode="nearest")
    return smooth - params.constant_c


def adaptive_threshold(img: np.ndarray, params: AdaptiveParams = AdaptiveParams()) -> np.ndarray:
    """Binarize against a locally varying threshold surface."""
    img = check_gray(img)
    return ~(img > local_threshold_surface(img, params))


def erode(img: np.ndarray, k: int = 3) -> np.ndarray:
    """Keep ink only where the whole ``k x k`` window is ink.

    Pixels outside the canvas count as background.
    """
    img = check_binary(img)
    if int(k) != k or k < 3 or k % 2 == 0:
        raise ValueError(f"kernel size must be an odd integer >= 3, got {k}")
    return ndimage.binary_erosion(img, structure=np.ones((k, k), bool), border_value=0)


def _structure(connectivity: int) -> np.ndarray:
    if connectivity == 8:
        return np.ones((3, 3), bool)
    if connectivity == 4:
        return ndimage.generate_binary_structure(2, 1)
    raise ValueError("connectivity must be 4 or 8")


def remove_small_components(img: np.ndarray, min_area: int = 12, connectivity: int = 8) -> np.ndarray:
    """Erase ink components with fewer than ``min_area`` pixels."""
    img = check_binary(img)
    if min_area < 0:
        raise ValueError("min_area must be >= 0")
    labels, count = ndimage.label(img, structure=_structure(connectivity))
    if count == 0 or min_area == 0:
        return img.copy()
    areas = np.bincount(labels.ravel())
    keep = areas >= min_area
    keep[0] = False
    return keep[labels]


def eliminate_border(img: np.ndarray, band: int = 2, connectivity: int = 8) -> np.ndarray:
    """Erase every ink component that reaches within ``band`` pixels of the edge.

    A pixel at row ``y``, column ``x`` is inside the band when
    ``min(y, x, H-1-y, W-1-x) < band``.
    """
    img = check_binary(img)
    if band < 0:
        raise ValueError("band must be >= 0")
    if band == 0:
        return img.copy()
    labels, count = ndimage.label(img, structure=_structure(connectivity))
    if count == 0:
        return img.copy()
    in_band = np.ones(img.shape, bool)
    in_band[band:-band, band:-band] = False
    touching = np.unique(labels[in_band])
    drop = np.zeros(count + 1, bool)
    drop[touching] = True
    drop[0] = False
    return img & ~drop[labels]
