"""Compiled inner loops for the filters that are too slow in plain numpy."""

import numba
import numpy as np


@numba.njit(cache=True)
def bilateral_kernel(padded, height, width, radius, weights):
    # weights[k, |dI|] holds spatial * range weight for window offset k
    out = np.empty((height, width), dtype=np.float64)
    diameter = 2 * radius + 1
    for y in range(height):
        for x in range(width):
            centre = padded[y + radius, x + radius]
            num = 0.0
            den = 0.0
            k = 0
            for j in range(diameter):
                row = padded[y + j]
                for i in range(diameter):
                    q = row[x + i]
                    diff = q - centre if q > centre else centre - q
                    wt = weights[k, diff]
                    num += wt * q
                    den += wt
                    k += 1
            out[y, x] = num / den
    return out


@numba.njit(cache=True)
def rotated_row_counts(xs, ys, cos_t, sin_t, cx, cy, height, width):
    # forward-map ink pixel centres and bin them by nearest output row
    counts = np.zeros(height, dtype=np.int64)
    for n in range(xs.shape[0]):
        dx = xs[n] - cx
        dy = ys[n] - cy
        ox = np.floor(cx + cos_t * dx + sin_t * dy + 0.5)
        oy = np.floor(cy - sin_t * dx + cos_t * dy + 0.5)
        if 0 <= ox < width and 0 <= oy < height:
            counts[int(oy)] += 1
    return counts
