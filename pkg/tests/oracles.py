"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package under test.
"""

import itertools
import math
from collections import deque
from fractions import Fraction

import numpy as np


def clamp_index(i, n):
    return min(max(i, 0), n - 1)


def naive_median(img, k):
    h, w = img.shape
    r = k // 2
    out = np.empty_like(img)
    for y in range(h):
        for x in range(w):
            vals = sorted(
                int(img[clamp_index(y + j, h), clamp_index(x + i, w)])
                for j in range(-r, r + 1)
                for i in range(-r, r + 1)
            )
            out[y, x] = vals[len(vals) // 2]
    return out


def naive_box(img, k):
    h, w = img.shape
    r = k // 2
    out = np.empty_like(img)
    for y in range(h):
        for x in range(w):
            s = sum(
                int(img[clamp_index(y + j, h), clamp_index(x + i, w)])
                for j in range(-r, r + 1)
                for i in range(-r, r + 1)
            )
            out[y, x] = math.floor(Fraction(s, k * k) + Fraction(1, 2))
    return out


def naive_erode(ink, k):
    h, w = ink.shape
    r = k // 2
    out = np.zeros_like(ink)
    for y in range(h):
        for x in range(w):
            full = True
            for j in range(-r, r + 1):
                for i in range(-r, r + 1):
                    yy, xx = y + j, x + i
                    if not (0 <= yy < h and 0 <= xx < w) or not ink[yy, xx]:
                        full = False
            out[y, x] = full
    return out


def naive_bilateral(img, d, sigma_color, sigma_space):
    h, w = img.shape
    r = d // 2
    out = np.empty_like(img)
    for y in range(h):
        for x in range(w):
            c = float(img[y, x])
            num = den = 0.0
            for j in range(-r, r + 1):
                for i in range(-r, r + 1):
                    q = float(img[clamp_index(y + j, h), clamp_index(x + i, w)])
                    wt = math.exp(-(i * i + j * j) / (2 * sigma_space**2)) * math.exp(
                        -((c - q) ** 2) / (2 * sigma_color**2)
                    )
                    num += wt * q
                    den += wt
            out[y, x] = math.floor(num / den + 0.5)
    return out


def naive_gaussian_blur(img, d, sigma):
    """Spatial-only Gaussian over a d x d window, edge replication, rounded."""
    h, w = img.shape
    r = d // 2
    out = np.empty_like(img)
    for y in range(h):
        for x in range(w):
            num = den = 0.0
            for j in range(-r, r + 1):
                for i in range(-r, r + 1):
                    wt = math.exp(-(i * i + j * j) / (2 * sigma**2))
                    num += wt * float(img[clamp_index(y + j, h), clamp_index(x + i, w)])
                    den += wt
            out[y, x] = math.floor(num / den + 0.5)
    return out


def bfs_components(ink, connectivity=8):
    """List of components, each a list of (y, x), found by breadth-first search."""
    h, w = ink.shape
    if connectivity == 8:
        steps = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dy, dx) != (0, 0)]
    else:
        steps = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    seen = np.zeros_like(ink, dtype=bool)
    comps = []
    for y in range(h):
        for x in range(w):
            if ink[y, x] and not seen[y, x]:
                comp = []
                queue = deque([(y, x)])
                seen[y, x] = True
                while queue:
                    cy, cx = queue.popleft()
                    comp.append((cy, cx))
                    for dy, dx in steps:
                        ny, nx = cy + dy, cx + dx
                        if 0 <= ny < h and 0 <= nx < w and ink[ny, nx] and not seen[ny, nx]:
                            seen[ny, nx] = True
                            queue.append((ny, nx))
                comps.append(comp)
    return comps


def brute_force_otsu(bins):
    """Scan every t, recomputing class statistics from scratch in exact arithmetic."""
    bins = [int(b) for b in bins]
    total = sum(bins)
    counts = list(itertools.accumulate(bins))
    moments = list(itertools.accumulate(v * b for v, b in enumerate(bins)))
    best_t, best_val = None, None
    for t in range(256):
        n0 = counts[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            val = Fraction(0)
        else:
            w0 = Fraction(n0, total)
            w1 = Fraction(n1, total)
            mu0 = Fraction(moments[t], n0)
            mu1 = Fraction(moments[-1] - moments[t], n1)
            val = w0 * w1 * (mu0 - mu1) ** 2
        if best_val is None or val > best_val:
            best_t, best_val = t, val
    return best_t, best_val


def enumerate_segmentations(clusters, words):
    """Every cut pattern, with unknown neighbours coalesced; yields (cost, ends)."""
    n = len(clusters)
    if n == 0:
        yield (0, 0), ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        pieces = []
        for a, b in zip(bounds, bounds[1:]):
            kind = "lex" if tuple(clusters[a:b]) in words else "oov"
            if pieces and kind == "oov" and pieces[-1][2] == "oov":
                pieces[-1] = (pieces[-1][0], b, "oov")
            else:
                pieces.append((a, b, kind))
        oov = sum(b - a for a, b, k in pieces if k == "oov")
        yield (oov, len(pieces)), tuple(b for _, b, _ in pieces)


def full_matrix_levenshtein(a, b):
    a, b = list(a), list(b)
    d = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        d[i][0] = i
    for j in range(len(b) + 1):
        d[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1]))
    return d[len(a)][len(b)]


def window_stack(img, k, mode="edge"):
    """All k*k shifted copies of ``img`` as an array of shape (k*k, H, W)."""
    r = k // 2
    h, w = img.shape
    if mode == "edge":
        padded = np.pad(img, r, mode="edge")
    else:
        padded = np.pad(img, r, mode="constant", constant_values=0)
    return np.stack([padded[j : j + h, i : i + w] for j in range(k) for i in range(k)])


def stacked_median(img, k):
    return np.sort(window_stack(img, k), axis=0)[k * k // 2]


def stacked_box(img, k):
    s = window_stack(img, k).astype(np.int64).sum(axis=0)
    n = k * k
    return ((2 * s + n) // (2 * n)).astype(np.uint8)


def stacked_erode(ink, k):
    return window_stack(ink, k, mode="constant").all(axis=0)


def stacked_bilateral(img, d, sigma_color, sigma_space):
    r = d // 2
    stack = window_stack(img, d).astype(np.float64)
    centre = img.astype(np.float64)
    offsets = [(j - r, i - r) for j in range(d) for i in range(d)]
    num = np.zeros_like(centre)
    den = np.zeros_like(centre)
    for (dy, dx), q in zip(offsets, stack):
        wt = np.exp(-(dy * dy + dx * dx) / (2 * sigma_space**2)) * np.exp(-((centre - q) ** 2) / (2 * sigma_color**2))
        num += wt * q
        den += wt
    return np.floor(num / den + 0.5).astype(np.uint8)
