"""Synthetic inscription-like pages for tests and demonstrations."""

from __future__ import annotations

import numpy as np

from .raster import rotate


def stripe_text(
    rng: np.random.Generator,
    height: int = 300,
    width: int = 400,
    line_height: int = 12,
    line_gap: int = 14,
    margin: int = 30,
    ink: int = 0,
    background: int = 255,
) -> np.ndarray:
    """Rows of dark blocks of random width, imitating lines of glyphs."""
    img = np.full((height, width), background, np.uint8)
    y = margin
    while y + line_height < height - margin:
        x = margin
        while x < width - margin - 14:
            w = int(rng.integers(4, 14))
            img[y : y + line_height, x : x + w] = ink
            x += w + int(rng.integers(2, 6))
        y += line_height + line_gap
    return img


def inscription_page(
    rng: np.random.Generator,
    height: int = 240,
    width: int = 320,
    skew: float = 0.0,
    noise_sigma: float = 12.0,
    speckle: float = 0.002,
) -> np.ndarray:
    """Dark glyph rows on an unevenly lit stone-like background.

    The page carries a horizontal lighting gradient, Gaussian grain, salt
    and pepper speckle and an optional rotation by ``skew`` degrees.
    """
    ys, xs = np.mgrid[0:height, 0:width]
    background = 150 + 70 * xs / max(width - 1, 1) + 10 * np.sin(ys / 17.0)
    page = background.copy()
    glyphs = stripe_text(rng, height, width, line_height=14, line_gap=16, margin=36, ink=0, background=255)
    page[glyphs == 0] -= 110
    page += rng.normal(0.0, noise_sigma, page.shape)
    flips = rng.random(page.shape)
    page[flips < speckle / 2] = 0
    page[flips > 1 - speckle / 2] = 255
    page = np.clip(np.floor(page + 0.5), 0, 255).astype(np.uint8)
    if skew:
        page = rotate(page, skew, fill=int(np.median(page)))
    return page
