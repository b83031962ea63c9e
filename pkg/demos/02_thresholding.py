"""
Global versus local thresholds
==============================

Otsu picks one cut for the whole page. On a page lit from one side that
cut swallows the dark half; a Gaussian-weighted local threshold does not.
"""

import numpy as np

from epigocr import binarize, raster
from epigocr.binarize import AdaptiveParams
from epigocr.synthetic import stripe_text

rng = np.random.default_rng(1)

glyphs = stripe_text(rng, 200, 300) == 0
xs = np.arange(300)
light = 60 + 180 * xs / 299  # dark on the left, bright on the right
page = np.broadcast_to(light, (200, 300)).copy()
page[glyphs] -= 50
page = np.clip(page, 0, 255).astype(np.uint8)

stats = binarize.otsu_threshold(raster.intensity_histogram(page))
print("Otsu threshold", stats.threshold, "between-class variance %.1f" % stats.sigma_b2)
print("class weights %.2f / %.2f, means %.1f / %.1f" % (stats.w0, stats.w1, stats.mu0, stats.mu1))

otsu = binarize.apply_threshold(page, stats.threshold)
local = binarize.adaptive_threshold(page, AdaptiveParams(window=31, constant_c=10, weighting="gaussian"))


def agreement(ink):
    return (ink == glyphs).mean()


print("pixels labelled correctly: Otsu %.3f, adaptive %.3f" % (agreement(otsu), agreement(local)))

# Erosion thins strokes and drops isolated specks
eroded = binarize.erode(local, 3)
print("ink before/after erosion", local.sum(), eroded.sum())
