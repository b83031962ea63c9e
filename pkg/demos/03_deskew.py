"""
Finding and undoing page tilt
=============================

The row projection of a straight page has sharp peaks and gaps. Rotating
the ink until the projection is sharpest gives the skew.
"""

import numpy as np

from epigocr import deskew, raster
from epigocr.deskew import SkewSearchParams
from epigocr.synthetic import stripe_text

rng = np.random.default_rng(2)
page = stripe_text(rng)

for true in (-7.3, -1.2, 0.0, 4.6, 9.9):
    tilted = raster.rotate(page, true, fill=255)
    est = deskew.estimate_skew(tilted < 128)
    print(f"tilted {true:+5.1f} deg -> correction {est.angle:+5.1f} deg (score {est.score})")

# The score curve around the answer
tilted = raster.rotate(page, 3.0, fill=255)
est = deskew.estimate_skew(tilted < 128, SkewSearchParams(max_angle=6, coarse_step=1.0, fine_step=0.1))
best = sorted(est.scores, key=lambda s: -s[1])[:5]
print("top candidates", [(a, s) for a, s in best])

fixed = deskew.deskew(tilted, tilted < 128)
print("score before %d, after %d, original %d" % (
    deskew.skew_score(tilted < 128), deskew.skew_score(fixed < 128), deskew.skew_score(page < 128)))
