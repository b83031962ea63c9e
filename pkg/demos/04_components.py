"""
Dropping specks and border debris
=================================

Small connected blobs are noise; blobs that touch the frame are usually
the stone's edge or the photo's margin.
"""

import numpy as np
from scipy import ndimage

from epigocr import binarize

rng = np.random.default_rng(3)
ink = np.zeros((60, 80), bool)
ink[20:30, 20:35] = True  # a glyph
ink[40:48, 50:58] = True  # another glyph
ink[0:6, 30:60] = True  # crack along the top edge
ink[rng.integers(0, 60, 40), rng.integers(0, 80, 40)] = True  # speckle


def count(img):
    return ndimage.label(img, structure=np.ones((3, 3)))[1]


print("components at start", count(ink))
clean = binarize.remove_small_components(ink, min_area=12, connectivity=8)
print("after area filter", count(clean))
clean = binarize.eliminate_border(clean, band=2)
print("after border elimination", count(clean))
