"""
Scoring recognized text
=======================

Accuracy is one minus the grapheme edit distance over the reference
length, floored at zero, and images are weighted by their length.
"""

from epigocr import evalkit

pairs = {
    "stone01": ("அவன் வந்தான்", "அவன்வந்தான்"),
    "stone02": ("அவள்வந்தான்", "அவள்வந்தாள்"),
    "stone03": ("கல்", "கல்வெட்டு"),
    "stone04": ("ன", "ன்"),
}
scores = [evalkit.score_image(pred, gt, image_id=k) for k, (pred, gt) in pairs.items()]
report = evalkit.aggregate(scores, normalize=True)
print(report.to_table(), end="")

# Without base-letter normalization the vowel-sign slips count too
strict = [evalkit.score_image(p, g, normalize=False, image_id=k) for k, (p, g) in pairs.items()]
print("strict weighted accuracy %.3f" % evalkit.aggregate(strict).weighted_accuracy)
