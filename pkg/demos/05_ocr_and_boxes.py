"""
Talking to the OCR engine and fixing its boxes
==============================================

The engine runs as a subprocess. Here a fixture-backed stand-in plays
its part so the script works without it installed.
"""

import numpy as np

from epigocr import ocrgate
from epigocr.synthetic import inscription_page

page = inscription_page(np.random.default_rng(4))
engine = ocrgate.MockEngine({ocrgate.image_fingerprint(page): "அவன்வந்தான்"}, models={"atam"})
result = ocrgate.recognize(ocrgate.OcrRequest(page, model="atam", psm=6), engine)
print("text:", result.text, "| call:", engine.calls[-1]["model"], "psm", engine.calls[-1]["psm"])

try:
    ocrgate.recognize(ocrgate.OcrRequest(page, model="eng"), engine)
except ocrgate.ModelNotFoundError as exc:
    print("error:", exc, exc.diagnostics)

# The real engine is built the same way; its command line looks like this
print(ocrgate.ExternalEngine(binary="tesseract").command("page.png", "out", "atam", 6))

# Box files: a vowel sign drawn as its own box next to the consonant it belongs to
doc = "ெ 10 0 18 20 0\nக 14 0 30 20 0\nட 31 0 45 20 0\nம 42 0 60 20 0\n"
boxes = ocrgate.parse_box_file(doc)
merged = ocrgate.merge_compound_boxes(boxes)
print(ocrgate.write_box_file(merged), end="")
report = ocrgate.resolve_overlaps(merged)
print(ocrgate.write_box_file(report.boxes), end="")
print(report.diagnostics)
