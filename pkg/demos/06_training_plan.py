"""
Planning a model training run
=============================

Given a folder of page images and their box files, list the commands
that turn them into a traineddata model. Nothing is executed.
"""

import tempfile
from pathlib import Path

from epigocr import ocrgate

work = Path(tempfile.mkdtemp(prefix="epigocr-train-"))
for stem in ("stone01", "stone02", "stone03"):
    (work / f"{stem}.tif").write_bytes(b"")
    (work / f"{stem}.box").write_text("க 0 0 10 10 0\n", encoding="utf-8")

plan = ocrgate.plan_training(work, lang="atam", font_props="font_properties")
for step in plan.steps:
    print(f"[{step.stage}]")
    for prog, args in step.invocations:
        print("   ", prog, *args)
print("produces:", ", ".join(plan.produced_artifacts[-5:]))
