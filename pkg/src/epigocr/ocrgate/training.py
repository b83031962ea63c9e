"""Planner for the legacy box-based training toolchain.

The plan is data only. :func:`execute_plan` can run it, but nothing else
in this package depends on that.
"""

from __future__ import annotations

import os
import subprocess
from dataclasses import dataclass, field

IMAGE_SUFFIXES = (".tif", ".tiff", ".png", ".jpg", ".jpeg", ".pgm")
CLUSTER_FILES = ("inttemp", "pffmtable", "shapetable", "normproto")


class TrainingPlanError(ValueError):
    pass


@dataclass(frozen=True)
class PlanStep:
    stage: str
    invocations: tuple[tuple[str, tuple[str, ...]], ...]
    outputs: tuple[str, ...]


@dataclass(frozen=True)
class TrainingPlan:
    steps: tuple[PlanStep, ...]
    produced_artifacts: tuple[str, ...] = field(default=())
    workdir: str = "."

    def commands(self) -> list[list[str]]:
        return [[prog, *args] for step in self.steps for prog, args in step.invocations]


def _pairs(box_dir: str) -> list[tuple[str, str]]:
    try:
        names = sorted(os.listdir(box_dir))
    except FileNotFoundError:
        raise TrainingPlanError(f"no such directory: {box_dir}") from None
    boxes = {os.path.splitext(n)[0]: n for n in names if n.endswith(".box")}
    images: dict[str, str] = {}
    for n in names:
        stem, ext = os.path.splitext(n)
        if ext.lower() in IMAGE_SUFFIXES:
            images.setdefault(stem, n)
    if not boxes and not images:
        raise TrainingPlanError(f"{box_dir} holds no image/box pairs")
    unmatched = sorted(set(boxes) ^ set(images))
    if unmatched:
        raise TrainingPlanError("missing image/box partner for: " + ", ".join(unmatched))
    return [(images[stem], boxes[stem]) for stem in sorted(boxes)]


def plan_training(box_dir: str | os.PathLike, lang: str, font_props: str | os.PathLike) -> TrainingPlan:
    """Lay out the four training stages for every image/box pair in ``box_dir``.

    Stages: unicharset extraction (with per-image ``.tr`` feature dumps),
    feature training (``mftraining``), cluster training (``cntraining``),
    and combination into ``<lang>.traineddata``. Only the directory listing
    is read.
    """
    box_dir = os.fspath(box_dir)
    font_props = os.fspath(font_props)
    if not lang or any(c in lang for c in "/\\ ."):
        raise TrainingPlanError(f"invalid language identifier {lang!r}")
    pairs = _pairs(box_dir)
    box_files = tuple(b for _, b in pairs)
    tr_files = tuple(os.path.splitext(b)[0] + ".tr" for b in box_files)

    extract = PlanStep(
        "unicharset extraction",
        tuple(("tesseract", (img, os.path.splitext(box)[0], "nobatch", "box.train")) for img, box in pairs)
        + (("unicharset_extractor", box_files),),
        tr_files + ("unicharset",),
    )
    features = PlanStep(
        "feature training",
        (("mftraining", ("-F", font_props, "-U", "unicharset", "-O", f"{lang}.unicharset") + tr_files),),
        ("inttemp", "pffmtable", "shapetable", f"{lang}.unicharset"),
    )
    clusters = PlanStep("cluster training", (("cntraining", tr_files),), ("normproto",))
    prefixed = tuple(f"{lang}.{name}" for name in CLUSTER_FILES)
    combine = PlanStep(
        "combine",
        tuple(("mv", (name, f"{lang}.{name}")) for name in CLUSTER_FILES)
        + (("combine_tessdata", (f"{lang}.",)),),
        prefixed + (f"{lang}.traineddata",),
    )
    steps = (extract, features, clusters, combine)
    produced = tuple(out for step in steps for out in step.outputs)
    return TrainingPlan(steps, produced, box_dir)


def execute_plan(plan: TrainingPlan, timeout: float | None = None) -> None:
    """Run every invocation in ``plan.workdir``; stops at the first failure."""
    for cmd in plan.commands():
        subprocess.run(cmd, cwd=plan.workdir, check=True, timeout=timeout)
