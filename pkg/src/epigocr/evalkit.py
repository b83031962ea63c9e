"""Character accuracy over grapheme clusters and weighted aggregation."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .segment import GraphemeSeq, normalize_base, split_graphemes

ACCURACY_DEFINITION = "accuracy = max(0, 1 - edit_distance / gt_len) over grapheme clusters"


def edit_distance(a, b) -> int:
    """Unit-cost Levenshtein distance between two cluster sequences."""
    a = tuple(a)
    b = tuple(b)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class ImageScore:
    image_id: str
    gt_len: int
    distance: int
    accuracy: float


def _prepare(text: str, normalize: bool, keep_spaces: bool) -> GraphemeSeq:
    if not keep_spaces:
        text = "".join(text.split())
    seq = split_graphemes(text)
    return normalize_base(seq) if normalize else seq


def score_image(pred: str, gt: str, normalize: bool = True, image_id: str = "", keep_spaces: bool = False) -> ImageScore:
    """Score one prediction against its ground truth.

    Whitespace is removed from both sides first unless ``keep_spaces``.
    With ``normalize`` every cluster is reduced to its base letter, so
    vowel-sign and pulli differences are not counted.
    """
    gt_seq = _prepare(gt, normalize, keep_spaces)
    if len(gt_seq) == 0:
        raise ValueError(f"empty ground truth for {image_id or 'image'}")
    pred_seq = _prepare(pred, normalize, keep_spaces)
    dist = edit_distance(pred_seq, gt_seq)
    return ImageScore(image_id, len(gt_seq), dist, max(0.0, 1.0 - dist / len(gt_seq)))


@dataclass
class EvalReport:
    scores: list[ImageScore]
    weighted_accuracy: float
    total_graphemes: int
    failures: list[tuple[str, str]] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_table(self) -> str:
        lines = ["image_id\tgt_len\tdistance\taccuracy"]
        for s in self.scores:
            lines.append(f"{s.image_id}\t{s.gt_len}\t{s.distance}\t{s.accuracy:.6f}")
        for image_id, err in self.failures:
            lines.append(f"{image_id}\tFAILED\t-\t{err}")
        lines.append(
            f"# weighted_accuracy {self.weighted_accuracy:.6f} over {self.total_graphemes} graphemes"
            f" ({len(self.scores)} scored, {len(self.failures)} failed)"
        )
        lines.append(f"# {ACCURACY_DEFINITION}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "scores": [asdict(s) for s in self.scores],
            "weighted_accuracy": self.weighted_accuracy,
            "total_graphemes": self.total_graphemes,
            "failures": [{"image_id": i, "error": e} for i, e in self.failures],
            "metadata": self.metadata,
        }
        return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def aggregate(scores, failures=(), normalize: bool | None = None) -> EvalReport:
    """Weight each image's accuracy by its ground-truth length."""
    scores = list(scores)
    if not scores:
        raise ValueError("nothing to aggregate")
    total = sum(s.gt_len for s in scores)
    weighted = sum(s.gt_len * s.accuracy for s in scores) / total
    metadata = {"accuracy_definition": ACCURACY_DEFINITION, "clamped_at_zero": True}
    if normalize is not None:
        metadata["base_normalization"] = normalize
    return EvalReport(scores, weighted, total, list(failures), metadata)
