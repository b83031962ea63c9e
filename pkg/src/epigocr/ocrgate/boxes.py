"""Box-file records: parsing, writing and rectification.

A box file holds one glyph per line::

    <glyph> <left> <bottom> <right> <top> <page>

with pixel coordinates measured from the image's bottom-left corner.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..segment import is_combining


class BoxFormatError(ValueError):
    """Malformed box document; ``errors`` lists ``(line number, message)``."""

    def __init__(self, errors: list[tuple[int, str]]):
        self.errors = errors
        super().__init__("; ".join(f"line {n}: {msg}" for n, msg in errors))


@dataclass(frozen=True)
class BoxRecord:
    glyph: str
    left: int
    bottom: int
    right: int
    top: int
    page: int = 0

    def __post_init__(self):
        if not self.glyph or any(ch.isspace() for ch in self.glyph):
            raise ValueError(f"glyph must be non-empty and free of whitespace: {self.glyph!r}")
        if self.left >= self.right:
            raise ValueError(f"left >= right ({self.left} >= {self.right})")
        if self.bottom >= self.top:
            raise ValueError(f"bottom >= top ({self.bottom} >= {self.top})")
        if self.page < 0:
            raise ValueError("page must be >= 0")

    @property
    def width(self) -> int:
        return self.right - self.left

    def to_top_left(self, image_height: int) -> tuple[int, int, int, int]:
        """``(x0, y0, x1, y1)`` with the origin at the top-left corner."""
        return self.left, image_height - self.top, self.right, image_height - self.bottom


def parse_box_file(text: str, image_height: int | None = None) -> list[BoxRecord]:
    """Parse a box document.

    Args:
        text: Box file contents.
        image_height: When given, vertical coordinates must lie within
            ``[0, image_height]``.

    Raises:
        BoxFormatError: listing every malformed line.
    """
    records = []
    errors = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 6:
            errors.append((lineno, f"expected 6 fields, got {len(fields)}"))
            continue
        try:
            left, bottom, right, top, page = (int(f) for f in fields[1:])
        except ValueError:
            errors.append((lineno, "non-integer coordinate"))
            continue
        try:
            box = BoxRecord(fields[0], left, bottom, right, top, page)
        except ValueError as exc:
            errors.append((lineno, str(exc)))
            continue
        if image_height is not None and (box.bottom < 0 or box.top > image_height):
            errors.append((lineno, f"box outside image height {image_height}"))
            continue
        records.append(box)
    if errors:
        raise BoxFormatError(errors)
    return records


def write_box_file(boxes) -> str:
    return "".join(f"{b.glyph} {b.left} {b.bottom} {b.right} {b.top} {b.page}\n" for b in boxes)


def logical_order(glyph: str) -> str:
    """Move marks drawn left of their base (e.g. U+0BC6) after it, as Unicode stores them."""
    out: list[str] = []
    pending: list[str] = []
    for ch in glyph:
        if is_combining(ch):
            pending.append(ch)
        else:
            out.append(ch)
            out.extend(pending)
            pending = []
    return "".join(out + pending)


def _union(a: BoxRecord, b: BoxRecord) -> BoxRecord:
    return BoxRecord(
        a.glyph + b.glyph,
        min(a.left, b.left),
        min(a.bottom, b.bottom),
        max(a.right, b.right),
        max(a.top, b.top),
        a.page,
    )


def merge_compound_boxes(boxes, overlap_ratio: float = 0.5) -> list[BoxRecord]:
    """Fuse boxes that the engine drew for the parts of one compound letter.

    Boxes are taken in left-edge order per page. A box joins the running
    group when its horizontal overlap with the group's rectangle is positive
    and at least ``overlap_ratio * min(widths)``; glyphs are concatenated
    left to right and the rectangle becomes the union. A merged glyph is
    then put in logical order, so a prefix vowel sign follows its consonant.
    """
    if not 0.0 <= overlap_ratio <= 1.0:
        raise ValueError("overlap_ratio must lie in [0, 1]")
    ordered = sorted(boxes, key=lambda b: (b.page, b.left))
    merged: list[BoxRecord] = []
    for box in ordered:
        if merged and merged[-1].page == box.page:
            group = merged[-1]
            overlap = min(group.right, box.right) - max(group.left, box.left)
            if overlap > 0 and overlap >= overlap_ratio * min(group.width, box.width):
                merged[-1] = _union(group, box)
                continue
        merged.append(box)
    return [replace(b, glyph=logical_order(b.glyph)) if len(b.glyph) > 1 else b for b in merged]


@dataclass
class OverlapReport:
    boxes: list[BoxRecord]
    diagnostics: list[str]


def resolve_overlaps(boxes) -> OverlapReport:
    """Make boxes horizontally disjoint.

    Each overlapping neighbour pair is cut at the midline of the overlap
    span, so the left box ends and the right box starts on the same column.
    A box lying entirely within its neighbour's span, or left with no width,
    is dropped and reported in ``diagnostics``.
    """
    ordered = sorted(boxes, key=lambda b: (b.page, b.left))
    kept: list[BoxRecord] = []
    diagnostics: list[str] = []

    def drop(box, why):
        diagnostics.append(f"dropped {box.glyph!r} at [{box.left},{box.right}] on page {box.page}: {why}")

    for box in ordered:
        while box is not None and kept and kept[-1].page == box.page and kept[-1].right > box.left:
            prev = kept[-1]
            if box.right <= prev.right:
                drop(box, f"nested inside {prev.glyph!r}")
                box = None
            elif box.left <= prev.left:
                kept.pop()
                drop(prev, f"nested inside {box.glyph!r}")
            else:
                mid = (box.left + prev.right) // 2
                kept.pop()
                if mid > prev.left:
                    kept.append(replace(prev, right=mid))
                else:
                    drop(prev, "collapsed to zero width")
                if mid < box.right:
                    box = replace(box, left=mid)
                else:
                    drop(box, "collapsed to zero width")
                    box = None
        if box is not None:
            kept.append(box)
    return OverlapReport(kept, diagnostics)
