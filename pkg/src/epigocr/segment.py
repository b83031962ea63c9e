"""Tamil grapheme clustering, dictionary word-break and base-letter normalization."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

# Code points that attach to the preceding base: dependent vowel signs,
# the pulli (virama) and the au length mark. Extend the table for other marks.
COMBINING_RANGES = (
    (0x0BBE, 0x0BCC),
    (0x0BCD, 0x0BCD),
    (0x0BD7, 0x0BD7),
)


def is_combining(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in COMBINING_RANGES)


@dataclass(frozen=True)
class GraphemeSeq:
    """Text split into clusters.

    ``degenerate_lead`` is set when the text opens with a combining mark,
    which then forms a cluster without a base.
    """

    clusters: tuple[str, ...] = ()
    degenerate_lead: bool = False

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def __getitem__(self, idx):
        return self.clusters[idx]

    def __str__(self) -> str:
        return "".join(self.clusters)


def split_graphemes(text: str) -> GraphemeSeq:
    clusters: list[str] = []
    for ch in text:
        if clusters and is_combining(ch):
            clusters[-1] += ch
        else:
            clusters.append(ch)
    return GraphemeSeq(tuple(clusters), bool(text) and is_combining(text[0]))


def _as_clusters(text) -> tuple[str, ...]:
    if isinstance(text, GraphemeSeq):
        return text.clusters
    if isinstance(text, str):
        return split_graphemes(text).clusters
    return tuple(text)


def normalize_base(text) -> GraphemeSeq:
    """Strip combining marks so every cluster is its bare base letter.

    A leading cluster made only of marks has no base and is kept as is.
    """
    seq = text if isinstance(text, GraphemeSeq) else split_graphemes(text)
    out = []
    for cluster in seq.clusters:
        if is_combining(cluster[0]):
            out.append(cluster)
        else:
            out.append(cluster[0])
    return GraphemeSeq(tuple(out), seq.degenerate_lead)


class Lexicon:
    """Immutable word set over grapheme clusters, stored as a trie."""

    _END = ""

    def __init__(self, words: Iterable[str] = ()):
        self._root: dict = {}
        self._size = 0
        self.max_len = 0
        for word in words:
            self._insert(word)

    def _insert(self, word: str) -> None:
        clusters = _as_clusters(word)
        if not clusters:
            raise ValueError("lexicon words must be non-empty")
        node = self._root
        for c in clusters:
            node = node.setdefault(c, {})
        if self._END not in node:
            node[self._END] = True
            self._size += 1
            self.max_len = max(self.max_len, len(clusters))

    def __len__(self) -> int:
        return self._size

    @property
    def size(self) -> int:
        return self._size

    def __contains__(self, word) -> bool:
        return self.lookup(word)

    def lookup(self, word) -> bool:
        node = self._root
        for c in _as_clusters(word):
            node = node.get(c)
            if node is None:
                return False
        return self._END in node

    def prefix_matches(self, clusters, start: int) -> list[int]:
        """End indices ``j`` such that ``clusters[start:j]`` is a word."""
        ends = []
        node = self._root
        for j in range(start, len(clusters)):
            node = node.get(clusters[j])
            if node is None:
                break
            if self._END in node:
                ends.append(j + 1)
        return ends


def build_lexicon(words: Iterable[str]) -> Lexicon:
    return Lexicon(words)


def parse_lexicon(text: str) -> Lexicon:
    """One word per line; ``#`` starts a comment line; blank lines are skipped."""
    words = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return Lexicon(words)


def load_lexicon(path: str | os.PathLike) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


@dataclass(frozen=True)
class Piece:
    start: int
    end: int
    kind: str  # "lexicon" or "oov"


@dataclass(frozen=True)
class Segmentation:
    pieces: tuple[Piece, ...]
    cost: tuple[int, int]

    @property
    def boundaries(self) -> tuple[int, ...]:
        return tuple(p.end for p in self.pieces)


def word_break(text, lex: Lexicon) -> Segmentation:
    """Split space-less text into dictionary words.

    The result minimizes ``(clusters left out of vocabulary, piece count)``;
    runs of unknown clusters form a single ``oov`` piece. Among equal costs
    the segmentation with the lexicographically smallest list of piece end
    offsets wins.
    """
    clusters = _as_clusters(text)
    n = len(clusters)
    # best[i][open_oov]: (oov, pieces, ends emitted from position i onwards)
    # open_oov means an unknown run is still open at i and may be extended
    best: list[list] = [[None, None] for _ in range(n + 1)]
    best[n][0] = (0, 0, ())
    best[n][1] = (0, 0, (n,))
    for i in range(n - 1, -1, -1):
        words = lex.prefix_matches(clusters, i)
        for open_oov in (0, 1):
            closing = (i,) if open_oov else ()
            candidates = []
            for j in words:
                oov, pieces, ends = best[j][0]
                candidates.append((oov, pieces + 1, closing + (j,) + ends))
            oov, pieces, ends = best[i + 1][1]
            candidates.append((oov + 1, pieces + (0 if open_oov else 1), ends))
            best[i][open_oov] = min(candidates)

    oov, count, ends = best[0][0]
    pieces = []
    start = 0
    for end in ends:
        # an optimal unknown run never spells a word, so membership gives the kind
        kind = "lexicon" if lex.lookup(clusters[start:end]) else "oov"
        pieces.append(Piece(start, end, kind))
        start = end
    return Segmentation(tuple(pieces), (oov, count))


def render_spaced(seg: Segmentation, text) -> str:
    clusters = _as_clusters(text)
    return " ".join("".join(clusters[p.start : p.end]) for p in seg.pieces)
