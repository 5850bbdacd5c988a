"""Document tokenization, stopword filtering and exact term counting.

This is the first stage of the extraction pipeline: raw text becomes an
ordered sequence of tokens (original casing preserved, plus a case-folded
key used for counting and graph construction), with stopwords and
too-short fragments removed.

The segmentation rule is deterministic and language-agnostic: a token is
a maximal run of Unicode letters/digits, optionally joined by intra-word
hyphens or apostrophes ("state-of-the-art", "don't"). Everything else
splits tokens.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

# Letters/digits ([^\W_] excludes the underscore from \w), optionally
# chained with single intra-word hyphens or apostrophes.
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)

# Characters that may join a token internally but do not count as
# alphanumeric content for the min_chars filter.
_JOINERS = ("'", "’", "-")


@dataclass(frozen=True, slots=True)
class Token:
    """One document token: surface form as written plus its case-folded key."""

    surface: str
    key: str
    char_len: int

    @classmethod
    def from_surface(cls, surface: str) -> "Token":
        return cls(surface=surface, key=surface.casefold(), char_len=len(surface))


@dataclass(frozen=True, slots=True)
class RawDocument:
    """An input document: stable identifier plus UTF-8 body text."""

    id: str
    body: str

    @classmethod
    def from_bytes(cls, doc_id: str, data: bytes) -> "RawDocument":
        """Decode raw bytes; a UnicodeDecodeError carries the byte offset."""
        return cls(id=doc_id, body=data.decode("utf-8"))


@dataclass(frozen=True)
class TokenizerConfig:
    """Tokenization knobs.

    min_chars: minimum number of alphanumeric characters a token must
    contain (joining hyphens/apostrophes do not count). Single-character
    fragments pollute the graph, so the default is 2.
    """

    min_chars: int = 2

    def __post_init__(self):
        if self.min_chars < 1:
            raise ValueError(f"min_chars must be >= 1, got {self.min_chars}")


@dataclass(frozen=True)
class StopwordList:
    """Case-insensitive stopword membership."""

    words: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words) -> "StopwordList":
        return cls(frozenset(w.casefold() for w in words))

    @classmethod
    def from_file(cls, path: str | Path) -> "StopwordList":
        """Read a stopword file: UTF-8, one word per line, '#' comments ignored."""
        words = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(line)
        return cls.from_words(words)


@lru_cache(maxsize=1)
def default_stopwords() -> StopwordList:
    """The bundled English stopword list (loaded once, then cached)."""
    text = resources.files("mergerank").joinpath("data/stopwords_en.txt").read_text("utf-8")
    words = [w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#")]
    return StopwordList.from_words(words)


def tokenize(
    doc: RawDocument,
    stopwords: StopwordList | None = None,
    cfg: TokenizerConfig = TokenizerConfig(),
) -> list[Token]:
    """Convert a document body into a filtered, ordered token sequence.

    Tokens whose case-folded key is a stopword are dropped, as are tokens
    with fewer than cfg.min_chars alphanumeric characters. Document order
    is preserved.
    """
    if stopwords is None:
        stopwords = StopwordList()
    stop = stopwords.words
    min_chars = cfg.min_chars
    out: list[Token] = []
    for surface in _TOKEN_RE.findall(doc.body):
        n_alnum = len(surface)
        for joiner in _JOINERS:
            n_alnum -= surface.count(joiner)
        if n_alnum < min_chars:
            continue
        key = surface.casefold()
        if key in stop:
            continue
        out.append(Token(surface=surface, key=key, char_len=len(surface)))
    return out


def count_terms(tokens: list[Token]) -> dict[str, float]:
    """Exact per-key occurrence counts for a token sequence.

    Counts are returned as floats because the merge step later diminishes
    them by a real-valued score.
    """
    counts = Counter(t.key for t in tokens)
    return {key: float(n) for key, n in counts.items()}
