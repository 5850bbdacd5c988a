"""End-to-end keyphrase extraction pipeline.

tokenize -> count terms -> index bigrams -> merge tokens -> build graph
-> personalize -> PageRank -> length-weight -> sort -> case-dedup ->
truncate. The result is a ranked list of (phrase, score) pairs with
non-increasing scores and case-fold-distinct phrases.

Extraction is a pure function of (document, config): no global state,
safe to run concurrently on distinct documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import NodeScores, PageRankConfig, TokenGraph, build_graph, \
    personalization_from_counts, personalized_pagerank
from .merger import MergeConfig, index_bigrams, merge_tokens
from .tokenizer import RawDocument, StopwordList, TokenizerConfig, count_terms, \
    default_stopwords, tokenize


@dataclass(frozen=True, slots=True)
class Keyphrase:
    phrase: str
    score: float


@dataclass(frozen=True)
class ExtractConfig:
    """Everything extract() needs, with the stock defaults.

    length_unit picks the token-length factor applied to PageRank scores:
    "chars" counts characters of the surface phrase (spaces included),
    "words" counts its space-separated parts.
    """

    top_k: int = 10
    merge: MergeConfig = field(default_factory=MergeConfig)
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    pagerank: PageRankConfig = field(default_factory=PageRankConfig)
    stopwords: StopwordList | None = None  # None = bundled English list
    length_unit: str = "chars"

    def __post_init__(self):
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.length_unit not in ("chars", "words"):
            raise ValueError(f"length_unit must be 'chars' or 'words', got {self.length_unit!r}")

    def resolved_stopwords(self) -> StopwordList:
        return self.stopwords if self.stopwords is not None else default_stopwords()


def phrase_length(surface: str, length_unit: str = "chars") -> int:
    if length_unit == "words":
        return surface.count(" ") + 1
    return len(surface)


def score_tokens(
    ranks: NodeScores, graph: TokenGraph, length_unit: str = "chars"
) -> dict[str, float]:
    """Element-wise product of PageRank scores and token lengths.

    Longer (merged) phrases are emphasized; the internal space of a
    merged surface counts toward its character length.
    """
    return {
        key: ranks.scores[key] * phrase_length(graph.surface(key), length_unit)
        for key in graph.nodes
    }


def dedup_case(candidates: list[Keyphrase]) -> list[Keyphrase]:
    """Drop case-level duplicates ('City' vs 'city'), keeping the first
    (highest-scored) of each group; order is otherwise preserved."""
    seen: set[str] = set()
    out: list[Keyphrase] = []
    for cand in candidates:
        folded = cand.phrase.casefold()
        if folded not in seen:
            seen.add(folded)
            out.append(cand)
    return out


def extract(doc: RawDocument, cfg: ExtractConfig = ExtractConfig()) -> list[Keyphrase]:
    """Extract the top-k ranked keyphrases from one document.

    Degenerate inputs (empty, all stopwords, single token) yield whatever
    candidates exist, possibly fewer than top_k, never an error.
    """
    stopwords = cfg.resolved_stopwords()
    tokens = tokenize(doc, stopwords, cfg.tokenizer)
    if not tokens:
        return []
    counts = count_terms(tokens)
    bigrams = index_bigrams(tokens)
    tokens, counts = merge_tokens(tokens, counts, bigrams, cfg.merge)
    graph = build_graph(tokens)
    personalization = personalization_from_counts(counts, graph)
    ranks = personalized_pagerank(graph, personalization, cfg.pagerank)
    scored = score_tokens(ranks, graph, cfg.length_unit)
    candidates = [Keyphrase(graph.surface(key), s) for key, s in scored.items()]
    candidates.sort(key=lambda c: (-c.score, c.phrase.casefold()))
    return dedup_case(candidates)[: cfg.top_k]


def format_score(score: float) -> str:
    """Render a score with 17 significant digits so parsing it back yields
    the identical float."""
    return format(score, ".17g")


def to_json_record(doc_id: str, keyphrases: list[Keyphrase]) -> str:
    """One-line JSON record: {"id": ..., "keyphrases": [{"phrase", "score"}...]}."""
    items = ", ".join(
        '{"phrase": %s, "score": %s}' % (json.dumps(k.phrase, ensure_ascii=False), format_score(k.score))
        for k in keyphrases
    )
    return '{"id": %s, "keyphrases": [%s]}' % (json.dumps(doc_id, ensure_ascii=False), items)


def to_tsv_lines(doc_id: str, keyphrases: list[Keyphrase]) -> list[str]:
    """`id \\t phrase \\t score` rows."""
    return [f"{doc_id}\t{k.phrase}\t{format_score(k.score)}" for k in keyphrases]
