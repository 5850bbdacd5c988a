"""Sequence-level token merging.

Adjacent token pairs that form a strong collocation are fused into a
single multi-word token *before* any graph is built. Collocation strength
for a pair (t_i, t_j) with term counts #t_i, #t_j and adjacent-bigram
count #b_ij is measured by

    MScore = (|#t_i - #b_ij| + |#t_j - #b_ij|) / (#t_i + #t_j)

which is 0 for a perfectly collocated pair (both tokens only ever occur
as this bigram) and 1 for a pair that never co-occurs. Pairs scoring
strictly below the merge threshold are replaced in the sequence by one
merged token; the individual term counts are diminished (multiplied) by
the score so the fused phrase, not its parts, carries the frequency mass.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .tokenizer import Token

BigramIndex = dict[tuple[str, str], int]


@dataclass(frozen=True)
class MergeConfig:
    """merge_threshold: pairs with MScore strictly below it are merged.

    merge_passes repeats the scan on the already-merged sequence, letting
    phrases grow beyond two source tokens; the default single pass caps
    phrases at two, matching typical gold keyphrase lengths.
    """

    merge_threshold: float = 1.0
    merge_passes: int = 1

    def __post_init__(self):
        if self.merge_threshold < 0:
            raise ValueError(f"merge_threshold must be >= 0, got {self.merge_threshold}")
        if self.merge_passes < 1:
            raise ValueError(f"merge_passes must be >= 1, got {self.merge_passes}")


def index_bigrams(tokens: list[Token]) -> BigramIndex:
    """Count every adjacent ordered key pair in the sequence.

    Plain hashing gives the constant-average-time lookup the merge pass
    relies on.
    """
    keys = [t.key for t in tokens]
    return dict(Counter(zip(keys, keys[1:])))


def mscore(count_i: float, count_j: float, count_bigram: float) -> float:
    """Merge score of an adjacent pair; low means strongly collocated.

    Defined whenever count_i + count_j > 0. Within the natural domain
    (0 <= count_bigram <= min(count_i, count_j)) the value lies in [0, 1],
    hitting 0 iff count_i = count_j = count_bigram.
    """
    denom = count_i + count_j
    if denom == 0:
        raise ValueError("mscore undefined: count_i + count_j is zero")
    return (abs(count_i - count_bigram) + abs(count_j - count_bigram)) / denom


def merge_tokens(
    tokens: list[Token],
    counts: dict[str, float],
    bigrams: BigramIndex,
    cfg: MergeConfig = MergeConfig(),
) -> tuple[list[Token], dict[str, float]]:
    """Single left-to-right merge pass (repeated cfg.merge_passes times).

    For each adjacent pair scoring below the threshold, the pair is
    replaced by one token whose surface joins the two surfaces with a
    space; its term count is set to the pair's bigram count, and the
    constituent keys' counts are multiplied by the score. Diminishing is
    applied at most once per key per pass but takes effect immediately,
    so later pairs in the same pass see the reduced counts. A merged
    token is never itself a merge candidate within the same pass.

    Returns the new sequence and the updated counts; counts keep entries
    for diminished keys even when no occurrence survives in the sequence.
    """
    out_counts = dict(counts)
    for _ in range(cfg.merge_passes):
        tokens, out_counts, n_merges = _merge_pass(tokens, out_counts, bigrams, cfg.merge_threshold)
        if n_merges == 0:
            break
        bigrams = index_bigrams(tokens)
    return tokens, out_counts


def _merge_pass(
    tokens: list[Token],
    counts: dict[str, float],
    bigrams: BigramIndex,
    threshold: float,
) -> tuple[list[Token], dict[str, float], int]:
    out: list[Token] = []
    diminished: set[str] = set()
    n_merges = 0
    n = len(tokens)
    i = 0
    while i < n:
        if i + 1 < n:
            a = tokens[i]
            b = tokens[i + 1]
            ca = counts.get(a.key, 0.0)
            cb = counts.get(b.key, 0.0)
            if ca + cb > 0:
                pair_count = bigrams.get((a.key, b.key), 0)
                score = (abs(ca - pair_count) + abs(cb - pair_count)) / (ca + cb)
                if score < threshold:
                    surface = a.surface + " " + b.surface
                    merged = Token(surface=surface, key=a.key + " " + b.key, char_len=len(surface))
                    out.append(merged)
                    counts[merged.key] = float(pair_count)
                    if a.key not in diminished:
                        counts[a.key] = ca * score
                        diminished.add(a.key)
                    if b.key not in diminished:
                        counts[b.key] = cb * score
                        diminished.add(b.key)
                    n_merges += 1
                    i += 2
                    continue
        out.append(tokens[i])
        i += 1
    return out, counts, n_merges
