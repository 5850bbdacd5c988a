import random

import pytest

from mergerank.merger import MergeConfig, index_bigrams, merge_tokens, mscore
from mergerank.tokenizer import RawDocument, StopwordList, Token, count_terms, tokenize


def toks(*words):
    return [Token.from_surface(w) for w in words]


def merge_pass_oracle(tokens, counts, bigrams, threshold):
    """Literal re-implementation of one merge pass, kept deliberately naive:
    walk pairs left to right, recompute the score from the current count
    table, diminish each key at most once."""
    counts = dict(counts)
    out = []
    seen_diminish = set()
    pos = 0
    while pos < len(tokens):
        if pos == len(tokens) - 1:
            out.append(tokens[pos])
            break
        a, b = tokens[pos], tokens[pos + 1]
        ca, cb = counts.get(a.key, 0.0), counts.get(b.key, 0.0)
        merged_here = False
        if ca + cb > 0:
            score = (abs(ca - bigrams.get((a.key, b.key), 0)) + abs(cb - bigrams.get((a.key, b.key), 0))) / (ca + cb)
            if score < threshold:
                surface = a.surface + " " + b.surface
                out.append(Token(surface, a.key + " " + b.key, len(surface)))
                counts[a.key + " " + b.key] = float(bigrams.get((a.key, b.key), 0))
                if a.key not in seen_diminish:
                    seen_diminish.add(a.key)
                    counts[a.key] = ca * score
                if b.key not in seen_diminish:
                    seen_diminish.add(b.key)
                    counts[b.key] = counts[b.key] * score
                pos += 2
                merged_here = True
        if not merged_here:
            out.append(tokens[pos])
            pos += 1
    return out, counts


def test_index_bigrams_examples():
    assert index_bigrams([]) == {}
    assert index_bigrams(toks("a", "b", "a", "b")) == {("a", "b"): 2, ("b", "a"): 1}
    assert index_bigrams(toks("growth", "hormone", "growth", "hormone")) == {
        ("growth", "hormone"): 2,
        ("hormone", "growth"): 1,
    }


def test_index_bigrams_total():
    seq = toks(*"a b c a b c a".split())
    assert sum(index_bigrams(seq).values()) == len(seq) - 1
    assert sum(index_bigrams([]).values()) == 0


def test_mscore_exact_values():
    assert mscore(5, 5, 5) == 0.0
    assert mscore(5, 3, 0) == 1.0
    assert mscore(5, 3, 2) == 0.5  # (3 + 1) / 8


def test_mscore_domain_error():
    with pytest.raises(ValueError):
        mscore(0, 0, 1)


def test_mscore_properties_random():
    rng = random.Random(7)
    for _ in range(2000):
        a = rng.uniform(0.1, 50)
        b = rng.uniform(0.1, 50)
        c = rng.uniform(0, min(a, b))
        lam = rng.uniform(0.1, 10)
        s = mscore(a, b, c)
        assert s == mscore(b, a, c)  # symmetric
        assert abs(mscore(lam * a, lam * b, lam * c) - s) < 1e-12  # scale-invariant
        assert 0.0 <= s <= 1.0
        assert (s == 0.0) == (a == b == c)


def test_merge_basic_pair():
    tokens = toks("a", "b")
    counts = {"a": 1.0, "b": 1.0}
    merged, out_counts = merge_tokens(tokens, counts, {("a", "b"): 1}, MergeConfig(merge_threshold=1.0))
    assert [t.key for t in merged] == ["a b"]
    assert out_counts == {"a b": 1.0, "a": 0.0, "b": 0.0}
    assert counts == {"a": 1.0, "b": 1.0}  # input untouched


def test_threshold_is_strict():
    tokens = toks("a", "c")
    merged, _ = merge_tokens(tokens, {"a": 1.0, "c": 1.0}, {}, MergeConfig(merge_threshold=1.0))
    assert [t.key for t in merged] == ["a", "c"]  # MScore = 1 is not < 1


def test_threshold_zero_is_identity():
    doc = RawDocument("d", "alpha beta alpha beta gamma")
    tokens = tokenize(doc)
    counts = count_terms(tokens)
    merged, out_counts = merge_tokens(tokens, counts, index_bigrams(tokens), MergeConfig(merge_threshold=0.0))
    assert merged == tokens
    assert out_counts == counts


def test_corpus_style_merge():
    stop = StopwordList.from_words(["and"])
    tokens = tokenize(RawDocument("d", "growth hormone levels and growth hormone receptors"), stop)
    counts = count_terms(tokens)
    bigrams = index_bigrams(tokens)
    merged, out_counts = merge_tokens(tokens, counts, bigrams, MergeConfig(merge_threshold=1.0))
    keys = [t.key for t in merged]
    assert "growth hormone" in keys  # the collocated pair merges at tau = 1
    assert "hormone levels" not in keys
    # agrees with the naive single-pass oracle
    oracle_seq, oracle_counts = merge_pass_oracle(tokens, counts, bigrams, 1.0)
    assert [t.key for t in merged] == [t.key for t in oracle_seq]
    assert out_counts == pytest.approx(oracle_counts)


def test_matches_pass_oracle_on_random_sequences():
    rng = random.Random(21)
    vocab = ["red", "blue", "lime", "gold", "onyx", "teal", "rust", "sage"]
    for trial in range(200):
        words = [rng.choice(vocab) for _ in range(rng.randint(0, 40))]
        tokens = toks(*words)
        counts = count_terms(tokens)
        bigrams = index_bigrams(tokens)
        threshold = rng.choice([0.0, 0.3, 0.5, 1.0, 1.5])
        got_seq, got_counts = merge_tokens(tokens, counts, bigrams, MergeConfig(merge_threshold=threshold))
        want_seq, want_counts = merge_pass_oracle(tokens, counts, bigrams, threshold)
        assert [t.key for t in got_seq] == [t.key for t in want_seq], (trial, words, threshold)
        assert got_counts == pytest.approx(want_counts)


def test_sequence_shrinks_by_number_of_merges():
    rng = random.Random(3)
    vocab = ["aa", "bb", "cc", "dd"]
    for _ in range(50):
        tokens = toks(*(rng.choice(vocab) for _ in range(rng.randint(0, 30))))
        counts = count_terms(tokens)
        merged, _ = merge_tokens(tokens, counts, index_bigrams(tokens), MergeConfig())
        n_merges = sum(1 for t in merged if " " in t.key)
        assert len(merged) == len(tokens) - n_merges


def test_output_counts_cover_output_keys():
    tokens = tokenize(RawDocument("d", "ion engines push ion engines far beyond chemical rockets"))
    counts = count_terms(tokens)
    merged, out_counts = merge_tokens(tokens, counts, index_bigrams(tokens), MergeConfig())
    for t in merged:
        assert t.key in out_counts


def test_merged_surface_preserves_casing():
    tokens = toks("Growth", "Hormone")
    merged, _ = merge_tokens(tokens, {"growth": 1.0, "hormone": 1.0}, {("growth", "hormone"): 1}, MergeConfig())
    assert merged[0].surface == "Growth Hormone"
    assert merged[0].key == "growth hormone"
    assert merged[0].char_len == len("Growth Hormone")


def test_multi_pass_builds_longer_phrases():
    words = "tall oak tree tall oak tree tall oak tree".split()
    tokens = toks(*words)
    counts = count_terms(tokens)
    merged, _ = merge_tokens(tokens, counts, index_bigrams(tokens), MergeConfig(merge_passes=2))
    assert any(t.key.count(" ") == 2 for t in merged)


def test_invalid_config():
    with pytest.raises(ValueError):
        MergeConfig(merge_threshold=-0.1)
    with pytest.raises(ValueError):
        MergeConfig(merge_passes=0)
