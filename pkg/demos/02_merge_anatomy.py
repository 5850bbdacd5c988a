"""Anatomy of the sequence-level merge step.

Shows the intermediate artifacts the extractor normally hides: term
counts, the bigram index, per-pair merge scores, and what the token
sequence looks like after one merge pass.

    python demos/02_merge_anatomy.py
"""

from mergerank import MergeConfig, RawDocument, count_terms, index_bigrams, merge_tokens, mscore, tokenize
from mergerank.tokenizer import StopwordList

text = "growth hormone levels and growth hormone receptors track growth hormone"
stop = StopwordList.from_words(["and"])

tokens = tokenize(RawDocument("demo", text), stop)
print("tokens:        ", [t.key for t in tokens])

counts = count_terms(tokens)
print("term counts:   ", counts)

bigrams = index_bigrams(tokens)
print("bigram counts: ", {f"{a} {b}": n for (a, b), n in bigrams.items()})

# The merge score compares a pair's bigram count with its members' term
# counts: 0 means the two tokens only ever appear together, 1 means they
# never do. Pairs scoring strictly below the threshold are fused.
print("\nmerge scores of adjacent pairs:")
for (a, b), n in bigrams.items():
    print(f"  ({a}, {b}): mscore({counts[a]:.0f}, {counts[b]:.0f}, {n}) = "
          f"{mscore(counts[a], counts[b], n):.3f}")

merged, new_counts = merge_tokens(tokens, counts, bigrams, MergeConfig(merge_threshold=1.0))
print("\nafter one pass:", [t.key for t in merged])
print("updated counts:", {k: round(v, 3) for k, v in new_counts.items()})
print("\nNote how the merged phrase takes over the pair's bigram count while")
print("the member tokens keep only a diminished share of their original mass.")
