"""Extracting keyphrases from a single document.

Walks the shortest path through the library: load a document, call
extract(), and look at how the merge threshold changes what comes back.
Run from the repository root:

    python demos/01_extract_keyphrases.py
"""

from importlib import resources

from mergerank import ExtractConfig, MergeConfig, RawDocument, extract

text = resources.files("mergerank").joinpath("data/sample_medal.txt").read_text("utf-8")
doc = RawDocument("sample", text)

print("=== default configuration (merge threshold 1.0) ===")
for kp in extract(doc):
    print(f"  {kp.score:7.4f}  {kp.phrase}")

# Lowering the threshold makes merging pickier: only strongly collocated
# pairs fuse, so individual high-frequency terms climb the ranking.
print("\n=== merge threshold 0.5: single terms come forward ===")
cfg = ExtractConfig(merge=MergeConfig(merge_threshold=0.5))
for kp in extract(doc, cfg):
    print(f"  {kp.score:7.4f}  {kp.phrase}")

print("\n=== merge threshold 0.0: merging disabled, unigrams only ===")
cfg = ExtractConfig(merge=MergeConfig(merge_threshold=0.0), top_k=5)
for kp in extract(doc, cfg):
    print(f"  {kp.score:7.4f}  {kp.phrase}")
