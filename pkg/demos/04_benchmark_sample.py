"""Running the retrieval benchmark on the bundled sample corpus.

Compares the engine against the unigram term-frequency baseline on
Precision/Recall/F1 at several cutoffs, duplication rate, and timing,
then prints the normalized trade-off axes (worst performer 0, best 1).

    python demos/04_benchmark_sample.py
"""

from mergerank.datasets import corpus_stats, load_corpus, sample_corpus_root
from mergerank.evaluation import BenchmarkConfig, benchmark_corpus

corpus = load_corpus(sample_corpus_root(), name="sample")
stats = corpus_stats(corpus)
print(f"corpus: {stats.doc_count} docs, {stats.mean_gold_count:.1f} gold keys/doc, "
      f"mean gold length {stats.mean_gold_token_length:.2f} tokens, "
      f"mean doc length {stats.mean_doc_length:.0f} tokens")

report = benchmark_corpus(corpus, BenchmarkConfig(k_values=(5, 10, 15), stem=True))

for name, block in report["extractors"].items():
    print(f"\n--- {name} ---")
    for k in report["k_values"]:
        k = str(k)
        print(f"  k={k:>2}: P={block['precision'][k]:.3f} "
              f"R={block['recall'][k]:.3f} F1={block['f1'][k]:.3f}   "
              f"(stemmed F1={block['stemmed']['f1'][k]:.3f})")
    print(f"  duplication rate: {block['duplication_rate']:.3f}")
    print(f"  mean time per doc: {block['mean_time_s'] * 1000:.2f} ms")

print("\nnormalized trade-off axes (0 = worst, 1 = best):")
for axis in ("f1", "duplication", "time"):
    print(f"  {axis:12s} {report['normalized'][axis]}")
