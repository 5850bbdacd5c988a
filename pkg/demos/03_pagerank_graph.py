"""From token sequence to ranked graph nodes.

Builds the weighted co-occurrence graph for a small document, prints its
edge list, and runs personalized PageRank with term-count teleporting,
then shows how length weighting turns node ranks into phrase scores.

    python demos/03_pagerank_graph.py
"""

from mergerank import (
    MergeConfig,
    RawDocument,
    build_graph,
    count_terms,
    index_bigrams,
    merge_tokens,
    personalization_from_counts,
    personalized_pagerank,
    score_tokens,
    tokenize,
)
from mergerank.tokenizer import StopwordList

text = ("solar panels feed the grid and solar panels track the sun "
        "while the grid balances the load")
tokens = tokenize(RawDocument("demo", text), StopwordList.from_words(["the", "and", "while"]))
counts = count_terms(tokens)
tokens, counts = merge_tokens(tokens, counts, index_bigrams(tokens), MergeConfig())

graph = build_graph(tokens)
print(f"graph: {graph.node_count} nodes, {graph.edge_count} edges")
print("edge list (src \\t dst \\t weight):")
print(graph.to_edge_list())

personalization = personalization_from_counts(counts, graph)
ranks = personalized_pagerank(graph, personalization)
print(f"\nconverged: {ranks.converged} after {ranks.iterations} iterations")
print(f"rank mass: {sum(ranks.scores.values()):.12f}")

scores = score_tokens(ranks, graph)
print("\nnode                  teleport   rank     x len -> score")
for key in sorted(scores, key=scores.get, reverse=True):
    print(f"{graph.surface(key):20s}  {personalization[key]:.4f}   {ranks.scores[key]:.4f} "
          f"x {len(graph.surface(key)):3d} -> {scores[key]:.4f}")
