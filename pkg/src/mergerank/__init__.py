"""mergerank: unsupervised keyphrase extraction built for throughput.

Adjacent tokens that form strong collocations are merged at the sequence
level, the resulting token stream becomes a weighted co-occurrence
graph, and personalized PageRank (teleporting by term counts) ranks the
nodes; scores are length-weighted so multi-word phrases surface.
"""

from .extractor import ExtractConfig, Keyphrase, dedup_case, extract, score_tokens
from .graph import (
    NodeScores,
    PageRankConfig,
    TokenGraph,
    build_graph,
    personalization_from_counts,
    personalized_pagerank,
)
from .merger import BigramIndex, MergeConfig, index_bigrams, merge_tokens, mscore
from .tokenizer import (
    RawDocument,
    StopwordList,
    Token,
    TokenizerConfig,
    count_terms,
    default_stopwords,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "BigramIndex",
    "ExtractConfig",
    "Keyphrase",
    "MergeConfig",
    "NodeScores",
    "PageRankConfig",
    "RawDocument",
    "StopwordList",
    "Token",
    "TokenGraph",
    "TokenizerConfig",
    "build_graph",
    "count_terms",
    "dedup_case",
    "default_stopwords",
    "extract",
    "index_bigrams",
    "merge_tokens",
    "mscore",
    "personalization_from_counts",
    "personalized_pagerank",
    "score_tokens",
    "tokenize",
    "__version__",
]
