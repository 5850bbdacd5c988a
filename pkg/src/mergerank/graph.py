"""Weighted token co-occurrence graph and personalized PageRank.

The graph has one node per distinct token key and one directed edge per
adjacent ordered key pair, weighted by how often the pair repeats.
Nodes are ranked by personalized PageRank whose teleport distribution
comes from term counts, so frequent (and freshly merged) tokens pull
rank mass toward themselves.

Two interchangeable solvers are provided: a scipy.sparse power iteration
for large graphs and a plain-dict iteration that avoids matrix-building
overhead on the small graphs typical of short documents. Both iterate

    r <- damping * W^T r + damping * (dangling mass) * p + (1 - damping) * p

with W the row-stochastic weighted transition matrix and dangling-node
mass redistributed through the personalization vector p.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .tokenizer import Token

# Below this node count the pure-Python solver is faster than building a
# sparse matrix; above it scipy wins by a wide margin.
_SPARSE_NODE_THRESHOLD = 256


@dataclass(frozen=True)
class PageRankConfig:
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    method: str = "auto"  # auto | sparse | small

    def __post_init__(self):
        if not 0 < self.damping < 1:
            raise ValueError(f"damping must be in (0, 1), got {self.damping}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.method not in ("auto", "sparse", "small"):
            raise ValueError(f"unknown pagerank method {self.method!r}")


@dataclass
class TokenGraph:
    """Directed, weighted co-occurrence graph over token keys.

    nodes maps key -> (first-seen surface, occurrence count in the
    sequence); edges maps (src_key, dst_key) -> positive weight.
    Self-loops from repeated tokens are kept.
    """

    nodes: dict[str, tuple[str, int]] = field(default_factory=dict)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def surface(self, key: str) -> str:
        return self.nodes[key][0]

    def to_edge_list(self) -> str:
        """Debug dump: one `src \\t dst \\t weight` line per edge."""
        return "\n".join(f"{s}\t{d}\t{w}" for (s, d), w in self.edges.items())


@dataclass
class NodeScores:
    """PageRank result: per-key scores summing to 1, plus convergence info.

    Non-convergence is a soft failure: the last iterate is returned with
    converged=False and extraction proceeds.
    """

    scores: dict[str, float]
    converged: bool
    iterations: int

    def __getitem__(self, key: str) -> float:
        return self.scores[key]


def build_graph(tokens: list[Token]) -> TokenGraph:
    """One node per distinct key, one weighted edge per adjacent key pair."""
    graph = TokenGraph()
    nodes = graph.nodes
    for tok in tokens:
        entry = nodes.get(tok.key)
        if entry is None:
            nodes[tok.key] = (tok.surface, 1)
        else:
            nodes[tok.key] = (entry[0], entry[1] + 1)
    keys = [t.key for t in tokens]
    graph.edges = dict(Counter(zip(keys, keys[1:])))
    return graph


def personalization_from_counts(
    counts: dict[str, float], graph: TokenGraph
) -> dict[str, float]:
    """Normalize term counts over the graph's nodes into a teleport vector.

    Falls back to uniform when every count is zero.
    """
    missing = [k for k in graph.nodes if k not in counts]
    if missing:
        raise ValueError(f"graph nodes missing from counts: {missing[:5]}")
    total = 0.0
    for key in graph.nodes:
        total += counts[key]
    if total <= 0:
        uniform = 1.0 / graph.node_count if graph.node_count else 0.0
        return {key: uniform for key in graph.nodes}
    return {key: counts[key] / total for key in graph.nodes}


def personalized_pagerank(
    graph: TokenGraph,
    personalization: dict[str, float],
    cfg: PageRankConfig = PageRankConfig(),
) -> NodeScores:
    """Rank graph nodes by personalized PageRank.

    Iterates until the L1 change drops below cfg.tolerance or
    cfg.max_iterations is reached; the result is normalized to sum 1.
    """
    if graph.node_count == 0:
        raise ValueError("personalized_pagerank requires a non-empty graph")
    method = cfg.method
    if method == "auto":
        method = "small" if graph.node_count <= _SPARSE_NODE_THRESHOLD else "sparse"
    if method == "sparse":
        return _pagerank_sparse(graph, personalization, cfg)
    return _pagerank_small(graph, personalization, cfg)


def _pagerank_small(
    graph: TokenGraph, personalization: dict[str, float], cfg: PageRankConfig
) -> NodeScores:
    """Dict-based power iteration; fastest for small graphs."""
    keys = list(graph.nodes)
    n = len(keys)
    index = {k: i for i, k in enumerate(keys)}
    p = [personalization.get(k, 0.0) for k in keys]

    out_weight = [0.0] * n
    for (src, _), w in graph.edges.items():
        out_weight[index[src]] += w
    # transitions[i] holds (j, weight / out_weight_i) for each edge i -> j
    transitions: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (src, dst), w in graph.edges.items():
        i = index[src]
        transitions[i].append((index[dst], w / out_weight[i]))
    dangling = [i for i in range(n) if out_weight[i] == 0.0]

    damping = cfg.damping
    teleport = [(1.0 - damping) * pi for pi in p]
    rank = list(p) if sum(p) > 0 else [1.0 / n] * n
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        dangling_mass = sum(rank[i] for i in dangling)
        base = damping * dangling_mass
        new_rank = [teleport[i] + base * p[i] for i in range(n)]
        for i, outs in enumerate(transitions):
            if outs:
                ri = damping * rank[i]
                for j, frac in outs:
                    new_rank[j] += ri * frac
        delta = sum(abs(new_rank[i] - rank[i]) for i in range(n))
        rank = new_rank
        if delta < cfg.tolerance:
            converged = True
            break
    total = sum(rank)
    if total > 0:
        rank = [r / total for r in rank]
    return NodeScores(
        scores={k: rank[i] for i, k in enumerate(keys)},
        converged=converged,
        iterations=iterations,
    )


def _pagerank_sparse(
    graph: TokenGraph, personalization: dict[str, float], cfg: PageRankConfig
) -> NodeScores:
    """scipy.sparse power iteration for larger graphs."""
    import numpy as np
    from scipy.sparse import csr_matrix

    keys = list(graph.nodes)
    n = len(keys)
    index = {k: i for i, k in enumerate(keys)}
    p = np.array([personalization.get(k, 0.0) for k in keys], dtype=np.float64)

    m = len(graph.edges)
    rows = np.empty(m, dtype=np.int64)
    cols = np.empty(m, dtype=np.int64)
    data = np.empty(m, dtype=np.float64)
    for e, ((src, dst), w) in enumerate(graph.edges.items()):
        rows[e] = index[src]
        cols[e] = index[dst]
        data[e] = w
    out_weight = np.zeros(n, dtype=np.float64)
    np.add.at(out_weight, rows, data)
    dangling = out_weight == 0.0
    nonzero = out_weight[rows]
    data = data / nonzero
    # Column-stochastic orientation: transposed transition matrix, so one
    # matvec per iteration pushes rank along edges.
    wt = csr_matrix((data, (cols, rows)), shape=(n, n))

    damping = cfg.damping
    teleport = (1.0 - damping) * p
    rank = p.copy() if p.sum() > 0 else np.full(n, 1.0 / n)
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        dangling_mass = rank[dangling].sum()
        new_rank = damping * (wt @ rank) + damping * dangling_mass * p + teleport
        delta = np.abs(new_rank - rank).sum()
        rank = new_rank
        if delta < cfg.tolerance:
            converged = True
            break
    total = rank.sum()
    if total > 0:
        rank = rank / total
    return NodeScores(
        scores={k: float(rank[i]) for i, k in enumerate(keys)},
        converged=converged,
        iterations=iterations,
    )
