"""Retrieval, duplication, timing and trade-off metrics, plus the
term-frequency baseline and the corpus benchmark harness.

Retrieval follows the standard top-k protocol: Precision@k is
|Gold ∩ k-predicted| / k, Recall@k is |Gold ∩ k-predicted| / |Gold|, and
F1@k is their harmonic mean, macro-averaged across documents. Phrase
matching always case-folds and collapses whitespace; a suffix-stripping
stemmer can be enabled on top, in which case both plain and stemmed
figures are reported.

The duplication rate measures token repetition across a prediction set:
every token part of every predicted phrase is checked against the parts
of the *other* predicted phrases, and the final score is
#duplicates / (#non_duplicates + 1), clamped to [0, 1].
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import tempfile
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .extractor import ExtractConfig, Keyphrase, extract
from .stemming import stem_phrase
from .tokenizer import RawDocument, StopwordList, TokenizerConfig, tokenize

logger = logging.getLogger(__name__)

EXTRACTOR_ENGINE = "engine"
EXTRACTOR_TFREQ = "tfreq"


@dataclass(frozen=True)
class MatchConfig:
    """Gold-matching normalization; stemming is opt-in."""

    stem: bool = False


def _phrase_text(item) -> str:
    return item.phrase if isinstance(item, Keyphrase) else str(item)


def normalize_phrase(phrase: str, matching: MatchConfig = MatchConfig()) -> str:
    norm = " ".join(phrase.casefold().split())
    if matching.stem:
        norm = stem_phrase(norm)
    return norm


def match_phrases(predicted, gold, k: int, matching: MatchConfig = MatchConfig()) -> int:
    """Number of gold phrases matched by the top-k predictions.

    Each gold phrase is matched at most once.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    top = {normalize_phrase(_phrase_text(p), matching) for p in list(predicted)[:k]}
    return sum(1 for g in set(gold) if normalize_phrase(g, matching) in top)


def precision_at_k(predicted, gold, k: int, matching: MatchConfig = MatchConfig()) -> float:
    return match_phrases(predicted, gold, k, matching) / k


def recall_at_k(predicted, gold, k: int, matching: MatchConfig = MatchConfig()) -> float:
    gold = set(gold)
    if not gold:
        raise ValueError("recall undefined for an empty gold set")
    return match_phrases(predicted, gold, k, matching) / len(gold)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def f1_at_k(predicted, gold, k: int, matching: MatchConfig = MatchConfig()) -> float:
    p = precision_at_k(predicted, gold, k, matching)
    r = recall_at_k(predicted, gold, k, matching)
    return f1_score(p, r)


def macro_average(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def duplication_rate(predicted) -> float:
    """Token repetition across a prediction set, in [0, 1].

    A part counts as a duplicate when it also occurs among the parts of
    any other predicted phrase (case-folded); reordering the predictions
    does not change the result, and a singleton set scores 0.
    """
    parts_per_phrase = [_phrase_text(p).casefold().split() for p in predicted]
    total: Counter[str] = Counter()
    for parts in parts_per_phrase:
        total.update(parts)
    duplicates = 0
    non_duplicates = 0
    for parts in parts_per_phrase:
        own = Counter(parts)
        for part in parts:
            if total[part] - own[part] > 0:
                duplicates += 1
            else:
                non_duplicates += 1
    return min(1.0, duplicates / (non_duplicates + 1))


@dataclass(frozen=True)
class NormalizedAxis:
    """Min-max normalized scores across compared extractors: worst 0, best 1.

    degenerate marks the all-equal case, where every extractor gets 0.5.
    """

    scores: dict[str, float]
    degenerate: bool = False


def normalize_scores(values: dict[str, float], orientation: str) -> NormalizedAxis:
    """Affine-normalize one comparison axis across >= 2 extractors.

    orientation "higher-better" maps (v - min)/(max - min); "lower-better"
    flips the axis so the fastest / least-duplicating extractor scores 1.
    """
    if orientation not in ("higher-better", "lower-better"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if len(values) < 2:
        raise ValueError("normalization needs at least two extractors")
    if not all(math.isfinite(v) for v in values.values()):
        raise ValueError("normalization requires finite values")
    vmin = min(values.values())
    vmax = max(values.values())
    if vmax == vmin:
        return NormalizedAxis({name: 0.5 for name in values}, degenerate=True)
    span = vmax - vmin
    if orientation == "higher-better":
        return NormalizedAxis({name: (v - vmin) / span for name, v in values.items()})
    return NormalizedAxis({name: (vmax - v) / span for name, v in values.items()})


# Unigram term-frequency baseline keeps single-character tokens: it ranks
# raw unigrams, so only stopword filtering applies.
_TFREQ_TOKENIZER = TokenizerConfig(min_chars=1)


def tfreq_baseline(
    doc: RawDocument,
    stopwords: StopwordList,
    k: int,
    tokenizer_cfg: TokenizerConfig = _TFREQ_TOKENIZER,
) -> list[Keyphrase]:
    """Top-k unigrams by raw term frequency, ties broken lexicographically."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    counts = Counter(t.key for t in tokenize(doc, stopwords, tokenizer_cfg))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [Keyphrase(term, float(n)) for term, n in ranked[:k]]


# ---------------------------------------------------------------------------
# Benchmark harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkConfig:
    k_values: tuple[int, ...] = (5, 10, 15)
    stem: bool = False
    workers: int = 1
    extract: ExtractConfig = field(default_factory=ExtractConfig)
    duplication_k: int = 10

    def __post_init__(self):
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ValueError(f"k_values must be positive, got {self.k_values}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


_WORKER_STATE: dict = {}


def _init_worker(extract_cfg: ExtractConfig, prediction_k: int) -> None:
    _WORKER_STATE["extract_cfg"] = extract_cfg
    _WORKER_STATE["stopwords"] = extract_cfg.resolved_stopwords()
    _WORKER_STATE["prediction_k"] = prediction_k


def _run_both_extractors(task: tuple[str, str]):
    """Run engine and baseline on one document, timing extraction only."""
    doc_id, body = task
    doc = RawDocument(doc_id, body)
    cfg: ExtractConfig = _WORKER_STATE["extract_cfg"]
    stopwords: StopwordList = _WORKER_STATE["stopwords"]
    k = _WORKER_STATE["prediction_k"]

    start = time.perf_counter()
    engine = extract(doc, cfg)
    engine_time = time.perf_counter() - start

    start = time.perf_counter()
    tfreq = tfreq_baseline(doc, stopwords, k)
    tfreq_time = time.perf_counter() - start

    return (
        doc_id,
        [(p.phrase, p.score) for p in engine],
        engine_time,
        [(p.phrase, p.score) for p in tfreq],
        tfreq_time,
    )


def _metric_block(per_doc_predictions, golds, k_values, matching: MatchConfig) -> dict:
    block: dict = {"precision": {}, "recall": {}, "f1": {}}
    for k in k_values:
        precisions, recalls, f1s = [], [], []
        for preds, gold in zip(per_doc_predictions, golds):
            p = precision_at_k(preds, gold, k, matching)
            r = recall_at_k(preds, gold, k, matching)
            precisions.append(p)
            recalls.append(r)
            f1s.append(f1_score(p, r))
        block["precision"][str(k)] = macro_average(precisions)
        block["recall"][str(k)] = macro_average(recalls)
        block["f1"][str(k)] = macro_average(f1s)
    return block


def benchmark_corpus(corpus, cfg: BenchmarkConfig = BenchmarkConfig()) -> dict:
    """Evaluate the engine and the TFreq baseline on one corpus.

    Documents with empty gold sets are excluded from macro averages (a
    warning is logged per document). Results are aggregated in corpus
    order, so reports are deterministic for any worker count apart from
    the timing fields.
    """
    k_values = tuple(cfg.k_values)
    prediction_k = max(max(k_values), cfg.duplication_k)
    extract_cfg = replace(
        cfg.extract,
        top_k=prediction_k,
        stopwords=cfg.extract.resolved_stopwords(),
    )

    tasks = [(doc.id, doc.body) for doc, _ in corpus.records]
    if cfg.workers == 1:
        _init_worker(extract_cfg, prediction_k)
        results = [_run_both_extractors(task) for task in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=cfg.workers,
            initializer=_init_worker,
            initargs=(extract_cfg, prediction_k),
        ) as pool:
            chunk = max(1, len(tasks) // (cfg.workers * 4))
            results = list(pool.map(_run_both_extractors, tasks, chunksize=chunk))

    skipped: list[str] = []
    golds: list[set[str]] = []
    engine_preds: list[list[str]] = []
    tfreq_preds: list[list[str]] = []
    engine_times: list[float] = []
    tfreq_times: list[float] = []
    for (doc, gold), (doc_id, engine, t_engine, tfreq, t_tfreq) in zip(corpus.records, results):
        if not gold:
            logger.warning("document %s has an empty gold set; excluded from macro averages", doc_id)
            skipped.append(doc_id)
            continue
        golds.append(set(gold))
        engine_preds.append([p for p, _ in engine])
        tfreq_preds.append([p for p, _ in tfreq])
        engine_times.append(t_engine)
        tfreq_times.append(t_tfreq)

    plain = MatchConfig(stem=False)
    extractors: dict[str, dict] = {}
    for name, preds, times in (
        (EXTRACTOR_ENGINE, engine_preds, engine_times),
        (EXTRACTOR_TFREQ, tfreq_preds, tfreq_times),
    ):
        block = _metric_block(preds, golds, k_values, plain)
        block["duplication_rate"] = macro_average(
            duplication_rate(p[: cfg.duplication_k]) for p in preds
        )
        block["mean_time_s"] = macro_average(times)
        if cfg.stem:
            block["stemmed"] = _metric_block(preds, golds, k_values, MatchConfig(stem=True))
        extractors[name] = block

    f1_k = str(10 if 10 in k_values else k_values[0])
    axes = {
        "f1": normalize_scores(
            {name: block["f1"][f1_k] for name, block in extractors.items()},
            "higher-better",
        ),
        "duplication": normalize_scores(
            {name: block["duplication_rate"] for name, block in extractors.items()},
            "lower-better",
        ),
        "time": normalize_scores(
            {name: block["mean_time_s"] for name, block in extractors.items()},
            "lower-better",
        ),
    }
    normalized = {name: axis.scores for name, axis in axes.items()}
    normalized["degenerate_axes"] = sorted(name for name, axis in axes.items() if axis.degenerate)

    return {
        "dataset": corpus.name,
        "doc_count": len(corpus.records),
        "evaluated_doc_count": len(golds),
        "skipped_empty_gold": skipped,
        "k_values": list(k_values),
        "matching": {"stemmed": cfg.stem},
        "extractors": extractors,
        "normalized": normalized,
    }


def report_to_csv(report: dict) -> str:
    """Flatten a benchmark report into one CSV row per extractor."""
    k_values = report["k_values"]
    columns = ["dataset", "extractor"]
    for k in k_values:
        columns += [f"precision@{k}", f"recall@{k}", f"f1@{k}"]
    stemmed = report["matching"]["stemmed"]
    if stemmed:
        for k in k_values:
            columns += [f"stem_precision@{k}", f"stem_recall@{k}", f"stem_f1@{k}"]
    columns += ["duplication_rate", "mean_time_s", "norm_f1", "norm_duplication", "norm_time"]

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for name, block in report["extractors"].items():
        row: list = [report["dataset"], name]
        for k in k_values:
            row += [block["precision"][str(k)], block["recall"][str(k)], block["f1"][str(k)]]
        if stemmed:
            for k in k_values:
                stem_block = block["stemmed"]
                row += [
                    stem_block["precision"][str(k)],
                    stem_block["recall"][str(k)],
                    stem_block["f1"][str(k)],
                ]
        row += [
            block["duplication_rate"],
            block["mean_time_s"],
            report["normalized"]["f1"][name],
            report["normalized"]["duplication"][name],
            report["normalized"]["time"][name],
        ]
        writer.writerow(row)
    return buf.getvalue()


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
