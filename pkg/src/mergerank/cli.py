"""Command-line entry point: extract, benchmark and scale subcommands.

Exit codes: 0 on success, 1 on I/O or decode errors (the message names
the offending file), 2 on invalid flags (argparse's convention).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .datasets import load_corpus, stream_documents
from .evaluation import BenchmarkConfig, benchmark_corpus, report_to_csv, write_text_atomic
from .extractor import ExtractConfig, extract, format_score, to_json_record, to_tsv_lines
from .merger import MergeConfig
from .tokenizer import RawDocument, StopwordList, default_stopwords

STOPWORDS_ENV = "RAKUN_STOPWORDS"

_SCALE_BATCH_SIZE = 500


def _resolve_stopwords(path: str | None) -> StopwordList:
    """--stopwords flag, then the RAKUN_STOPWORDS env var, then the bundled list."""
    if path is None:
        path = os.environ.get(STOPWORDS_ENV) or None
    if path is None:
        return default_stopwords()
    return StopwordList.from_file(path)


def _extract_config(args) -> ExtractConfig:
    return ExtractConfig(
        top_k=args.top_k,
        merge=MergeConfig(merge_threshold=args.merge_threshold),
        stopwords=_resolve_stopwords(args.stopwords),
        length_unit=args.length_unit,
    )


def _stopword_error(err: OSError) -> int:
    print(f"error: cannot read stopwords file {err.filename}: {err.strerror}", file=sys.stderr)
    return 1


def run_extract(args) -> int:
    try:
        cfg = _extract_config(args)
    except OSError as err:
        return _stopword_error(err)
    if args.paths:
        docs = []
        for path in args.paths:
            path = Path(path)
            try:
                docs.append(RawDocument.from_bytes(path.stem, path.read_bytes()))
            except OSError as err:
                print(f"error: cannot read {path}: {err.strerror}", file=sys.stderr)
                return 1
            except UnicodeDecodeError as err:
                print(
                    f"error: {path} is not valid UTF-8 at byte {err.start}: {err.reason}",
                    file=sys.stderr,
                )
                return 1
        for doc in docs:
            _emit(doc.id, extract(doc, cfg), args.format)
    else:
        try:
            body = sys.stdin.buffer.read().decode("utf-8")
        except UnicodeDecodeError as err:
            print(f"error: stdin is not valid UTF-8 at byte {err.start}: {err.reason}", file=sys.stderr)
            return 1
        doc = RawDocument("-", body)
        keyphrases = extract(doc, cfg)
        if keyphrases or args.format == "json":
            _emit(doc.id, keyphrases, args.format)
    return 0


def _emit(doc_id: str, keyphrases, fmt: str) -> None:
    if fmt == "json":
        print(to_json_record(doc_id, keyphrases))
    else:
        for line in to_tsv_lines(doc_id, keyphrases):
            print(line)


def run_benchmark(args) -> int:
    try:
        corpus = load_corpus(args.corpus_root)
    except (OSError, UnicodeDecodeError) as err:
        print(f"error: cannot load corpus {args.corpus_root}: {err}", file=sys.stderr)
        return 1
    try:
        stopwords = _resolve_stopwords(args.stopwords)
    except OSError as err:
        return _stopword_error(err)
    cfg = BenchmarkConfig(
        k_values=tuple(args.k),
        stem=args.stem,
        workers=args.workers,
        extract=ExtractConfig(
            merge=MergeConfig(merge_threshold=args.merge_threshold),
            stopwords=stopwords,
        ),
    )
    report = benchmark_corpus(corpus, cfg)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.report:
        report_path = Path(args.report)
        write_text_atomic(report_path, text + "\n")
        csv_path = report_path.with_suffix(".csv") if report_path.suffix else Path(str(report_path) + ".csv")
        write_text_atomic(csv_path, report_to_csv(report))
        print(f"report written to {report_path} and {csv_path}", file=sys.stderr)
    else:
        print(text)
    return 0


# -- scale: streaming corpus-level aggregation ------------------------------

_SCALE_STATE: dict = {}


def _init_scale_worker(cfg: ExtractConfig, aggregate: str) -> None:
    _SCALE_STATE["cfg"] = cfg
    _SCALE_STATE["aggregate"] = aggregate


def _scale_batch(batch: list[str]) -> tuple[int, dict[str, float]]:
    """Extract one batch of documents, returning a local phrase table."""
    cfg: ExtractConfig = _SCALE_STATE["cfg"]
    by_count = _SCALE_STATE["aggregate"] == "count"
    table: dict[str, float] = {}
    for body in batch:
        for kp in extract(RawDocument("", body), cfg):
            key = kp.phrase.casefold()
            table[key] = table.get(key, 0.0) + (1.0 if by_count else kp.score)
    return len(batch), table


def _merge_table(table: dict[str, float], part: dict[str, float]) -> None:
    for phrase, value in part.items():
        table[phrase] = table.get(phrase, 0.0) + value


def run_scale(args) -> int:
    try:
        cfg = _extract_config(args)
    except OSError as err:
        return _stopword_error(err)
    start = time.perf_counter()
    table: dict[str, float] = {}
    n_docs = 0
    try:
        stream = stream_documents(args.input, fmt=args.input_format)
        batches = _iter_batches((text for _, text in stream), _SCALE_BATCH_SIZE)
        if args.workers == 1:
            _init_scale_worker(cfg, args.aggregate)
            for batch in batches:
                n, part = _scale_batch(batch)
                n_docs += n
                _merge_table(table, part)
        else:
            # Keep a bounded window of futures in flight so memory stays
            # flat regardless of input length.
            with ProcessPoolExecutor(
                max_workers=args.workers,
                initializer=_init_scale_worker,
                initargs=(cfg, args.aggregate),
            ) as pool:
                window: deque = deque()
                for batch in batches:
                    while len(window) >= args.workers * 2:
                        n, part = window.popleft().result()
                        n_docs += n
                        _merge_table(table, part)
                    window.append(pool.submit(_scale_batch, batch))
                while window:
                    n, part = window.popleft().result()
                    n_docs += n
                    _merge_table(table, part)
    except OSError as err:
        print(f"error: cannot read {args.input}: {err.strerror}", file=sys.stderr)
        return 1
    except UnicodeDecodeError as err:
        print(f"error: {args.input} is not valid UTF-8 at byte {err.start}: {err.reason}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - start
    top = sorted(table.items(), key=lambda kv: (-kv[1], kv[0]))[: args.global_top]
    for phrase, value in top:
        print(f"{phrase}\t{format_score(value)}")
    print(f"# documents: {n_docs}  elapsed_s: {elapsed:.3f}", file=sys.stderr)
    return 0


def _iter_batches(texts, batch_size: int):
    batch: list[str] = []
    for text in texts:
        batch.append(text)
        if len(batch) >= batch_size:
            yield batch
            batch = []
    if batch:
        yield batch


def _k_list(value: str) -> list[int]:
    try:
        ks = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k list {value!r}") from None
    if not ks or any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError(f"k values must be positive integers, got {value!r}")
    return ks


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _nonnegative_float(value: str) -> float:
    x = float(value)
    if x < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {value}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mergerank",
        description="Keyphrase extraction via sequence-level token merging and personalized PageRank.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_extract_flags(p):
        p.add_argument("--top-k", type=_positive_int, default=10)
        p.add_argument("--merge-threshold", type=_nonnegative_float, default=1.0)
        p.add_argument("--stopwords", metavar="FILE", default=None,
                       help=f"stopword file (fallback: ${STOPWORDS_ENV}, then the bundled list)")
        p.add_argument("--length-unit", choices=("chars", "words"), default="chars")

    p_extract = sub.add_parser("extract", help="extract keyphrases from files or stdin")
    p_extract.add_argument("paths", nargs="*", help="input text files; stdin when omitted")
    add_extract_flags(p_extract)
    p_extract.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_extract.set_defaults(func=run_extract)

    p_bench = sub.add_parser("benchmark", help="run the retrieval benchmark on a corpus")
    p_bench.add_argument("corpus_root", help="corpus root with docsutf8/ and keys/")
    p_bench.add_argument("--k", type=_k_list, default=[5, 10, 15], help="comma-separated k values")
    p_bench.add_argument("--stem", action="store_true", help="also report stemmed matching")
    p_bench.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    p_bench.add_argument("--report", metavar="PATH", default=None,
                         help="write JSON (and CSV) report here instead of stdout")
    p_bench.add_argument("--merge-threshold", type=_nonnegative_float, default=1.0)
    p_bench.add_argument("--stopwords", metavar="FILE", default=None)
    p_bench.set_defaults(func=run_benchmark)

    p_scale = sub.add_parser("scale", help="stream a line-delimited corpus and aggregate top phrases")
    p_scale.add_argument("input", help="input file, one document per line")
    add_extract_flags(p_scale)
    p_scale.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    p_scale.add_argument("--global-top", type=_positive_int, default=10)
    p_scale.add_argument("--aggregate", choices=("sum", "count"), default="sum",
                         help="aggregate per-document scores by sum, or count appearances")
    p_scale.add_argument("--input-format", choices=("lines", "medal"), default="lines")
    p_scale.set_defaults(func=run_scale)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
