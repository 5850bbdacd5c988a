"""Benchmark corpus loading in the docsutf8/keys layout.

A corpus root contains `docsutf8/<stem>.txt` (UTF-8 document bodies) and
`keys/<stem>.key` (one gold keyphrase per line). Records are paired by
file stem and sorted by stem, so loading is deterministic. A small
hand-written sample corpus ships with the package so tests and demos run
without downloads; full benchmark collections are fetched by the user
(see scripts/fetch_datasets.py) and never vendored.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .tokenizer import RawDocument, StopwordList, TokenizerConfig, tokenize

logger = logging.getLogger(__name__)

DOCS_DIR = "docsutf8"
KEYS_DIR = "keys"

# Doc length in Table-style corpus stats counts raw tokens: no stopword
# filtering, single-character tokens kept.
_STATS_TOKENIZER = TokenizerConfig(min_chars=1)
_NO_STOPWORDS = StopwordList()


@dataclass
class Corpus:
    name: str
    records: list[tuple[RawDocument, frozenset[str]]] = field(default_factory=list)
    missing_keys: tuple[str, ...] = ()


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    mean_gold_count: float
    mean_gold_token_length: float
    mean_doc_length: float


def read_gold_keys(path: Path) -> frozenset[str]:
    """Gold keyphrases, one per line; blank lines ignored, whitespace stripped."""
    keys = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            keys.add(line)
    return frozenset(keys)


def load_corpus(root: str | Path, name: str | None = None) -> Corpus:
    """Load a docsutf8/keys corpus, pairing records by file stem.

    Documents without a matching key file are flagged in missing_keys and
    excluded from the records (they cannot be evaluated). Decode failures
    raise with the offending file named.
    """
    root = Path(root)
    docs_dir = root / DOCS_DIR
    keys_dir = root / KEYS_DIR
    if not docs_dir.is_dir():
        raise FileNotFoundError(f"corpus root {root} has no {DOCS_DIR}/ directory")
    records = []
    missing = []
    for doc_path in sorted(docs_dir.glob("*.txt"), key=lambda p: p.stem):
        key_path = keys_dir / (doc_path.stem + ".key")
        if not key_path.is_file():
            logger.warning("no key file for %s; record excluded", doc_path.name)
            missing.append(doc_path.stem)
            continue
        try:
            body = doc_path.read_text(encoding="utf-8")
            gold = read_gold_keys(key_path)
        except UnicodeDecodeError as err:
            raise UnicodeDecodeError(
                err.encoding, err.object, err.start, err.end,
                f"{err.reason} (while reading {doc_path.name})",
            ) from None
        if not gold:
            logger.warning("empty gold set for %s", doc_path.name)
        records.append((RawDocument(id=doc_path.stem, body=body), gold))
    return Corpus(name=name or root.name, records=records, missing_keys=tuple(missing))


def save_corpus(corpus: Corpus, root: str | Path) -> None:
    """Write a corpus back to the docsutf8/keys layout (round-trips load_corpus)."""
    root = Path(root)
    (root / DOCS_DIR).mkdir(parents=True, exist_ok=True)
    (root / KEYS_DIR).mkdir(parents=True, exist_ok=True)
    for doc, gold in corpus.records:
        (root / DOCS_DIR / f"{doc.id}.txt").write_text(doc.body, encoding="utf-8")
        (root / KEYS_DIR / f"{doc.id}.key").write_text(
            "\n".join(sorted(gold)) + ("\n" if gold else ""), encoding="utf-8"
        )


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Document count plus mean gold-set size, gold phrase token length and
    document token length."""
    if not corpus.records:
        return CorpusStats(0, 0.0, 0.0, 0.0)
    gold_counts = []
    gold_token_lengths = []
    doc_lengths = []
    for doc, gold in corpus.records:
        gold_counts.append(len(gold))
        gold_token_lengths.extend(len(phrase.split()) for phrase in gold)
        doc_lengths.append(len(tokenize(doc, _NO_STOPWORDS, _STATS_TOKENIZER)))
    mean_gold_tokens = (
        sum(gold_token_lengths) / len(gold_token_lengths) if gold_token_lengths else 0.0
    )
    return CorpusStats(
        doc_count=len(corpus.records),
        mean_gold_count=sum(gold_counts) / len(gold_counts),
        mean_gold_token_length=mean_gold_tokens,
        mean_doc_length=sum(doc_lengths) / len(doc_lengths),
    )


def sample_corpus_root() -> Path:
    """Filesystem path of the bundled 20-document sample corpus."""
    return Path(str(resources.files("mergerank").joinpath("data/sample_corpus")))


def load_manifest(path: str | Path | None = None) -> dict:
    """Corpus manifest: dataset name -> {"root": local path, ...}.

    The bundled manifest lists the sample corpus and the standard
    benchmark collections the fetch script can download.
    """
    if path is None:
        text = resources.files("mergerank").joinpath("data/datasets_manifest.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def stream_documents(path: str | Path, fmt: str = "lines"):
    """Stream (id, text) pairs from a user-supplied corpus file.

    fmt "lines": one document per line (blank lines skipped).
    fmt "medal": CSV with a TEXT column (header located case-insensitively),
    as used by large biomedical abstract dumps.
    """
    path = Path(path)
    if fmt == "lines":
        with path.open("r", encoding="utf-8") as fh:
            for i, line in enumerate(fh):
                line = line.strip()
                if line:
                    yield (str(i), line)
    elif fmt == "medal":
        with path.open("r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                return
            lowered = [col.strip().casefold() for col in header]
            try:
                text_col = lowered.index("text")
            except ValueError:
                raise ValueError(f"{path.name}: no TEXT column in header {header!r}") from None
            for i, row in enumerate(reader):
                if len(row) > text_col and row[text_col].strip():
                    yield (str(i), row[text_col].strip())
    else:
        raise ValueError(f"unknown stream format {fmt!r}")
