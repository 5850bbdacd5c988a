import os

import pytest

from mergerank.datasets import (
    Corpus,
    corpus_stats,
    load_corpus,
    load_manifest,
    sample_corpus_root,
    save_corpus,
    stream_documents,
)
from mergerank.tokenizer import RawDocument


def make_layout(root, docs):
    (root / "docsutf8").mkdir(exist_ok=True)
    (root / "keys").mkdir(exist_ok=True)
    for stem, (body, keys) in docs.items():
        (root / "docsutf8" / f"{stem}.txt").write_text(body, encoding="utf-8")
        if keys is not None:
            (root / "keys" / f"{stem}.key").write_text("\n".join(keys) + "\n", encoding="utf-8")


def test_empty_directories(tmp_path):
    make_layout(tmp_path, {})
    corpus = load_corpus(tmp_path)
    assert corpus.records == []


def test_records_in_stem_order(tmp_path):
    make_layout(tmp_path, {
        "b_doc": ("beta text", ["beta"]),
        "a_doc": ("alpha text", ["alpha"]),
    })
    corpus = load_corpus(tmp_path)
    assert [doc.id for doc, _ in corpus.records] == ["a_doc", "b_doc"]
    assert corpus.records[0][1] == frozenset({"alpha"})


def test_missing_key_file_flagged(tmp_path):
    make_layout(tmp_path, {
        "kept": ("text one", ["one"]),
        "orphan": ("text two", None),
    })
    corpus = load_corpus(tmp_path)
    assert [doc.id for doc, _ in corpus.records] == ["kept"]
    assert corpus.missing_keys == ("orphan",)


def test_missing_root_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "nope")


def test_decode_error_names_file(tmp_path):
    make_layout(tmp_path, {"ok": ("fine", ["k"])})
    (tmp_path / "docsutf8" / "bad.txt").write_bytes(b"\xff\xfe broken")
    (tmp_path / "keys" / "bad.key").write_text("k\n", encoding="utf-8")
    with pytest.raises(UnicodeDecodeError) as err:
        load_corpus(tmp_path)
    assert "bad.txt" in str(err.value)


def test_blank_lines_and_whitespace_in_keys(tmp_path):
    make_layout(tmp_path, {"d": ("body", [])})
    (tmp_path / "keys" / "d.key").write_text("  alpha beta  \n\n gamma\n", encoding="utf-8")
    corpus = load_corpus(tmp_path)
    assert corpus.records[0][1] == frozenset({"alpha beta", "gamma"})


def test_bundled_sample_corpus(sample_corpus):
    stats = corpus_stats(sample_corpus)
    assert stats.doc_count == 20
    assert stats.mean_gold_count > 0
    assert 1.0 <= stats.mean_gold_token_length <= 3.0
    assert stats.mean_doc_length > 50


def test_stats_example():
    doc = RawDocument("d", "one two three four five six seven eight nine ten")
    corpus = Corpus("tiny", [(doc, frozenset({"single", "three token phrase"}))])
    stats = corpus_stats(corpus)
    assert stats.doc_count == 1
    assert stats.mean_gold_count == 2
    assert stats.mean_gold_token_length == 2.0
    assert stats.mean_doc_length == 10


def test_stats_empty_corpus():
    stats = corpus_stats(Corpus("empty", []))
    assert stats == corpus_stats(Corpus("empty2", []))
    assert stats.doc_count == 0 and stats.mean_doc_length == 0.0


def test_round_trip(tmp_path, sample_corpus):
    save_corpus(sample_corpus, tmp_path)
    reloaded = load_corpus(tmp_path, name="sample")
    assert [(d.id, d.body, g) for d, g in reloaded.records] == [
        (d.id, d.body, g) for d, g in sample_corpus.records
    ]


def test_load_is_deterministic(sample_corpus):
    again = load_corpus(sample_corpus_root(), name="sample")
    assert [(d.id, d.body) for d, _ in again.records] == [
        (d.id, d.body) for d, _ in sample_corpus.records
    ]


def test_manifest():
    manifest = load_manifest()
    assert manifest["sample"]["bundled"] is True
    assert "Inspec" in manifest
    assert manifest["Inspec"]["root"].endswith("Inspec")


def test_stream_lines(tmp_path):
    path = tmp_path / "docs.txt"
    path.write_text("first doc\n\nsecond doc\nthird doc\n", encoding="utf-8")
    docs = list(stream_documents(path))
    assert [text for _, text in docs] == ["first doc", "second doc", "third doc"]


def test_stream_medal_csv(tmp_path):
    path = tmp_path / "medal.csv"
    path.write_text(
        'ABSTRACT_ID,TEXT,LOCATION\n'
        '1,"growth hormone was investigated",4\n'
        '2,"blood flow increased",7\n',
        encoding="utf-8",
    )
    docs = list(stream_documents(path, fmt="medal"))
    assert [text for _, text in docs] == ["growth hormone was investigated", "blood flow increased"]


def test_stream_medal_requires_text_column(tmp_path):
    path = tmp_path / "medal.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        list(stream_documents(path, fmt="medal"))


def test_stream_unknown_format(tmp_path):
    path = tmp_path / "x.txt"
    path.write_text("x\n", encoding="utf-8")
    with pytest.raises(ValueError):
        list(stream_documents(path, fmt="parquet"))


WIKI20_ROOT = os.environ.get("MERGERANK_WIKI20", "datasets/wiki20")


@pytest.mark.skipif(not os.path.isdir(WIKI20_ROOT), reason="wiki20 corpus not fetched")
def test_wiki20_stats_soft():
    corpus = load_corpus(WIKI20_ROOT, name="wiki20")
    stats = corpus_stats(corpus)
    assert stats.doc_count == 20
    assert stats.mean_gold_count == pytest.approx(35.5, abs=3.0)
