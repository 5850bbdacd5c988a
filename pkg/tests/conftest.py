import pytest

from mergerank.datasets import load_corpus, sample_corpus_root
from mergerank.tokenizer import default_stopwords

# PASS/FAIL lines registered by the acceptance tests; echoed after the
# run so they are visible regardless of pytest's output capturing.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def stopwords():
    return default_stopwords()


@pytest.fixture(scope="session")
def sample_corpus():
    return load_corpus(sample_corpus_root(), name="sample")


@pytest.fixture(scope="session")
def medal_text():
    from importlib import resources

    return resources.files("mergerank").joinpath("data/sample_medal.txt").read_text("utf-8")
