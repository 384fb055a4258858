import pytest
from hypothesis import settings

from msrlab.certkit import CorpusIndex, load_corpus

settings.register_profile("repro", derandomize=True, deadline=None, print_blob=True)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def by_label(corpus):
    return {c.label: c for c in corpus}


@pytest.fixture(scope="session")
def corpus_index(corpus):
    return CorpusIndex(corpus)
