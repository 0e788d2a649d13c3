import pytest

from discoccg import biclosed as bc
from discoccg.corpus import load_corpus
from discoccg.functor import DEFAULT_CONTEXT, lower


@pytest.fixture(scope="session")
def corpus():
    return dict(load_corpus())


@pytest.fixture(scope="session")
def corpus_terms(corpus):
    return {ident: bc.lower_derivation(d) for ident, d in corpus.items()}


@pytest.fixture(scope="session")
def corpus_diagrams(corpus_terms):
    return {ident: lower(t, DEFAULT_CONTEXT) for ident, t in corpus_terms.items()}
