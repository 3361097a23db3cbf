from fractions import Fraction

import pytest

from skewgentle.corpus import GenConfig, corpus_triples
from skewgentle.gentle import require_triple
from skewgentle.quiver import QuiverSpec, parse

EXAMPLE_DSL = """\
# A_4 chain with one relation and two special vertices
vertices 1 2 3 4;
arrow a: 1->2;
arrow b: 2->3;
arrow c: 3->4;
rel a*b;
special 1 2;
"""

# the repo-pinned corpus configuration used by the acceptance suite
ACCEPTANCE_CONFIG = GenConfig(
    seed=20260810,
    n_vertices=(2, 7),
    n_arrows=(2, 8),
    relation_density=Fraction(7, 10),
    special_density=Fraction(1, 2),
    count=500,
)


@pytest.fixture(scope="session")
def example_spec():
    return parse(EXAMPLE_DSL)


@pytest.fixture(scope="session")
def example_triple(example_spec):
    return require_triple(example_spec)


@pytest.fixture(scope="session")
def small_corpus():
    """First 60 instances of the pinned corpus, for property tests."""
    cfg = GenConfig(
        seed=ACCEPTANCE_CONFIG.seed,
        n_vertices=ACCEPTANCE_CONFIG.n_vertices,
        n_arrows=ACCEPTANCE_CONFIG.n_arrows,
        relation_density=ACCEPTANCE_CONFIG.relation_density,
        special_density=ACCEPTANCE_CONFIG.special_density,
        count=60,
    )
    return list(corpus_triples(cfg))


@pytest.fixture(scope="session")
def full_corpus():
    """The full pinned 500-instance corpus (acceptance suite)."""
    return list(corpus_triples(ACCEPTANCE_CONFIG))


def triple_spec(triple) -> QuiverSpec:
    return QuiverSpec(
        triple.base.vertices,
        triple.base.arrows,
        triple.base.relations,
        triple.special_vertices,
    )
