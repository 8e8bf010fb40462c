import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pircons import (CoxeterSystem, GradedPoset, TwistedIdentities,
                     context_for_quotient)

GROUP_CONFIGS = [
    ("A2", {"type": "A", "rank": 2}),
    ("A3", {"type": "A", "rank": 3}),
    ("B2", {"type": "B", "rank": 2}),
    ("B3", {"type": "B", "rank": 3}),
    ("I2(5)", {"type": "I2", "m": 5}),
]


def all_subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)


@pytest.fixture(scope="session")
def groups():
    return {name: CoxeterSystem(cfg) for name, cfg in GROUP_CONFIGS}


@pytest.fixture(scope="session")
def suite_quotients(groups):
    """Every H subset of every acceptance group, keyed by a readable name."""
    out = {}
    for name, system in groups.items():
        for H in all_subsets(system.num_gens):
            hh = ",".join(f"s{h + 1}" for h in H) or "-"
            out[f"{name}/H={{{hh}}}"] = system.quotient(H)
    return out


@pytest.fixture(scope="session")
def suite_contexts(suite_quotients):
    """HeckeContexts for the whole quotient suite.  Construction already
    verifies the pircon-system axioms, up-down symmetry and the kernel
    identity for both parameters."""
    return {name: context_for_quotient(quot)
            for name, quot in suite_quotients.items()}


@pytest.fixture(scope="session")
def twisted2():
    return TwistedIdentities(2)


@pytest.fixture(scope="session")
def twisted3():
    return TwistedIdentities(3)


@pytest.fixture(scope="session")
def twisted2_context(twisted2):
    return twisted2.hecke_context()


# Frozen search results (see the poset generator in test_matchings):
# a pircon that is not a dircon, and a pircon whose R-polynomials depend on
# the chosen refinement (hence admits non-calculating SPMs).

@pytest.fixture(scope="session")
def non_dircon_poset():
    return GradedPoset("abcdef", [(0, 1), (0, 2), (1, 3), (1, 4), (3, 5)])


@pytest.fixture(scope="session")
def refinement_dependent_poset():
    return GradedPoset("abcdefgh",
                       [(0, 1), (0, 2), (1, 3), (1, 4),
                        (3, 5), (3, 6), (4, 6), (6, 7)])
