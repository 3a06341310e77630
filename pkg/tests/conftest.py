import itertools

import pytest

from symbreak.graphs import Graph
from symbreak.perms import Perm
from symbreak.suites import standard_corpus


@pytest.fixture(scope="session")
def corpus():
    """The standard small-graph corpus as a name -> Graph dict."""
    return dict(standard_corpus())


def brute_force_automorphisms(g: Graph, colours=None):
    """All vertex permutations preserving adjacency (and colours), by filtering.

    Exponential; intended for graphs with at most 8 vertices.
    """
    n = g.vertex_count
    adj_sets = [frozenset(nbrs) for nbrs in g.adjacency]
    out = []
    for images in itertools.permutations(range(n)):
        if colours is not None and any(colours[images[v]] != colours[v] for v in range(n)):
            continue
        if all(frozenset(images[u] for u in adj_sets[v]) == adj_sets[images[v]] for v in range(n)):
            out.append(Perm(images, validate=False))
    return out
