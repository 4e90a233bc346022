"""Small carriers and structures shared across the test modules."""

import random

from ncats import (
    AxiomFlags,
    CategoryStructure,
    CompTable,
    NGraph,
    StructureTail,
)

TAIL1 = StructureTail(1, (0, 0))


def loops_graph(k):
    """One object with k loops; loop 0 is the identity."""
    return NGraph(1, TAIL1, [[0], [0] * k], [[0], [0] * k], [[0]])


def z2_structure():
    """The two-element group as a one-object structure."""
    G = loops_graph(2)
    table = CompTable(0, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})
    return G, CategoryStructure(
        G, [table], [], AxiomFlags(global_=True, unital=True, associative=True))


def trivial_structure():
    G = loops_graph(1)
    return G, CategoryStructure(
        G, [CompTable(0, {(0, 0): 0})], [],
        AxiomFlags(global_=True, unital=True, associative=True))


def arrow_graph():
    """Two objects joined by one arrow, identities included."""
    return NGraph(1, TAIL1, [[0, 0], [0, 1, 0]], [[0, 0], [0, 1, 1]], [[0, 1]])


def parallel_pair_graph():
    """Two objects with two parallel arrows between them."""
    return NGraph(1, TAIL1, [[0, 0], [0, 1, 0, 0]], [[0, 0], [0, 1, 1, 1]],
                  [[0, 1]])


def chain_graph():
    """x -> y -> z with no composite arrow: the one composable pair has an
    empty hom to land in, so no global table exists."""
    return NGraph(1, TAIL1,
                  [[0, 0, 0], [0, 1, 2, 0, 1]],
                  [[0, 0, 0], [0, 1, 2, 1, 2]],
                  [[0, 1, 2]])


def total_order_structure(k):
    """The linear order on k objects as a thin category."""
    objects = list(range(k))
    arrows = [(x, y) for x in objects for y in objects if x <= y]
    index = {a: i for i, a in enumerate(arrows)}
    G = NGraph(1, TAIL1,
               [[0] * k, [a[0] for a in arrows]],
               [[0] * k, [a[1] for a in arrows]],
               [[index[(x, x)] for x in objects]])
    entries = {}
    for (x, y), i in index.items():
        for (y2, z), j in index.items():
            if y2 == y:
                entries[(i, j)] = index[(x, z)]
    return G, CategoryStructure(
        G, [CompTable(0, entries)], [],
        AxiomFlags(global_=True, unital=True, associative=True))


def random_graph(rng: random.Random, n=1, max_cells=4):
    """A valid carrier with randomized counts and boundaries.

    Identities come first in every dimension, extra cells get uniformly
    chosen types; valid by construction.
    """
    counts = [rng.randint(1, max_cells)]
    src = [[0] * counts[0]]
    tgt = [[0] * counts[0]]
    idn = []
    for d in range(1, n + 1):
        lower = counts[d - 1]
        s = list(range(lower))
        t = list(range(lower))
        idn.append(list(range(lower)))
        # group the lower dimension by type so extras stay globular
        if d == 1:
            groups = [list(range(lower))]
        else:
            by_type = {}
            for i in range(lower):
                by_type.setdefault((src[d - 1][i], tgt[d - 1][i]), []).append(i)
            groups = list(by_type.values())
        for _ in range(rng.randint(0, max(0, max_cells - lower))):
            g = rng.choice(groups)
            s.append(rng.choice(g))
            t.append(rng.choice(g))
        counts.append(len(s))
        src.append(s)
        tgt.append(t)
    return NGraph(n, TAIL1, src, tgt, idn)
