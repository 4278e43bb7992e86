"""Shared builders for randomized sweeps."""

from __future__ import annotations

import random
from itertools import combinations

from treerep import SimpleGraph, SubtreeFamily, edge_key, gen_family, gen_tree


def random_graph(rng: random.Random, max_n: int = 6, min_n: int = 1) -> SimpleGraph:
    n = rng.randint(min_n, max_n)
    vertices = tuple(str(i) for i in range(1, n + 1))
    edges = frozenset(
        edge_key(u, v) for u, v in combinations(vertices, 2) if rng.random() < 0.5
    )
    return SimpleGraph(vertices, edges)


def random_family(
    rng: random.Random,
    max_host: int = 12,
    max_members: int = 8,
    mode: str = "free",
    min_host: int = 2,
) -> SubtreeFamily:
    tree = gen_tree(rng.randint(min_host, max_host), rng.randrange(10**9))
    k = rng.randint(1, max_members)
    return gen_family(tree, k, rng.randrange(10**9), mode)


def path_graph(labels: str | list) -> SimpleGraph:
    labels = list(labels)
    return SimpleGraph.build(
        labels, [(labels[i], labels[i + 1]) for i in range(len(labels) - 1)]
    )


def cycle_graph(labels: str | list) -> SimpleGraph:
    labels = list(labels)
    edges = [(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels))]
    return SimpleGraph.build(labels, edges)
