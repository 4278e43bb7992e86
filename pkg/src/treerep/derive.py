"""Derived graphs of a subtree family: overlap, intersection, disjointness,
containment.  One graph vertex per member, named by the member's name."""

from __future__ import annotations

from itertools import combinations

from .errors import InputError
from .graphs import SimpleGraph, edge_key
from .trees import PairRelation, SubtreeFamily, classify_sets, require_valid

MODES = ("overlap", "intersection", "disjointness", "containment")

_MODE_TAGS = {
    "overlap": {PairRelation.OVERLAP},
    "intersection": {
        PairRelation.OVERLAP,
        PairRelation.FIRST_IN_SECOND,
        PairRelation.SECOND_IN_FIRST,
        PairRelation.EQUAL,
    },
    "disjointness": {PairRelation.DISJOINT},
    # equal members count as contained one in the other, not as overlapping
    "containment": {
        PairRelation.FIRST_IN_SECOND,
        PairRelation.SECOND_IN_FIRST,
        PairRelation.EQUAL,
    },
}


def derive_graph(f: SubtreeFamily, mode: str) -> SimpleGraph:
    """Graph on the member names with an edge wherever the pair relation
    matches the mode."""
    if mode not in _MODE_TAGS:
        raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")
    require_valid(f)
    wanted = _MODE_TAGS[mode]
    edges = set()
    for (ni, vi), (nj, vj) in combinations(f.members, 2):
        if classify_sets(vi, vj) in wanted:
            edges.add(edge_key(ni, nj))
    return SimpleGraph(f.names(), frozenset(edges))
