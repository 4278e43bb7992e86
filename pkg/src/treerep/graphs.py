"""Simple graphs, orientations, and desk-scale recognition of graph classes.

Recognition covers chordal, cochordal, comparability, cocomparability,
interval, and cointerval.  Every positive answer carries an explicit
witness (a perfect elimination order, a transitive orientation, or a
consecutive maximal-clique order); recognisers favour simple, auditable
searches over asymptotic speed and are tie-broken by vertex label order
so witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DeskScaleError, InputError

PROPERTIES = (
    "chordal",
    "cochordal",
    "comparability",
    "cocomparability",
    "interval",
    "cointerval",
)

#: Default vertex cap for interval/cointerval recognition; the maximal-clique
#: permutation search is factorial, so larger inputs are refused outright.
INTERVAL_VERTEX_CAP = 12


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical unordered pair: endpoints sorted by label."""
    if u == v:
        raise InputError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Labeled undirected simple graph.

    ``vertices`` is an ordered sequence of distinct labels; ``edges`` is a
    set of label pairs, each stored sorted.  The vertex order is preserved
    by operations that promise it (e.g. :func:`complement`).
    """

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise InputError(f"duplicate vertex label {v!r}")
            seen.add(v)
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1]:
                raise InputError(f"bad edge {e!r}")
            if e[0] > e[1]:
                raise InputError(f"edge {e!r} not in canonical order")
            if e[0] not in seen or e[1] not in seen:
                raise InputError(f"edge {e!r} references unknown vertex")

    @classmethod
    def build(cls, vertices, edges) -> "SimpleGraph":
        """Construct from any iterables, canonicalising edge pairs."""
        return cls(tuple(vertices), frozenset(edge_key(u, v) for u, v in edges))

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)


def complement(g: SimpleGraph) -> SimpleGraph:
    """Complement over the same vertex sequence."""
    missing = frozenset(
        edge_key(u, v) for u, v in combinations(g.vertices, 2)
    ) - g.edges
    return SimpleGraph(g.vertices, missing)


@dataclass(frozen=True)
class Orientation:
    """One direction per edge of ``graph``; arcs are (tail, head) pairs."""

    graph: SimpleGraph
    arcs: frozenset[tuple[str, str]]

    def __post_init__(self):
        pairs = [edge_key(u, v) for u, v in self.arcs]
        if len(set(pairs)) != len(pairs):
            raise InputError("some edge received both directions")
        if set(pairs) != set(self.graph.edges):
            raise InputError("arcs do not cover the edge set exactly")


def is_transitive(o: Orientation) -> list[tuple[str, str, str]]:
    """All triples (u, v, w) with u->v and v->w present but u->w missing.

    Empty result means the orientation is transitive.
    """
    arcs = o.arcs
    out: dict[str, list[str]] = {}
    for u, v in arcs:
        out.setdefault(u, []).append(v)
    bad = []
    for u, v in arcs:
        for w in out.get(v, ()):
            if w != u and (u, w) not in arcs:
                bad.append((u, v, w))
    return sorted(bad)


@dataclass(frozen=True)
class PropertyWitness:
    """Evidence attached to a recognition answer.

    kind 'perfect-elimination-order' carries a vertex order, kind
    'transitive-orientation' an :class:`Orientation`, kind 'clique-order'
    a consecutive arrangement of maximal cliques, and kind 'none' nothing.
    For the co-classes the witness refers to the complement graph.
    """

    kind: str
    payload: object = None


@dataclass(frozen=True)
class RecognitionResult:
    prop: str
    holds: bool
    witness: PropertyWitness

    def __bool__(self) -> bool:
        return self.holds


_NO_WITNESS = PropertyWitness("none")


def recognize(
    g: SimpleGraph, prop: str, *, interval_vertex_cap: int = INTERVAL_VERTEX_CAP
) -> RecognitionResult:
    """Decide a graph-class membership and produce a witness.

    chordal        greedy simplicial elimination (perfect elimination order)
    cochordal      chordal on the complement
    comparability  backtracking search for a transitive orientation
    cocomparability  comparability on the complement
    interval       consecutive arrangement of maximal cliques (capped)
    cointerval     interval on the complement (capped)

    interval/cointerval raise :class:`DeskScaleError` above the cap rather
    than ever answering wrongly.
    """
    if prop == "chordal":
        order = _perfect_elimination_order(g)
        if order is None:
            return RecognitionResult(prop, False, _NO_WITNESS)
        return RecognitionResult(
            prop, True, PropertyWitness("perfect-elimination-order", order)
        )
    if prop == "cochordal":
        inner = recognize(complement(g), "chordal")
        return RecognitionResult(prop, inner.holds, inner.witness)
    if prop == "comparability":
        orient = _find_transitive_orientation(g)
        if orient is None:
            return RecognitionResult(prop, False, _NO_WITNESS)
        return RecognitionResult(
            prop, True, PropertyWitness("transitive-orientation", orient)
        )
    if prop == "cocomparability":
        inner = recognize(complement(g), "comparability")
        return RecognitionResult(prop, inner.holds, inner.witness)
    if prop == "interval":
        if len(g.vertices) > interval_vertex_cap:
            raise DeskScaleError(
                f"out of desk-scale range: interval recognition is capped at "
                f"{interval_vertex_cap} vertices, got {len(g.vertices)}"
            )
        order = _consecutive_clique_order(g)
        if order is None:
            return RecognitionResult(prop, False, _NO_WITNESS)
        return RecognitionResult(prop, True, PropertyWitness("clique-order", order))
    if prop == "cointerval":
        inner = recognize(
            complement(g), "interval", interval_vertex_cap=interval_vertex_cap
        )
        return RecognitionResult(prop, inner.holds, inner.witness)
    raise InputError(f"unknown property {prop!r}; expected one of {PROPERTIES}")


def _perfect_elimination_order(g: SimpleGraph) -> tuple[str, ...] | None:
    """Greedy simplicial elimination, scanning candidates in label order.

    Succeeds exactly on chordal graphs: every nonempty chordal graph has a
    simplicial vertex and deleting one preserves chordality.
    """
    adj = g.adjacency()
    remaining = set(g.vertices)
    order = []
    while remaining:
        for v in sorted(remaining):
            nbrs = adj[v] & remaining
            if all(b in adj[a] for a, b in combinations(sorted(nbrs), 2)):
                order.append(v)
                remaining.remove(v)
                break
        else:
            return None
    return tuple(order)


def _find_transitive_orientation(g: SimpleGraph) -> Orientation | None:
    """Backtracking search for a transitive orientation.

    Orienting an edge forces others: two edges at u whose far endpoints are
    non-adjacent must agree in direction relative to u, and an oriented
    two-path across a triangle forces the closing arc.  Propagation of both
    rules plus exhaustive backtracking is complete at desk scale; a full
    assignment closed under the rules is transitive (asserted regardless).
    """
    adj = g.adjacency()
    edges = sorted(g.edges)
    if not edges:
        return Orientation(g, frozenset())
    assigned: dict[tuple[str, str], tuple[str, str]] = {}

    def force(tail: str, head: str, trail: list) -> bool:
        key = edge_key(tail, head)
        cur = assigned.get(key)
        if cur is not None:
            return cur == (tail, head)
        assigned[key] = (tail, head)
        trail.append(key)
        pending = [(tail, head)]
        while pending:
            a, b = pending.pop()
            for c in adj[a]:
                if c != b and c not in adj[b]:
                    # edges ab, ac with bc missing: both must leave a
                    if not _force_one(a, c, trail, pending):
                        return False
            for c in adj[b]:
                if c != a and c not in adj[a]:
                    # edges ab, cb with ac missing: both must enter b
                    if not _force_one(c, b, trail, pending):
                        return False
            for c in adj[a] & adj[b]:
                got = assigned.get(edge_key(c, a))
                if got == (c, a) and not _force_one(c, b, trail, pending):
                    return False
                got = assigned.get(edge_key(b, c))
                if got == (b, c) and not _force_one(a, c, trail, pending):
                    return False
        return True

    def _force_one(tail, head, trail, pending) -> bool:
        key = edge_key(tail, head)
        cur = assigned.get(key)
        if cur is not None:
            return cur == (tail, head)
        assigned[key] = (tail, head)
        trail.append(key)
        pending.append((tail, head))
        return True

    def solve() -> bool:
        for key in edges:
            if key not in assigned:
                break
        else:
            return True
        u, v = key
        for tail, head in ((u, v), (v, u)):
            trail: list = []
            if force(tail, head, trail) and solve():
                return True
            for k in trail:
                del assigned[k]
        return False

    if not solve():
        return None
    orientation = Orientation(g, frozenset(assigned.values()))
    if is_transitive(orientation):
        raise AssertionError("orientation search produced a non-transitive result")
    return orientation


def _maximal_cliques(g: SimpleGraph) -> list[tuple[str, ...]]:
    """Bron-Kerbosch without pivoting; fine at desk scale."""
    adj = g.adjacency()
    found: list[tuple[str, ...]] = []

    def expand(r: set, p: set, x: set):
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        for v in sorted(p):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(g.vertices), set())
    return sorted(found)


def _consecutive_clique_order(g: SimpleGraph) -> tuple[tuple[str, ...], ...] | None:
    """Order the maximal cliques so each vertex's cliques are consecutive.

    Backtracking over clique positions: placing a clique permanently closes
    every started vertex it omits.  Returns the first ordering found (cliques
    pre-sorted, so the answer is deterministic), or None.
    """
    cliques = _maximal_cliques(g)
    if len(cliques) <= 1:
        return tuple(cliques)
    n = len(cliques)
    order: list[int] = []
    used = [False] * n

    def place(depth: int, started: frozenset, closed: frozenset) -> bool:
        if depth == n:
            return True
        for i in range(n):
            if used[i]:
                continue
            members = frozenset(cliques[i])
            if members & closed:
                continue
            used[i] = True
            order.append(i)
            if place(depth + 1, started | members, closed | (started - members)):
                return True
            used[i] = False
            order.pop()
        return False

    if place(0, frozenset(), frozenset()):
        return tuple(cliques[i] for i in order)
    return None
