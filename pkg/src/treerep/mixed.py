"""Cochordal-mixed partitions and the constructive equivalences.

A mixed partition splits the edges of a base graph (the complement of the
represented graph) into an undirected block e1 and a transitively oriented
block e2 such that heads of e2 arcs pass their e1 neighbourhoods back to
their tails.  `overlap_to_mixed` reads such a partition off any covered
overlap family; `mixed_to_bushy` rebuilds, from a partition plus a
disjointness certificate on a cover tree R, an overlap family whose host
is R plus pendant leaves and in which R is bushy.  `star_rep_from_orientation`
is the single-vertex-cover special case driven by a transitive orientation
of the complement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derive import derive_graph
from .errors import InputError, Violation
from .graphs import (
    Orientation,
    SimpleGraph,
    complement,
    edge_key,
    is_transitive,
    recognize,
)
from .trees import (
    SubtreeFamily,
    Tree,
    induced_subtree,
    is_covering_subtree,
    require_valid,
)


@dataclass(frozen=True)
class MixedPartition:
    """Edge split of ``base``: undirected block e1, oriented block e2.

    The underlying pairs of e1 and e2 partition the base edge set exactly;
    e2 holds at most one arc per pair.
    """

    base: SimpleGraph
    e1: frozenset[tuple[str, str]]
    e2: frozenset[tuple[str, str]]

    def __post_init__(self):
        for u, v in self.e1:
            if (u, v) != edge_key(u, v):
                raise InputError(f"e1 pair {(u, v)!r} not in canonical order")
        pairs2 = [edge_key(u, v) for u, v in self.e2]
        if len(set(pairs2)) != len(pairs2):
            raise InputError("e2 contains both directions of some pair")
        if self.e1 & frozenset(pairs2):
            raise InputError("e1 and e2 share an edge")
        if self.e1 | frozenset(pairs2) != self.base.edges:
            raise InputError("e1 and e2 do not partition the base edge set")


def verify_mixed_partition(
    p: MixedPartition, e1_certificate: SubtreeFamily | None = None
) -> list[Violation]:
    """Itemized checks of the mixed-partition conditions.

    (a) (V, e1) is cochordal -- decided by recognition, or, when a
        certificate family is supplied, by confirming that its disjointness
        graph is exactly (V, e1); the certificate is authoritative, and a
        disagreement between the two routes is itself reported.
    (b) e2 is transitive.
    (c) mixing: u->v in e2 and vw in e1 imply uw in e1.
    (d) e2 is irreflexive and antisymmetric.
    """
    out = []
    vertices = p.base.vertices
    e1_graph = SimpleGraph(vertices, p.e1)

    recognized = recognize(e1_graph, "cochordal").holds
    if e1_certificate is not None:
        cert_ok = True
        if set(e1_certificate.names()) != set(vertices):
            cert_ok = False
            out.append(
                Violation(
                    "e1-certificate",
                    "certificate member names do not match the base vertices",
                )
            )
        else:
            try:
                disjointness = derive_graph(e1_certificate, "disjointness")
            except InputError as exc:
                cert_ok = False
                out.append(
                    Violation("e1-certificate", f"certificate is invalid: {exc}")
                )
            else:
                if disjointness.edges != p.e1:
                    cert_ok = False
                    out.append(
                        Violation(
                            "e1-certificate",
                            "certificate disjointness graph differs from (V, e1)",
                        )
                    )
        if cert_ok != recognized:
            out.append(
                Violation(
                    "internal-consistency",
                    "certificate check and cochordality recognition disagree "
                    f"(certificate={cert_ok}, recognition={recognized})",
                )
            )
    elif not recognized:
        out.append(Violation("e1-not-cochordal", "(V, e1) is not cochordal"))

    arcs = p.e2
    for u, v in sorted(arcs):
        if u == v:
            out.append(Violation("arc-form", f"self-arc at {u!r}"))
        if (v, u) in arcs:
            out.append(Violation("arc-form", f"both {u}->{v} and {v}->{u} present"))
    e2_graph = SimpleGraph(vertices, frozenset(edge_key(u, v) for u, v in arcs))
    for u, v, w in is_transitive(Orientation(e2_graph, arcs)):
        out.append(
            Violation("not-transitive", f"{u}->{v}->{w} without {u}->{w}")
        )
    for u, v in sorted(arcs):
        for w in vertices:
            if w in (u, v):
                continue
            if edge_key(v, w) in p.e1 and edge_key(u, w) not in p.e1:
                out.append(
                    Violation(
                        "mixing",
                        f"{u}->{v} with {v}{w} in e1 but {u}{w} not in e1",
                    )
                )
    return out


def overlap_to_mixed(
    f: SubtreeFamily, r
) -> tuple[MixedPartition, SubtreeFamily]:
    """Read a mixed partition of the complement off a covered overlap family.

    With members sorted by nondecreasing size (ties by name), e1 collects
    the disjoint pairs and e2 directs every containment-or-equal pair from
    the earlier member to the later one.  The returned certificate hosts
    the cover-restricted members on the subtree induced by ``r``; its
    disjointness graph equals (V, e1) because the cover meets every member.
    """
    require_valid(f)
    r = frozenset(r)
    if not is_covering_subtree(f, r):
        raise InputError(f"{sorted(r)} is not a covering subtree of the family")
    order = sorted(f.members, key=lambda item: (len(item[1]), item[0]))
    e1 = set()
    e2 = set()
    for i, (ni, vi) in enumerate(order):
        for nj, vj in order[i + 1:]:
            if not vi & vj:
                e1.add(edge_key(ni, nj))
            elif vi <= vj:
                e2.add((ni, nj))
    base = complement(derive_graph(f, "overlap"))
    partition = MixedPartition(base, frozenset(e1), frozenset(e2))

    cover_tree = induced_subtree(f.host, r)
    certificate = SubtreeFamily(
        cover_tree, tuple((name, vs & r) for name, vs in f.members)
    )
    return partition, certificate


def shrink_containments(f: SubtreeFamily, arcs) -> SubtreeFamily:
    """Intersect each member into its arc-successors until every arc i->j
    has member i contained in member j.

    ``arcs`` must be transitive and antisymmetric, and arc-joined members
    must intersect (an empty intersection signals an invalid partition /
    certificate pairing).  Members are processed in reverse topological
    order, which reaches the fixpoint in one pass; the disjointness graph
    of the family is unchanged.
    """
    require_valid(f)
    arcs = frozenset(arcs)
    names = list(f.names())
    known = set(names)
    for u, v in arcs:
        if u not in known or v not in known:
            raise InputError(f"arc {(u, v)!r} references unknown members")
        if u == v or (v, u) in arcs:
            raise InputError(f"arc set is not antisymmetric at {(u, v)!r}")
    for u, v in arcs:
        for w, x in arcs:
            if v == w and u != x and (u, x) not in arcs:
                raise InputError(f"arc set is not transitive: {u}->{v}->{x}")

    successors: dict[str, list[str]] = {n: [] for n in names}
    indegree = {n: 0 for n in names}
    for u, v in sorted(arcs):
        successors[u].append(v)
        indegree[v] += 1
    queue = sorted(n for n in names if indegree[n] == 0)
    topo = []
    while queue:
        n = queue.pop(0)
        topo.append(n)
        for m in successors[n]:
            indegree[m] -= 1
            if indegree[m] == 0:
                queue.append(m)
        queue.sort()
    if len(topo) != len(names):
        raise InputError("arc set is cyclic")

    current = dict(f.as_dict())
    for n in reversed(topo):
        for m in successors[n]:
            shrunk = current[n] & current[m]
            if not shrunk:
                raise InputError(
                    f"members {n} and {m} are disjoint despite arc {n}->{m}"
                )
            current[n] = shrunk
    for u, v in arcs:
        if not current[u] <= current[v]:
            raise AssertionError("containment fixpoint not reached in one pass")
    return f.replace_members(current)


def _fresh_pendant_labels(taken, names) -> dict[str, str]:
    labels = {}
    used = set(taken)
    for name in names:
        candidate = f"x_{name}"
        k = 0
        while candidate in used:
            k += 1
            candidate = f"x_{name}#{k}"
        used.add(candidate)
        labels[name] = candidate
    return labels


def mixed_to_bushy(p: MixedPartition, cert: SubtreeFamily) -> SubtreeFamily:
    """Build an overlap family for the complement of ``p.base`` whose host is
    the certificate tree R plus one pendant leaf per member, with R bushy.

    After shrinking the certificate along e2, every member receives a
    private pendant attached at its label-least vertex, plus the pendants
    of its e2 predecessors.  The result's overlap graph is exactly the
    complement of the base, R covers it, and R is bushy in the new host.
    """
    violations = verify_mixed_partition(p, cert)
    if violations:
        raise InputError(
            "not a verified mixed partition: "
            + "; ".join(str(v) for v in violations)
        )
    shrunk = shrink_containments(cert, p.e2)
    host = shrunk.host
    pendant = _fresh_pendant_labels(host.vertices, shrunk.names())
    vertices = host.vertices + tuple(pendant[n] for n in shrunk.names())
    edges = set(host.edges)
    for name, vs in shrunk.members:
        edges.add(edge_key(min(vs), pendant[name]))
    new_host = Tree(vertices, frozenset(edges))

    predecessors: dict[str, set[str]] = {n: set() for n in shrunk.names()}
    for u, v in p.e2:
        predecessors[v].add(u)
    members = tuple(
        (
            name,
            vs | {pendant[name]} | {pendant[k] for k in predecessors[name]},
        )
        for name, vs in shrunk.members
    )
    return SubtreeFamily(new_host, members)


def star_rep_from_orientation(o: Orientation) -> SubtreeFamily:
    """Overlap family on a star realizing the complement of ``o.graph``.

    Every member holds the centre and its own leaf, plus the leaves of its
    predecessors under the (transitive) orientation; the centre alone is a
    covering subtree.
    """
    bad = is_transitive(o)
    if bad:
        raise InputError(f"orientation is not transitive, e.g. {bad[0]}")
    names = o.graph.vertices
    centre = "c"
    k = 0
    while centre in names:
        k += 1
        centre = f"c#{k}"
    host = Tree(
        (centre,) + tuple(names),
        frozenset(edge_key(centre, n) for n in names),
    )
    predecessors: dict[str, set[str]] = {n: set() for n in names}
    for u, v in o.arcs:
        predecessors[v].add(u)
    members = tuple(
        (n, frozenset({centre, n}) | predecessors[n]) for n in names
    )
    return SubtreeFamily(host, members)
