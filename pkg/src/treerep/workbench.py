"""Instance generators, the JSON interchange format, and DOT export.

The interchange object holds any subset of {tree, subtrees, graph, mixed,
cover, meta}, mutually consistent.  On write, order-bearing sequences
(vertex order, member order) are preserved and every set-valued array is
sorted, so equal instances serialize to identical bytes and parsing is
lossless.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import InputError, SchemaError
from .graphs import SimpleGraph, edge_key
from .mixed import MixedPartition
from .trees import SubtreeFamily, Tree, induces_subtree, tree_path

GEN_MODES = ("free", "shared-vertex", "covered-by")


@dataclass(frozen=True)
class Instance:
    """A bundle of mutually consistent pieces plus generator metadata."""

    tree: Tree | None = None
    family: SubtreeFamily | None = None
    graph: SimpleGraph | None = None
    mixed: MixedPartition | None = None
    cover: frozenset[str] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family is not None:
            if self.tree is None:
                object.__setattr__(self, "tree", self.family.host)
            elif self.tree != self.family.host:
                raise InputError("instance tree differs from the family's host")
        if self.mixed is not None:
            if self.graph is None:
                object.__setattr__(self, "graph", self.mixed.base)
            elif self.graph != self.mixed.base:
                raise InputError("instance graph differs from the partition's base")
        if self.cover is not None:
            if self.tree is None:
                raise InputError("a cover needs a tree")
            if not frozenset(self.cover) <= set(self.tree.vertices):
                raise InputError("cover references vertices outside the tree")


def gen_tree(n: int, seed: int) -> Tree:
    """Uniformly random labeled tree on n vertices, deterministic per (n, seed).

    Decodes a uniformly random parent sequence in the classic bijective
    encoding of labeled trees, with label-order tie-breaking.
    """
    if n < 1:
        raise InputError("a tree needs at least one vertex")
    labels = tuple(f"v{i}" for i in range(1, n + 1))
    if n == 1:
        return Tree(labels, frozenset())
    if n == 2:
        return Tree(labels, frozenset({edge_key(*labels)}))
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = set()
    leaves = sorted(i for i in range(n) if degree[i] == 1)
    for s in seq:
        leaf = leaves.pop(0)
        edges.add(edge_key(labels[leaf], labels[s]))
        degree[leaf] -= 1
        degree[s] -= 1
        if degree[s] == 1:
            leaves.append(s)
            leaves.sort()
    last = [i for i in range(n) if degree[i] == 1]
    edges.add(edge_key(labels[last[0]], labels[last[1]]))
    return Tree(labels, frozenset(edges))


def _grow_connected(rng: random.Random, adj, start: str, size: int) -> frozenset[str]:
    current = {start}
    while len(current) < size:
        frontier = sorted(
            {u for v in current for u in adj[v]} - current
        )
        if not frontier:
            break
        current.add(rng.choice(frontier))
    return frozenset(current)


def gen_family(
    t: Tree, k: int, seed: int, mode: str = "free", cover=None
) -> SubtreeFamily:
    """k random connected subsets of the host, named t1..tk.

    'shared-vertex' forces one common vertex into every member;
    'covered-by' makes every member intersect the given cover subtree.
    Deterministic per (t, k, seed, mode, cover).
    """
    if k < 0:
        raise InputError("member count must be nonnegative")
    if mode not in GEN_MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {GEN_MODES}")
    rng = random.Random(seed)
    adj = t.adjacency()
    labels = sorted(t.vertices)
    anchor = rng.choice(labels) if mode == "shared-vertex" else None
    if mode == "covered-by":
        if cover is None:
            raise InputError("covered-by mode needs a cover subset")
        cover = frozenset(cover)
        if not induces_subtree(t, cover):
            raise InputError("cover does not induce a subtree of the host")
    members = []
    for i in range(1, k + 1):
        if mode == "shared-vertex":
            start = anchor
        elif mode == "covered-by":
            start = rng.choice(sorted(cover))
        else:
            start = rng.choice(labels)
        size = rng.randint(1, len(labels))
        members.append((f"t{i}", _grow_connected(rng, adj, start, size)))
    return SubtreeFamily(t, tuple(members))


def gen_cover(t: Tree, seed: int, shape: str = "subtree") -> frozenset[str]:
    """Random cover candidate: a connected subset, a path, or one vertex."""
    rng = random.Random(seed)
    labels = sorted(t.vertices)
    if shape == "vertex":
        return frozenset({rng.choice(labels)})
    if shape == "path":
        a, b = rng.choice(labels), rng.choice(labels)
        return frozenset(tree_path(t, a, b))
    if shape == "subtree":
        start = rng.choice(labels)
        size = rng.randint(1, len(labels))
        return _grow_connected(rng, t.adjacency(), start, size)
    raise InputError(f"unknown cover shape {shape!r}")


# ---------------------------------------------------------------------------
# JSON interchange

_TOP_FIELDS = ("tree", "subtrees", "graph", "mixed", "cover", "meta")


def _sorted_pairs(pairs) -> list[list[str]]:
    return sorted([list(p) for p in pairs])


def _meta_sorted(value):
    if isinstance(value, dict):
        return {k: _meta_sorted(value[k]) for k in sorted(value)}
    if isinstance(value, list):
        return [_meta_sorted(v) for v in value]
    return value


def serialize(instance: Instance) -> str:
    """Byte-stable JSON for an instance (UTF-8, trailing newline)."""
    obj: dict = {}
    if instance.tree is not None:
        obj["tree"] = {
            "vertices": list(instance.tree.vertices),
            "edges": _sorted_pairs(instance.tree.edges),
        }
    if instance.family is not None:
        obj["subtrees"] = {
            name: sorted(vs) for name, vs in instance.family.members
        }
    if instance.graph is not None:
        obj["graph"] = {
            "vertices": list(instance.graph.vertices),
            "edges": _sorted_pairs(instance.graph.edges),
        }
    if instance.mixed is not None:
        obj["mixed"] = {
            "e1": _sorted_pairs(instance.mixed.e1),
            "e2": _sorted_pairs(instance.mixed.e2),
        }
    if instance.cover is not None:
        obj["cover"] = sorted(instance.cover)
    if instance.meta:
        obj["meta"] = _meta_sorted(instance.meta)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _expect(obj, path: str, kind, what: str):
    if not isinstance(obj, kind):
        raise SchemaError(path, f"expected {what}")
    return obj


def _parse_labels(obj, path: str) -> tuple[str, ...]:
    _expect(obj, path, list, "an array of labels")
    out = []
    for i, v in enumerate(obj):
        _expect(v, f"{path}[{i}]", str, "a label string")
        out.append(v)
    return tuple(out)


def _parse_pairs(obj, path: str, known: set[str], ordered: bool = False):
    _expect(obj, path, list, "an array of pairs")
    pairs = []
    for i, pair in enumerate(obj):
        where = f"{path}[{i}]"
        _expect(pair, where, list, "a two-element array")
        if len(pair) != 2:
            raise SchemaError(where, "expected exactly two labels")
        u, v = pair
        _expect(u, f"{where}[0]", str, "a label string")
        _expect(v, f"{where}[1]", str, "a label string")
        for lab in (u, v):
            if lab not in known:
                raise SchemaError(where, f"unknown vertex {lab!r}")
        if u == v:
            raise SchemaError(where, "self-loop")
        pairs.append((u, v) if ordered else edge_key(u, v))
    return frozenset(pairs)


def parse(text: str) -> Instance:
    """Parse and validate interchange JSON with path-precise errors."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("instance", f"not valid JSON: {exc}") from exc
    _expect(obj, "instance", dict, "a JSON object")
    for key in obj:
        if key not in _TOP_FIELDS:
            raise SchemaError(f"instance.{key}", "unknown field")

    tree = None
    if "tree" in obj:
        section = _expect(obj["tree"], "instance.tree", dict, "an object")
        for key in section:
            if key not in ("vertices", "edges"):
                raise SchemaError(f"instance.tree.{key}", "unknown field")
        vertices = _parse_labels(section.get("vertices", []), "instance.tree.vertices")
        edges = _parse_pairs(
            section.get("edges", []), "instance.tree.edges", set(vertices)
        )
        try:
            tree = Tree(vertices, edges)
        except InputError as exc:
            raise SchemaError("instance.tree", str(exc)) from exc

    family = None
    if "subtrees" in obj:
        if tree is None:
            raise SchemaError("instance.subtrees", "subtrees need a tree")
        section = _expect(obj["subtrees"], "instance.subtrees", dict, "an object")
        members = []
        for name, vs in section.items():
            labels = _parse_labels(vs, f"instance.subtrees.{name}")
            for lab in labels:
                if lab not in set(tree.vertices):
                    raise SchemaError(
                        f"instance.subtrees.{name}", f"unknown vertex {lab!r}"
                    )
            members.append((name, frozenset(labels)))
        family = SubtreeFamily(tree, tuple(members))

    graph = None
    if "graph" in obj:
        section = _expect(obj["graph"], "instance.graph", dict, "an object")
        for key in section:
            if key not in ("vertices", "edges"):
                raise SchemaError(f"instance.graph.{key}", "unknown field")
        vertices = _parse_labels(section.get("vertices", []), "instance.graph.vertices")
        edges = _parse_pairs(
            section.get("edges", []), "instance.graph.edges", set(vertices)
        )
        try:
            graph = SimpleGraph(vertices, edges)
        except InputError as exc:
            raise SchemaError("instance.graph", str(exc)) from exc

    mixed = None
    if "mixed" in obj:
        if graph is None:
            raise SchemaError("instance.mixed", "a partition needs a graph")
        section = _expect(obj["mixed"], "instance.mixed", dict, "an object")
        for key in section:
            if key not in ("e1", "e2"):
                raise SchemaError(f"instance.mixed.{key}", "unknown field")
        known = set(graph.vertices)
        e1 = _parse_pairs(section.get("e1", []), "instance.mixed.e1", known)
        e2 = _parse_pairs(section.get("e2", []), "instance.mixed.e2", known, ordered=True)
        try:
            mixed = MixedPartition(graph, e1, e2)
        except InputError as exc:
            raise SchemaError("instance.mixed", str(exc)) from exc

    cover = None
    if "cover" in obj:
        if tree is None:
            raise SchemaError("instance.cover", "a cover needs a tree")
        labels = _parse_labels(obj["cover"], "instance.cover")
        for lab in labels:
            if lab not in set(tree.vertices):
                raise SchemaError("instance.cover", f"unknown vertex {lab!r}")
        cover = frozenset(labels)

    meta = {}
    if "meta" in obj:
        meta = _expect(obj["meta"], "instance.meta", dict, "an object")

    try:
        return Instance(
            tree=tree, family=family, graph=graph, mixed=mixed, cover=cover,
            meta=meta,
        )
    except InputError as exc:
        raise SchemaError("instance", str(exc)) from exc


# ---------------------------------------------------------------------------
# DOT export

DOT_VIEWS = ("tree", "graph", "rep-highlight")


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(instance: Instance, view: str, member: str | None = None) -> str:
    """Graphviz text for one view of the instance.

    'tree' and 'graph' render the respective piece; 'rep-highlight' renders
    the host tree with one member's vertices shaded dark grey.
    """
    if view not in DOT_VIEWS:
        raise InputError(f"unknown view {view!r}; expected one of {DOT_VIEWS}")
    if view == "graph":
        if instance.graph is None:
            raise InputError("instance has no graph to export")
        return _dot_graph("derived", instance.graph, {})
    if instance.tree is None:
        raise InputError("instance has no tree to export")
    shaded: dict[str, str] = {}
    if view == "rep-highlight":
        if instance.family is None:
            raise InputError("rep-highlight needs subtrees")
        if member is None:
            raise InputError("rep-highlight needs a member name")
        for v in instance.tree.vertices:
            shaded[v] = "grey92"
        for v in instance.family.member(member):
            shaded[v] = "grey45"
    return _dot_graph("host", instance.tree, shaded)


def _dot_graph(name: str, g: SimpleGraph, fill: dict[str, str]) -> str:
    lines = [f"graph {name} {{"]
    if fill:
        lines.append("  node [style=filled];")
    for v in g.vertices:
        attrs = f" [fillcolor={_dot_quote(fill[v])}]" if v in fill else ""
        lines.append(f"  {_dot_quote(v)}{attrs};")
    for u, v in sorted(g.edges):
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Fixtures

def fixtures() -> dict[str, Instance]:
    """Built-in demonstration instances.

    cycle4-star   four subtrees of a star whose overlap graph is the 4-cycle;
                  the centre alone is a covering subtree.
    cycle4-path   four subpaths of an 8-vertex path with the same overlap
                  graph; a 2-vertex mid-path cover exists.
    bushy-demo    a host with a highlighted subtree containing one bushy and
                  one non-bushy vertex (u's outside neighbour is internal,
                  v's outside neighbour is a leaf).
    """
    star = Tree.build(
        ["c", "l1", "l2", "l3", "l4"],
        [("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
    )
    star_family = SubtreeFamily.build(
        star,
        [
            ("t1", ["c", "l1"]),
            ("t2", ["c", "l2"]),
            ("t3", ["c", "l1", "l3"]),
            ("t4", ["c", "l2", "l4"]),
        ],
    )

    path = Tree.build(
        [f"p{i}" for i in range(1, 9)],
        [(f"p{i}", f"p{i + 1}") for i in range(1, 8)],
    )
    path_family = SubtreeFamily.build(
        path,
        [
            ("t1", ["p1", "p2", "p3", "p4"]),
            ("t2", ["p3", "p4", "p5", "p6"]),
            ("t3", ["p5", "p6", "p7", "p8"]),
            ("t4", ["p2", "p3", "p4", "p5", "p6", "p7"]),
        ],
    )

    bushy_host = Tree.build(
        ["u", "v", "m", "a", "b", "w"],
        [("u", "m"), ("m", "v"), ("u", "a"), ("a", "b"), ("v", "w")],
    )
    bushy_family = SubtreeFamily.build(bushy_host, [("t", ["u", "m", "v"])])

    return {
        "cycle4-star": Instance(
            family=star_family,
            cover=frozenset({"c"}),
            meta={"note": "overlap graph is the 4-cycle; centre covers"},
        ),
        "cycle4-path": Instance(
            family=path_family,
            meta={"note": "overlap graph is the 4-cycle on a path host"},
        ),
        "bushy-demo": Instance(
            family=bushy_family,
            cover=frozenset({"u", "m", "v"}),
            meta={"note": "u is not bushy (neighbour a is internal); v is"},
        ),
    }
