import random
from itertools import combinations

import pytest
from helpers import random_family

from treerep import (
    InputError,
    SubdivisionStep,
    SubtreeFamily,
    Tree,
    add_leaf,
    classify_sets,
    is_subdivision_of,
    normal_form_violations,
    normalize,
    replay,
    similarly_related,
    subdivide_edge,
    subtree_leaves,
    validate_family,
)


def relation_table(fam: SubtreeFamily) -> dict:
    return {
        (a, b): classify_sets(fam.member(a), fam.member(b))
        for a, b in combinations(fam.names(), 2)
    }


def relations_preserved(before: SubtreeFamily, after: SubtreeFamily) -> bool:
    rb, ra = relation_table(before), relation_table(after)
    return all(similarly_related(rb[pair], ra[pair]) for pair in rb)


def test_add_leaf_to_trivial_host():
    k1 = Tree.build("a", [])
    fam = SubtreeFamily.build(k1, [("m", ["a"])])
    grown = add_leaf(fam, "a", "b")
    assert grown.host == Tree.build("ab", [("a", "b")])
    assert grown.member("m") == {"a"}


def test_add_leaf_rejects_collisions_and_unknown_attach():
    fam = SubtreeFamily.build(Tree.build("ab", [("a", "b")]), [("m", ["a"])])
    with pytest.raises(InputError):
        add_leaf(fam, "z", "c")
    with pytest.raises(InputError):
        add_leaf(fam, "a", "b")


def test_add_leaf_preserves_all_relations():
    rng = random.Random(21)
    for _ in range(300):
        fam = random_family(rng, max_host=10, max_members=6)
        attach = rng.choice(sorted(fam.host.vertices))
        grown = add_leaf(fam, attach, "fresh")
        assert relations_preserved(fam, grown)


def test_subdivide_without_absorption_leaves_members_alone():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("t1", ["a"]), ("t2", ["c"])])
    out = subdivide_edge(fam, SubdivisionStep("a", "b", "x", frozenset()))
    assert out.host.edges == {("a", "x"), ("b", "x"), ("b", "c")}
    assert out.member("t1") == {"a"}
    assert out.member("t2") == {"c"}
    assert validate_family(out) == []


def test_subdivide_absorbing_a_contained_member():
    host = Tree.build("ab", [("a", "b")])
    fam = SubtreeFamily.build(host, [("t1", ["a", "b"]), ("t2", ["a"])])
    out = subdivide_edge(fam, SubdivisionStep("a", "b", "x", frozenset({"t2"})))
    assert out.member("t1") == {"a", "b", "x"}  # contains both endpoints
    assert out.member("t2") == {"a", "x"}  # absorbed
    assert relations_preserved(fam, out)
    assert validate_family(out) == []


def test_subdivide_keeps_overlap_at_shared_vertex():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("t1", ["a", "b"]), ("t2", ["b", "c"])])
    out = subdivide_edge(fam, SubdivisionStep("a", "b", "x", frozenset()))
    assert out.member("t1") == {"a", "b", "x"}
    assert out.member("t2") == {"b", "c"}
    assert relations_preserved(fam, out)


def test_subdivide_rejects_bad_steps():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("t1", ["a"])])
    with pytest.raises(InputError):
        subdivide_edge(fam, SubdivisionStep("a", "c", "x", frozenset()))
    with pytest.raises(InputError):
        subdivide_edge(fam, SubdivisionStep("a", "b", "c", frozenset()))
    with pytest.raises(InputError):
        subdivide_edge(fam, SubdivisionStep("a", "b", "x", frozenset({"ghost"})))
    with pytest.raises(InputError):
        # t1 does not contain endpoint b
        subdivide_edge(fam, SubdivisionStep("b", "c", "x", frozenset({"t1"})))


def test_subdivide_preserves_relations_on_random_instances():
    rng = random.Random(22)
    for _ in range(300):
        fam = random_family(rng, max_host=10, max_members=6)
        u, v = sorted(fam.host.edges)[rng.randrange(len(fam.host.edges))]
        v_end = u if rng.random() < 0.5 else v
        w_end = v if v_end == u else u
        candidates = [n for n, vs in fam.members if v_end in vs]
        absorb = frozenset(n for n in candidates if rng.random() < 0.5)
        out = subdivide_edge(fam, SubdivisionStep(v_end, w_end, "x#new", absorb))
        assert relations_preserved(fam, out)
        assert validate_family(out) == []
        # members that gained the fresh vertex contain the chosen endpoint
        for name, vs in fam.members:
            if "x#new" in out.member(name):
                assert v_end in vs


def test_normal_form_violation_clauses():
    host = Tree.build("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    fam = SubtreeFamily.build(host, [("solo", ["b"])])
    assert [v.code for v in normal_form_violations(fam)] == ["nontrivial"]

    fam = SubtreeFamily.build(host, [("t1", ["a", "b"]), ("t2", ["b", "c"])])
    codes = [v.code for v in normal_form_violations(fam)]
    # t1 and t2 share only b, and b is a leaf of both members
    assert codes.count("thin-intersection") == 1
    assert codes.count("shared-leaf") == 1

    fam = SubtreeFamily.build(
        host, [("t1", ["a", "b", "c"]), ("t2", ["b", "c", "d"])]
    )
    assert normal_form_violations(fam) == []


def test_normalize_rejects_trivial_host():
    fam = SubtreeFamily.build(Tree.build("a", []), [("m", ["a"])])
    with pytest.raises(InputError):
        normalize(fam)


def test_normalize_duplicate_singletons():
    host = Tree.build("ab", [("a", "b")])
    fam = SubtreeFamily.build(host, [("t1", ["a"]), ("t2", ["a"])])
    result = normalize(fam)
    out = result.family
    assert normal_form_violations(out) == []
    assert out.member("t1") != out.member("t2")
    assert all(len(vs) >= 2 for _, vs in out.members)
    # the equal pair may only drift to containment-or-equal
    rel = classify_sets(out.member("t1"), out.member("t2"))
    assert similarly_related(rel, classify_sets(frozenset("a"), frozenset("a")))


def test_normalize_runs_all_stages_even_when_already_clean():
    host = Tree.build("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    fam = SubtreeFamily.build(host, [("t1", ["b", "c"])])
    result = normalize(fam)
    assert normal_form_violations(result.family) == []
    assert relations_preserved(fam, result.family)
    # no member touches a host leaf, so stage 1 adds nothing
    assert all(entry["action"] != "add-leaf" for entry in result.transcript)
    assert result.preprocessed_host == host
    # stage 2 always subdivides twice per edge
    subdivisions = [e for e in result.transcript if e["action"] == "subdivide"]
    assert len(subdivisions) >= 2 * len(host.edges)


def test_normalize_random_instances():
    rng = random.Random(23)
    for _ in range(120):
        fam = random_family(rng, max_host=9, max_members=5)
        result = normalize(fam)
        assert normal_form_violations(result.family) == []
        assert relations_preserved(fam, result.family)
        assert validate_family(result.family) == []
        assert is_subdivision_of(result.family.host, result.preprocessed_host)


def test_normalize_transcript_replays_exactly():
    rng = random.Random(24)
    for _ in range(40):
        fam = random_family(rng, max_host=8, max_members=4)
        result = normalize(fam)
        assert replay(fam, result.transcript) == result.family


def test_normalize_leaves_of_members_have_host_degree_two():
    rng = random.Random(25)
    for _ in range(60):
        fam = random_family(rng, max_host=8, max_members=5)
        out = normalize(fam).family
        adj = out.host.adjacency()
        for _, vs in out.members:
            for leaf in subtree_leaves(out.host, vs):
                assert len(adj[leaf]) == 2


def test_replay_rejects_unknown_actions():
    fam = SubtreeFamily.build(Tree.build("ab", [("a", "b")]), [("m", ["a"])])
    with pytest.raises(InputError):
        replay(fam, [{"action": "warp"}])
