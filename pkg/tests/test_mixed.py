import random

import pytest
from helpers import cycle_graph, path_graph, random_family

from treerep import (
    InputError,
    MixedPartition,
    Orientation,
    SimpleGraph,
    SubtreeFamily,
    Tree,
    bushiness,
    classify_tree,
    complement,
    derive_graph,
    fixtures,
    gen_cover,
    gen_family,
    gen_tree,
    induced_subtree,
    is_covering_subtree,
    mixed_to_bushy,
    overlap_to_mixed,
    recognize,
    shrink_containments,
    star_rep_from_orientation,
    tree_isomorphic,
    verify_mixed_partition,
)

TWO_K2 = SimpleGraph.build("1234", [("1", "3"), ("2", "4")])


def test_partition_type_invariants():
    with pytest.raises(InputError):
        MixedPartition(TWO_K2, frozenset({("1", "3")}), frozenset({("1", "3")}))
    with pytest.raises(InputError):
        MixedPartition(TWO_K2, frozenset(), frozenset({("1", "3")}))
    with pytest.raises(InputError):
        MixedPartition(
            TWO_K2, frozenset(), frozenset({("1", "3"), ("3", "1"), ("2", "4")})
        )


def test_verify_accepts_the_oriented_two_k2_partition():
    p = MixedPartition(TWO_K2, frozenset(), frozenset({("1", "3"), ("2", "4")}))
    assert verify_mixed_partition(p) == []


def test_verify_rejects_non_cochordal_e1():
    p = MixedPartition(TWO_K2, frozenset({("1", "3"), ("2", "4")}), frozenset())
    codes = [v.code for v in verify_mixed_partition(p)]
    assert codes == ["e1-not-cochordal"]


def test_verify_reports_missing_transitive_closure():
    base = path_graph("abc")
    p = MixedPartition(base, frozenset(), frozenset({("a", "b"), ("b", "c")}))
    codes = [v.code for v in verify_mixed_partition(p)]
    assert "not-transitive" in codes


def test_verify_reports_mixing_failures():
    # c->a oriented, ab in e1, but cb is not an edge at all
    base = path_graph("cab")  # edges ca, ab
    p = MixedPartition(base, frozenset({("a", "b")}), frozenset({("c", "a")}))
    codes = [v.code for v in verify_mixed_partition(p)]
    assert codes == ["mixing"]


def test_verify_uses_certificate_and_flags_mismatches():
    p = MixedPartition(TWO_K2, frozenset(), frozenset({("1", "3"), ("2", "4")}))
    host = Tree.build("r", [])
    good = SubtreeFamily.build(host, [(n, ["r"]) for n in "1234"])
    assert verify_mixed_partition(p, good) == []

    wrong_names = SubtreeFamily.build(host, [(n, ["r"]) for n in "1256"])
    codes = [v.code for v in verify_mixed_partition(p, wrong_names)]
    assert "e1-certificate" in codes and "internal-consistency" in codes

    # certificate whose disjointness graph is not (V, e1)
    host2 = Tree.build("rs", [("r", "s")])
    split = SubtreeFamily.build(
        host2, [("1", ["r"]), ("2", ["r"]), ("3", ["s"]), ("4", ["r"])]
    )
    codes = [v.code for v in verify_mixed_partition(p, split)]
    assert "e1-certificate" in codes


def test_overlap_to_mixed_on_the_star_fixture():
    fam = fixtures()["cycle4-star"].family
    partition, certificate = overlap_to_mixed(fam, {"c"})
    assert partition.e1 == frozenset()
    assert partition.e2 == {("t1", "t3"), ("t2", "t4")}
    assert partition.base == complement(derive_graph(fam, "overlap"))
    assert certificate.host.vertices == ("c",)
    assert all(vs == {"c"} for _, vs in certificate.members)
    assert verify_mixed_partition(partition, certificate) == []


def test_overlap_to_mixed_on_pairwise_disjoint_members():
    host = Tree.build("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])
    fam = SubtreeFamily.build(host, [("x", ["a"]), ("y", ["c"]), ("z", ["e"])])
    partition, _ = overlap_to_mixed(fam, set(host.vertices))
    assert partition.e2 == frozenset()
    assert partition.e1 == {("x", "y"), ("x", "z"), ("y", "z")}
    assert derive_graph(fam, "overlap").edges == frozenset()
    assert partition.base.edges == partition.e1  # base is complete


def test_overlap_to_mixed_requires_a_cover():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("x", ["a"]), ("y", ["c"])])
    with pytest.raises(InputError):
        overlap_to_mixed(fam, {"a"})


def test_overlap_to_mixed_passes_verifier_on_random_covered_families():
    rng = random.Random(41)
    for _ in range(100):
        tree = gen_tree(rng.randint(2, 10), rng.randrange(10**9))
        cover = gen_cover(tree, rng.randrange(10**9))
        fam = gen_family(tree, rng.randint(1, 6), rng.randrange(10**9),
                         "covered-by", cover)
        partition, certificate = overlap_to_mixed(fam, cover)
        assert verify_mixed_partition(partition, certificate) == []
        assert partition.base == complement(derive_graph(fam, "overlap"))


def test_shrink_with_no_arcs_is_identity():
    fam = fixtures()["cycle4-path"].family
    assert shrink_containments(fam, frozenset()) == fam


def test_shrink_single_arc_example():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("t1", ["a", "b"]), ("t2", ["b", "c"])])
    out = shrink_containments(fam, {("t1", "t2")})
    assert out.member("t1") == {"b"}
    assert out.member("t2") == {"b", "c"}
    before = derive_graph(fam, "disjointness")
    after = derive_graph(out, "disjointness")
    assert before == after


def test_shrink_rejects_disjoint_arc_members_and_bad_arc_sets():
    host = Tree.build("abc", [("a", "b"), ("b", "c")])
    fam = SubtreeFamily.build(host, [("t1", ["a"]), ("t2", ["c"])])
    with pytest.raises(InputError):
        shrink_containments(fam, {("t1", "t2")})
    with pytest.raises(InputError):
        shrink_containments(fam, {("t1", "t2"), ("t2", "t1")})
    fam3 = SubtreeFamily.build(
        host, [("t1", ["a", "b"]), ("t2", ["b"]), ("t3", ["b", "c"])]
    )
    with pytest.raises(InputError):
        # missing closure t1->t3
        shrink_containments(fam3, {("t1", "t2"), ("t2", "t3")})


def test_shrink_reaches_arc_containment_on_random_partitions():
    rng = random.Random(42)
    for _ in range(100):
        tree = gen_tree(rng.randint(2, 9), rng.randrange(10**9))
        cover = gen_cover(tree, rng.randrange(10**9))
        fam = gen_family(tree, rng.randint(1, 6), rng.randrange(10**9),
                         "covered-by", cover)
        partition, certificate = overlap_to_mixed(fam, cover)
        shrunk = shrink_containments(certificate, partition.e2)
        for u, v in partition.e2:
            assert shrunk.member(u) <= shrunk.member(v)
        assert derive_graph(shrunk, "disjointness") == derive_graph(
            certificate, "disjointness"
        )


def test_mixed_to_bushy_rebuilds_the_star_construction():
    base = complement(cycle_graph("1234"))
    partition = MixedPartition(
        base, frozenset(), frozenset({("1", "3"), ("2", "4")})
    )
    cert = SubtreeFamily.build(Tree.build("c", []), [(n, ["c"]) for n in "1234"])
    fam = mixed_to_bushy(partition, cert)
    assert derive_graph(fam, "overlap") == cycle_graph("1234")
    assert is_covering_subtree(fam, {"c"})
    assert bushiness(fam.host, {"c"}).bushy
    assert classify_tree(fam.host) >= {"star"}
    assert len(set(vs for _, vs in fam.members)) == 4  # pairwise distinct


def test_mixed_to_bushy_two_vertex_containment():
    base = SimpleGraph.build("ab", [("a", "b")])
    partition = MixedPartition(base, frozenset(), frozenset({("a", "b")}))
    cert = SubtreeFamily.build(Tree.build("r", []), [("a", ["r"]), ("b", ["r"])])
    fam = mixed_to_bushy(partition, cert)
    assert derive_graph(fam, "overlap").edges == frozenset()
    assert fam.member("a") < fam.member("b")


def test_mixed_to_bushy_rejects_failing_partitions():
    partition = MixedPartition(
        TWO_K2, frozenset({("1", "3"), ("2", "4")}), frozenset()
    )
    cert = SubtreeFamily.build(Tree.build("c", []), [(n, ["c"]) for n in "1234"])
    with pytest.raises(InputError):
        mixed_to_bushy(partition, cert)


def test_mixed_to_bushy_non_cover_vertices_are_pendant_leaves():
    rng = random.Random(43)
    for _ in range(60):
        tree = gen_tree(rng.randint(2, 8), rng.randrange(10**9))
        cover = gen_cover(tree, rng.randrange(10**9))
        fam = gen_family(tree, rng.randint(1, 5), rng.randrange(10**9),
                         "covered-by", cover)
        partition, certificate = overlap_to_mixed(fam, cover)
        rebuilt = mixed_to_bushy(partition, certificate)
        adj = rebuilt.host.adjacency()
        core = set(certificate.host.vertices)
        for v in rebuilt.host.vertices:
            if v not in core:
                assert len(adj[v]) == 1


def test_round_trip_reproduces_the_overlap_graph():
    rng = random.Random(44)
    for _ in range(100):
        tree = gen_tree(rng.randint(2, 9), rng.randrange(10**9))
        cover = gen_cover(tree, rng.randrange(10**9))
        fam = gen_family(tree, rng.randint(1, 6), rng.randrange(10**9),
                         "covered-by", cover)
        partition, certificate = overlap_to_mixed(fam, cover)
        rebuilt = mixed_to_bushy(partition, certificate)
        assert derive_graph(rebuilt, "overlap") == derive_graph(fam, "overlap")
        core = frozenset(certificate.host.vertices)
        assert is_covering_subtree(rebuilt, core)
        assert bushiness(rebuilt.host, core).bushy
        ok, _ = tree_isomorphic(
            induced_subtree(rebuilt.host, core), induced_subtree(tree, cover)
        )
        assert ok


def test_path_covers_give_caterpillar_hosts():
    rng = random.Random(45)
    for _ in range(40):
        tree = gen_tree(rng.randint(2, 9), rng.randrange(10**9))
        cover = gen_cover(tree, rng.randrange(10**9), "path")
        fam = gen_family(tree, rng.randint(1, 6), rng.randrange(10**9),
                         "covered-by", cover)
        partition, certificate = overlap_to_mixed(fam, cover)
        rebuilt = mixed_to_bushy(partition, certificate)
        assert "caterpillar" in classify_tree(rebuilt.host)


def test_star_rep_from_orientation_examples():
    o = Orientation(TWO_K2, frozenset({("1", "3"), ("2", "4")}))
    fam = star_rep_from_orientation(o)
    assert fam.as_dict() == {
        "1": {"c", "1"},
        "2": {"c", "2"},
        "3": {"c", "1", "3"},
        "4": {"c", "2", "4"},
    }
    assert derive_graph(fam, "overlap") == cycle_graph("1234")
    assert is_covering_subtree(fam, {"c"})

    complete = SimpleGraph.build("xyz", [("x", "y"), ("x", "z"), ("y", "z")])
    o2 = Orientation(complement(complete), frozenset())
    fam2 = star_rep_from_orientation(o2)
    assert all(vs == {"c", n} for n, vs in fam2.members)
    assert derive_graph(fam2, "overlap") == complete

    p4 = path_graph("1234")
    o3 = Orientation(
        complement(p4), frozenset({("3", "1"), ("4", "1"), ("4", "2")})
    )
    assert derive_graph(star_rep_from_orientation(o3), "overlap") == p4


def test_star_rep_rejects_non_transitive_orientations():
    comp = complement(path_graph("1234"))
    bad = Orientation(comp, frozenset({("1", "3"), ("4", "1"), ("4", "2")}))
    with pytest.raises(InputError):
        star_rep_from_orientation(bad)


def test_star_rep_centre_label_avoids_collisions():
    g = SimpleGraph.build(["c", "d"], [("c", "d")])
    o = Orientation(complement(g), frozenset())
    fam = star_rep_from_orientation(o)
    assert len(set(fam.host.vertices)) == 3


def test_shared_vertex_families_are_realized_by_star_reps():
    rng = random.Random(46)
    for _ in range(60):
        fam = random_family(rng, max_host=9, max_members=6, mode="shared-vertex")
        g = derive_graph(fam, "overlap")
        result = recognize(g, "cocomparability")
        assert result.holds
        back = star_rep_from_orientation(result.witness.payload)
        assert derive_graph(back, "overlap") == g
