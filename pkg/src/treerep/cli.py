"""Command-line interface.

Exit codes: 0 success / affirmative, 1 negative decision, 2 input error,
3 inconclusive (budget exhausted).
"""

from __future__ import annotations

import argparse
import sys

from . import workbench
from .derive import MODES, derive_graph
from .errors import InputError, TreeRepError
from .graphs import PROPERTIES, recognize
from .mixed import (
    mixed_to_bushy,
    overlap_to_mixed,
    verify_mixed_partition,
)
from .oracle import (
    SearchBudget,
    search_mixed_partition,
    search_overlap_rep,
)
from .trees import (
    Tree,
    bushiness,
    classify_tree,
    is_covering_subtree,
    minimal_covering_subtree,
    validate_family,
)
from .transforms import normal_form_violations, normalize
from .workbench import Instance, fixtures, gen_cover, gen_family, gen_tree

OK, NEGATIVE, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


def _read_instance(args) -> Instance:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    return workbench.parse(text)


def _write(args, text: str) -> None:
    if getattr(args, "output", "-") == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(args, instance: Instance) -> None:
    _write(args, workbench.serialize(instance))


def _require(instance: Instance, piece: str):
    value = getattr(instance, piece)
    if value is None:
        raise InputError(f"instance has no {piece}")
    return value


def cmd_gen(args) -> int:
    if args.fixture:
        table = fixtures()
        if args.fixture not in table:
            raise InputError(
                f"unknown fixture {args.fixture!r}; available: {sorted(table)}"
            )
        _emit(args, table[args.fixture])
        return OK
    chunks = []
    for offset in range(args.count):
        seed = args.seed + offset
        tree = gen_tree(args.n, seed)
        meta = {"seed": seed, "n": args.n}
        cover = None
        family = None
        if args.cover != "none":
            cover = gen_cover(tree, seed, args.cover)
            meta["cover_shape"] = args.cover
        if args.k:
            mode = args.mode
            if mode == "covered-by" and cover is None:
                cover = gen_cover(tree, seed, "subtree")
                meta["cover_shape"] = "subtree"
            family = gen_family(tree, args.k, seed, mode, cover)
            meta.update({"k": args.k, "mode": mode})
        chunks.append(
            workbench.serialize(
                Instance(tree=tree, family=family, cover=cover, meta=meta)
            )
        )
    _write(args, "".join(chunks))
    return OK


def cmd_derive(args) -> int:
    instance = _read_instance(args)
    family = _require(instance, "family")
    graph = derive_graph(family, args.mode)
    _emit(
        args,
        Instance(family=family, graph=graph, cover=instance.cover,
                 meta=instance.meta),
    )
    return OK


def cmd_cover(args) -> int:
    instance = _read_instance(args)
    family = _require(instance, "family")
    if args.action == "find":
        cover = minimal_covering_subtree(family)
        _emit(args, Instance(family=family, cover=cover, meta=instance.meta))
        return OK
    cover = _require(instance, "cover")
    return OK if is_covering_subtree(family, cover) else NEGATIVE


def cmd_normalize(args) -> int:
    instance = _read_instance(args)
    family = _require(instance, "family")
    result = normalize(family)
    meta = dict(instance.meta)
    meta["transcript"] = list(result.transcript)
    _emit(args, Instance(family=result.family, meta=meta))
    return OK


def cmd_to_mixed(args) -> int:
    instance = _read_instance(args)
    family = _require(instance, "family")
    if args.cover:
        cover = frozenset(args.cover.split(","))
    else:
        cover = _require(instance, "cover")
    partition, certificate = overlap_to_mixed(family, cover)
    _emit(
        args,
        Instance(family=certificate, mixed=partition, meta=instance.meta),
    )
    return OK


def cmd_from_mixed(args) -> int:
    instance = _read_instance(args)
    partition = _require(instance, "mixed")
    certificate = _require(instance, "family")
    family = mixed_to_bushy(partition, certificate)
    _emit(
        args,
        Instance(
            family=family,
            cover=frozenset(certificate.host.vertices),
            meta=instance.meta,
        ),
    )
    return OK


def cmd_verify(args) -> int:
    instance = _read_instance(args)
    if args.what == "family":
        violations = validate_family(_require(instance, "family"))
    elif args.what in ("property1", "normal-form"):
        violations = normal_form_violations(_require(instance, "family"))
    elif args.what == "mixed":
        violations = verify_mixed_partition(
            _require(instance, "mixed"), instance.family
        )
    elif args.what == "cover":
        ok = is_covering_subtree(
            _require(instance, "family"), _require(instance, "cover")
        )
        violations = [] if ok else ["cover: does not intersect every member"]
    else:  # bushy
        report = bushiness(
            _require(instance, "tree"), _require(instance, "cover")
        )
        violations = [
            f"not-bushy: {v} has non-leaf outside neighbours {list(bs)}"
            for v, bs in report.blockers
            if bs
        ]
    for violation in violations:
        print(violation)
    return OK if not violations else NEGATIVE


def cmd_classify_tree(args) -> int:
    instance = _read_instance(args)
    tree = _require(instance, "tree")
    print(" ".join(sorted(classify_tree(tree))))
    return OK


def cmd_recognize(args) -> int:
    instance = _read_instance(args)
    graph = _require(instance, "graph")
    result = recognize(graph, args.property)
    if not result.holds:
        print(f"{args.property}: no")
        return NEGATIVE
    witness = result.witness
    if witness.kind == "perfect-elimination-order":
        detail = " ".join(witness.payload)
    elif witness.kind == "transitive-orientation":
        detail = " ".join(f"{u}->{v}" for u, v in sorted(witness.payload.arcs))
    elif witness.kind == "clique-order":
        detail = " | ".join(",".join(c) for c in witness.payload)
    else:
        detail = ""
    print(f"{args.property}: yes ({witness.kind}: {detail})")
    return OK


def _budget(args) -> SearchBudget:
    kwargs = {}
    if args.budget is not None:
        kwargs["time_limit_seconds"] = float(args.budget)
    if getattr(args, "max_host", None):
        kwargs["max_host_vertices"] = args.max_host
    return SearchBudget(**kwargs)


def _cover_shape_tree(source: str) -> Tree:
    builtin = {
        "k1": Tree(("s1",), frozenset()),
        "k2": Tree(("s1", "s2"), frozenset({("s1", "s2")})),
    }
    if source.lower() in builtin:
        return builtin[source.lower()]
    with open(source, encoding="utf-8") as fh:
        instance = workbench.parse(fh.read())
    if instance.tree is None:
        raise InputError(f"{source} holds no tree to use as a cover shape")
    return instance.tree


def cmd_search(args) -> int:
    instance = _read_instance(args)
    graph = _require(instance, "graph")
    budget = _budget(args)
    if args.target == "mixed":
        result = search_mixed_partition(graph, budget)
        if result.found:
            _emit(args, Instance(mixed=result.value, meta=instance.meta))
    else:
        shape = _cover_shape_tree(args.cover_shape) if args.cover_shape else None
        result = search_overlap_rep(graph, budget, shape)
        if result.found:
            _emit(args, Instance(family=result.value, meta=instance.meta))
    if result.found:
        return OK
    if result.status == "none":
        print("none: search space exhausted", file=sys.stderr)
        return NEGATIVE
    print(f"inconclusive: {result.detail}", file=sys.stderr)
    return INCONCLUSIVE


def cmd_roundtrip(args) -> int:
    failures = 0
    for offset in range(args.count):
        seed = args.seed + offset
        tree = gen_tree(args.n, seed)
        cover = gen_cover(tree, seed, args.cover)
        family = gen_family(tree, args.k, seed, "covered-by", cover)
        original = derive_graph(family, "overlap")
        partition, certificate = overlap_to_mixed(family, cover)
        rebuilt = mixed_to_bushy(partition, certificate)
        final = derive_graph(rebuilt, "overlap")
        ok = final.edges == original.edges and set(final.vertices) == set(
            original.vertices
        )
        print(f"seed={seed} overlap-graph-equal={'yes' if ok else 'NO'}")
        if not ok:
            failures += 1
    return OK if failures == 0 else NEGATIVE


def cmd_export_dot(args) -> int:
    instance = _read_instance(args)
    _write(args, workbench.to_dot(instance, args.view, args.member))
    return OK


def _add_io(parser, output: bool = True) -> None:
    parser.add_argument(
        "-i", "--input", default="-", help="instance JSON file, or - for stdin"
    )
    if output:
        parser.add_argument(
            "-o", "--output", default="-", help="output file, or - for stdout"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treerep",
        description="Subtree overlap representations: transforms, mixed "
        "partitions, covers, and brute-force searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a tree and optionally a family")
    p.add_argument("--n", type=int, default=8, help="host tree size")
    p.add_argument("--k", type=int, default=0, help="number of members")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=workbench.GEN_MODES, default="free")
    p.add_argument(
        "--cover",
        choices=("none", "vertex", "path", "subtree"),
        default="none",
        help="also generate a cover of this shape",
    )
    p.add_argument("--count", type=int, default=1,
                   help="emit this many instances (seeds seed..seed+count-1)")
    p.add_argument("--fixture", help="emit a built-in fixture instead")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("derive", help="derive a graph from the family")
    p.add_argument("--mode", choices=MODES, required=True)
    _add_io(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("cover", help="find or check a covering subtree")
    p.add_argument("action", choices=("find", "check"))
    _add_io(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("normalize", help="rebuild the family in normal form")
    _add_io(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("to-mixed", help="covered family -> mixed partition")
    p.add_argument("--cover", help="comma-separated cover vertices")
    _add_io(p)
    p.set_defaults(func=cmd_to_mixed)

    p = sub.add_parser("from-mixed", help="mixed partition -> bushy covered family")
    _add_io(p)
    p.set_defaults(func=cmd_from_mixed)

    p = sub.add_parser("verify", help="run a validator; exit 1 on violations")
    p.add_argument(
        "--what",
        choices=("family", "property1", "normal-form", "mixed", "cover", "bushy"),
        required=True,
    )
    _add_io(p, output=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify-tree", help="print shape tags of the tree")
    _add_io(p, output=False)
    p.set_defaults(func=cmd_classify_tree)

    p = sub.add_parser("recognize", help="decide a graph property with witness")
    p.add_argument("--property", choices=PROPERTIES, required=True)
    _add_io(p, output=False)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("search", help="exhaustive searches at tiny scale")
    p.add_argument("target", choices=("mixed", "rep"))
    p.add_argument("--budget", type=int, default=None,
                   help="time budget in whole seconds (default from "
                   "TREEREP_BUDGET_SECONDS)")
    p.add_argument("--max-host", type=int, default=None,
                   help="host vertex cap for rep search")
    p.add_argument("--cover-shape",
                   help="k1, k2, or a JSON instance file holding a tree")
    _add_io(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser(
        "roundtrip",
        help="gen covered family -> to-mixed -> from-mixed -> derive; "
        "report overlap-graph equality",
    )
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--cover", choices=("vertex", "path", "subtree"),
                   default="subtree")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("export-dot", help="render a view as Graphviz text")
    p.add_argument("--view", choices=workbench.DOT_VIEWS, required=True)
    p.add_argument("--member", help="member to shade in rep-highlight view")
    _add_io(p)
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except TreeRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
