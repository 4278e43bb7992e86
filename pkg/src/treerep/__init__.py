"""Subtree overlap representations on host trees.

Core objects: trees, named subtree families, derived graphs (overlap /
intersection / disjointness / containment), covering subtrees, mixed
edge partitions, and the transforms connecting them, all validated by
brute-force oracles at desk scale.
"""

from .derive import MODES, derive_graph
from .errors import (
    DeskScaleError,
    InputError,
    SchemaError,
    TreeRepError,
    Violation,
)
from .graphs import (
    Orientation,
    PROPERTIES,
    PropertyWitness,
    RecognitionResult,
    SimpleGraph,
    complement,
    edge_key,
    is_transitive,
    recognize,
)
from .mixed import (
    MixedPartition,
    mixed_to_bushy,
    overlap_to_mixed,
    shrink_containments,
    star_rep_from_orientation,
    verify_mixed_partition,
)
from .oracle import (
    SearchBudget,
    SearchResult,
    connected_subsets,
    enumerate_chordless_cycles,
    enumerate_host_trees,
    search_mixed_partition,
    search_overlap_rep,
)
from .transforms import (
    NormalizationResult,
    SubdivisionStep,
    add_leaf,
    normal_form_violations,
    normalize,
    replay,
    subdivide_edge,
)
from .trees import (
    BushinessReport,
    PairRelation,
    SubtreeFamily,
    Tree,
    bushiness,
    canonical_code,
    classify_pair,
    classify_sets,
    classify_tree,
    induced_subtree,
    induces_subtree,
    is_covering_subtree,
    is_subdivision_of,
    minimal_covering_subtree,
    similarly_related,
    smooth,
    subtree_leaves,
    tree_isomorphic,
    tree_path,
    validate_family,
)
from .workbench import (
    Instance,
    fixtures,
    gen_cover,
    gen_family,
    gen_tree,
    parse,
    serialize,
    to_dot,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
