"""Interconnection trees in multipartite graphs: existence, counting,
enumeration, and weight-guided enumeration order.

An interconnection tree picks one edge per pair of connected parts — k-1
edges forming a matching — so that the chosen edges span all k parts when
each part is viewed as a single node.
"""

from .count import count_brute, count_complete, count_from_sizes
from .decide import (
    Matching,
    SpanningTreeOnParts,
    VertexCover,
    decide_brute,
    decide_complete,
    decide_fpt,
    decide_quasi_complete,
    max_matching_bipartite,
    min_vertex_cover_from_matching,
    spanning_trees_of_quotient,
)
from .enumeration import (
    ArrayStream,
    SolutionStream,
    enum_binary_partition,
    enum_brute,
    enum_unbounded_branching,
    first_solution,
)
from .errors import (
    BadParams,
    CyclicProjection,
    DuplicateVertex,
    EdgeAbsent,
    EmptyPart,
    EmptyStream,
    EmptyTreeWarning,
    IctError,
    NotAMatching,
    NotComplete,
    NotMaximum,
    NotQuasiComplete,
    ParseError,
    SingletonContraction,
    TooLarge,
    Unsupported,
)
from .graph import (
    BipartiteRepresentation,
    Classification,
    Edge,
    InterconnectionTree,
    MultipartiteGraph,
    QuotientGraph,
    bipartite_representation,
    classify,
    contract,
    contract_matching,
    euclidean_instance,
    gen_synthetic,
    is_interconnection_tree,
    quotient,
    reduce_hamiltonian_path,
    remove_edge,
    restrict_part_from,
    with_part_order,
)
from .io import format_tree, parse_graph, serialize_graph
from .weighted import (
    HEURISTICS,
    MEASURES,
    enum_wge,
    mean_first_n,
    min_weight_brute,
    normalized_inversions,
    normalized_runs,
    select_part,
    tree_weight,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayStream",
    "BadParams",
    "BipartiteRepresentation",
    "Classification",
    "CyclicProjection",
    "DuplicateVertex",
    "Edge",
    "EdgeAbsent",
    "EmptyPart",
    "EmptyStream",
    "EmptyTreeWarning",
    "HEURISTICS",
    "IctError",
    "InterconnectionTree",
    "MEASURES",
    "Matching",
    "MultipartiteGraph",
    "NotAMatching",
    "NotComplete",
    "NotMaximum",
    "NotQuasiComplete",
    "ParseError",
    "QuotientGraph",
    "SingletonContraction",
    "SolutionStream",
    "SpanningTreeOnParts",
    "TooLarge",
    "Unsupported",
    "VertexCover",
    "bipartite_representation",
    "classify",
    "contract",
    "contract_matching",
    "count_brute",
    "count_complete",
    "count_from_sizes",
    "decide_brute",
    "decide_complete",
    "decide_fpt",
    "decide_quasi_complete",
    "enum_binary_partition",
    "enum_brute",
    "enum_unbounded_branching",
    "enum_wge",
    "euclidean_instance",
    "first_solution",
    "format_tree",
    "gen_synthetic",
    "is_interconnection_tree",
    "max_matching_bipartite",
    "mean_first_n",
    "min_weight_brute",
    "min_vertex_cover_from_matching",
    "normalized_inversions",
    "normalized_runs",
    "parse_graph",
    "quotient",
    "reduce_hamiltonian_path",
    "remove_edge",
    "restrict_part_from",
    "select_part",
    "serialize_graph",
    "spanning_trees_of_quotient",
    "tree_weight",
    "with_part_order",
]
