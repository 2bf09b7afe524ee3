"""Exact maximum weight independent set solving on a hereditary graph class.

The solver composes modular decomposition, clique-separator decomposition,
and vertex-neighborhood branching into a layered reduction chain whose
terminal cases go to pluggable base solvers.  Alongside it live a catalog
of the special graphs involved, certificate-producing induced-subgraph
detection, and verification suites for the structural guarantees the chain
walks through.
"""

from .graph import Graph, GraphError, VertexSet, build_graph
from .patterns import (
    Catalog,
    Embedding,
    PatternDef,
    PatternUnavailableError,
    PatternUnknownError,
    build_sijk,
    canonical_form,
    are_isomorphic,
    catalog,
    default_catalog,
    find_induced,
    find_shortest_odd_hole,
    is_free,
    recognize_input_class,
)
from .decomposition import (
    AtomNode,
    MDNode,
    clique_cutset_decompose,
    find_clique_cutset,
    find_nontrivial_module,
    is_prime,
    modular_decomposition,
)
from .solver import (
    BaseSolverRegistry,
    ClassRejection,
    SizeLimitError,
    SolveConfig,
    SolveResult,
    mwis_enumerate,
    mwis_exact,
    solve,
    solve_by_atoms,
    solve_by_modular,
    solve_layer,
    solve_nearly,
)
from .lab import (
    NeighborhoodPartition,
    SuiteReport,
    Violation,
    enumerate_class_graphs,
    partition_neighborhood,
    run_suite,
)
from .toolkit import (
    GenSpec,
    GenerationError,
    ParseError,
    generate,
    named_graph,
    read_graph,
    read_patterns,
    write_graph,
)

__version__ = "0.1.0"

__all__ = [
    "Graph", "GraphError", "VertexSet", "build_graph",
    "Catalog", "Embedding", "PatternDef", "PatternUnavailableError",
    "PatternUnknownError", "build_sijk", "canonical_form", "are_isomorphic",
    "catalog", "default_catalog", "find_induced", "find_shortest_odd_hole",
    "is_free", "recognize_input_class",
    "AtomNode", "MDNode", "clique_cutset_decompose", "find_clique_cutset",
    "find_nontrivial_module", "is_prime", "modular_decomposition",
    "BaseSolverRegistry", "ClassRejection", "SizeLimitError", "SolveConfig",
    "SolveResult", "mwis_enumerate", "mwis_exact", "solve", "solve_by_atoms",
    "solve_by_modular", "solve_layer", "solve_nearly",
    "NeighborhoodPartition", "SuiteReport", "Violation",
    "enumerate_class_graphs", "partition_neighborhood", "run_suite",
    "GenSpec", "GenerationError", "ParseError", "generate", "named_graph",
    "read_graph", "read_patterns", "write_graph",
    "__version__",
]
