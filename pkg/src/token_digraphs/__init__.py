"""Token Digraphs - k-token digraphs, their structure, kernels and colourings."""

from .cnf import CnfFormula, nae_oracle
from .coloring import (
    AcyclicPartition,
    ProperColoring,
    bidirected_clique_number,
    chromatic_number,
    clique_number,
    cordero_bound,
    dichromatic_number,
    find_special_substring,
    k8_minus_c5_study,
    lift_acyclic_partition,
    scan_conjecture,
    verify_clique_formula,
)
from .components import (
    CondensationModel,
    SccDecomposition,
    associated_vector,
    condensation,
    condensation_model,
    scc,
    verify_component_decomposition,
    verify_condensation_theorem,
)
from .cycles import (
    CycleWitness,
    circumference,
    construct_long_token_cycle,
    girth,
    is_degree_balanced,
    is_hamiltonian,
    is_unilateral,
    predict_token_unilateral,
    token_path,
    verify_eulerian_equivalence,
    verify_girth_circumference,
)
from .digraph import (
    Digraph,
    Family,
    Graph,
    GraphError,
    PreconditionError,
    bidirect,
    cartesian_product,
    clean_graph,
    family,
    reverse,
)
from .formats import ParseError, parse_digraph, parse_dimacs, parse_graph, to_dot, to_edge_list
from .kernels import (
    GadgetDigraph,
    KernelSet,
    build_special_kernel,
    build_token_kernel,
    dag_kernel,
    fig6_fixture,
    find_kernel,
    has_odd_oriented_cycle,
    reduce,
    verify_odd_cycle_preservation,
    verify_reduction,
)
from .reports import CheckResult, RunReport, Status, VerificationError
from .tokens import (
    TokenConfig,
    TokenDigraph,
    TokenRangeError,
    token_digraph,
    token_graph,
    verify_property,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicPartition",
    "CheckResult",
    "CnfFormula",
    "CondensationModel",
    "CycleWitness",
    "Digraph",
    "Family",
    "GadgetDigraph",
    "Graph",
    "GraphError",
    "KernelSet",
    "ParseError",
    "PreconditionError",
    "ProperColoring",
    "RunReport",
    "SccDecomposition",
    "Status",
    "TokenConfig",
    "TokenDigraph",
    "TokenRangeError",
    "VerificationError",
    "associated_vector",
    "bidirect",
    "bidirected_clique_number",
    "build_special_kernel",
    "build_token_kernel",
    "cartesian_product",
    "chromatic_number",
    "circumference",
    "clean_graph",
    "clique_number",
    "condensation",
    "condensation_model",
    "construct_long_token_cycle",
    "cordero_bound",
    "dag_kernel",
    "dichromatic_number",
    "family",
    "fig6_fixture",
    "find_kernel",
    "find_special_substring",
    "girth",
    "has_odd_oriented_cycle",
    "is_degree_balanced",
    "is_hamiltonian",
    "is_unilateral",
    "k8_minus_c5_study",
    "lift_acyclic_partition",
    "nae_oracle",
    "parse_digraph",
    "parse_dimacs",
    "parse_graph",
    "predict_token_unilateral",
    "reduce",
    "reverse",
    "scan_conjecture",
    "scc",
    "to_dot",
    "to_edge_list",
    "token_digraph",
    "token_graph",
    "token_path",
    "verify_clique_formula",
    "verify_component_decomposition",
    "verify_condensation_theorem",
    "verify_eulerian_equivalence",
    "verify_girth_circumference",
    "verify_odd_cycle_preservation",
    "verify_property",
    "verify_reduction",
]
