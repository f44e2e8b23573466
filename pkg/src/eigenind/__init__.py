"""Spectral bounds on the independence ratio of regular graphs."""

__version__ = "0.1.0"

from .graphcore import Graph, analyze_structure, encode_graph6, generate_named, parse_graph6, parse_named
from .spectra import eigendecompose, eigenspace_basis, min_eigenvalue
from .symmetry import automorphism_group
from .sphere import cap_lower_bound, iplus_prob_d3_exact, orthant3, q3_closed_form, qd_monte_carlo
from .bounds import build_report, exact_independence_ratio, hoffman_upper
from .treewave import estimate_tree_density, tree_covariance_sequence
from .streams import RandomStream

__all__ = [
    "Graph", "analyze_structure", "encode_graph6", "generate_named", "parse_graph6", "parse_named",
    "eigendecompose", "eigenspace_basis", "min_eigenvalue", "automorphism_group",
    "cap_lower_bound", "iplus_prob_d3_exact", "orthant3", "q3_closed_form", "qd_monte_carlo",
    "build_report", "exact_independence_ratio", "hoffman_upper",
    "estimate_tree_density", "tree_covariance_sequence", "RandomStream",
]
