"""Spectra of graphs built by iterated generalized composition.

Graphs are assembled along enriched Schröder trees; their adjacency, Laplacian,
generalized characteristic polynomial and universal adjacency spectra can be
computed both from the factorization and directly, and compared.
"""

__version__ = "0.1.0"

from .combinatorics import (
    Leaf, LinearOrder, Node, SegmentedPartition, internal_vertices_dfs, leaves_of, pi_of,
)
from .errors import (
    AdmissibilityError, ConnectivityError, InexactDivisionError, InvalidHandleError,
    MissingFactorError, NearPoleError, RegularityError, SpectralOperadError, TreeSyntaxError,
)
from .graphs import (
    SimpleGraph, adjacency_matrix, complement, external_valency, is_connected, laplacian_matrix,
    regularity,
)
from .operad import (
    OrderedAssembly, blocked_adjacency, blocked_laplacian, complement_tree, compose, divides,
    eval_tree, external_valency_sum, partitioned_hadamard,
)
from .spectra import (
    SpectrumWord, adjacency_iterated, adjacency_single_level, complement_adjacency_iterated,
    complement_laplacian_iterated, eig_sym, laplacian_iterated, laplacian_single_level, mu_shift,
    nullity, phi_shift, reduced_adjacency, rho_matrix, script_laplacian, word_div, word_mul,
)
from .colorings import (
    EdgeColoring, colored_adjacency_spectrum, colored_laplacian_spectrum, coloring_from_tree,
    is_admissible, level_subgraph, quotient_data,
)
from .polynomials import (
    BivarPoly, chen_rhs, gen_charpoly, gen_charpoly_colored, gen_charpoly_iterated,
    gen_charpoly_pair, poly_divides,
)
from .universal import (
    UniversalParams, main_function, q_eigenvalue_check, universal_charpoly_factorized,
    universal_colored, universal_matrix, universal_spectrum_iterated, universal_spectrum_single,
)
from .dsl import format_tree, parse_tree
