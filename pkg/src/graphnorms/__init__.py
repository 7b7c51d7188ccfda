"""Graph norms, Hölder-type inequalities for decorated bipartite graphs, and related checks."""

__version__ = "0.1.0"

from ._common import Gap, GuardError, InputError
from .graphs import (BipartiteGraph, GeneralGraph, biproduct, disjoint_union, edge_power,
                     independence_number, induced_subgraph, make_complete_bipartite,
                     make_even_cycle, make_hypercube, make_path, make_triangle)
from .homs import (EdgeDecoration, hom_density, hom_sum, hom_sum_decorated, plan_elimination,
                   tensor, tensor_power)
from .norms import graph_norm, graph_rnorm, normalized_rnorm, schatten_norm
from .holder import (amplification_certificate, criterion_report, degree_witness,
                     density_witness, holder_gap, search_violation, verify_certificate)
