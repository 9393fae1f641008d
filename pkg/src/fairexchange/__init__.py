"""Bottleneck decomposition of vertex-weighted graphs and fair
resource-exchange allocation, all in exact rational arithmetic."""

from .decomposition import (AlphaSearch, BottleneckPair, Decomposition,
                            bottleneck_decomposition, decomposition_json,
                            maximal_bottleneck, minimal_alpha_ratio,
                            search_iteration_bound, validate_decomposition)
from .fairness import (ConditionResult, FairnessReport, RatioLevels,
                       check_lex_optimal, check_market_equilibrium,
                       check_proportional_response, exchange_ratio_levels,
                       receiving_set, report_json)
from .flow import (SINK, SOURCE, UNBOUNDED, Arc, FlowNetwork, FlowResult,
                   build_alpha_network, build_perturbed_network,
                   corresponding_set, cut_capacity, max_flow, min_cut_maximal,
                   min_cut_minimal, verify_flow)
from .fmt import frac_str, parse_frac
from .graphs import (GraphFormatError, InvariantViolation, WeightedGraph,
                     alpha_ratio, graph_weight, induced_subgraph, is_connected,
                     neighborhood, parse_graph, serialize_graph, total_weight)
from .mechanism import (Allocation, EquilibriumBundle, allocation_from_json,
                        allocation_json, bd_allocation, bundle_json,
                        equilibrium_bundle, equilibrium_prices,
                        pair_allocation, utilities)
from .oracle import (brute_decomposition, brute_maximal_bottleneck,
                     brute_min_cut_value, brute_minimal_alpha,
                     random_connected_graph)

__version__ = "0.1.0"
