"""Belief-network decomposition into acyclic hypergraphs of maximal cliques,
optimised for the total number of clique states."""

from ._accel import backend
from .elim import (elimination_cliques, elimination_graph, fill_in, is_chordal,
                   maximal_cliques_chordal)
from .errors import (DecompError, InfeasibleError, NetworkError, NotChordalError,
                     OrderingError, ParseError, StateOverflowError)
from .heur import (HEURISTICS, lex_search_ordering, max_cardinality_ordering,
                   min_deficiency_ordering, min_degree_ordering)
from .hyper import (Hypergraph, JunctionTree, build_junction_tree, graham_acyclic,
                    is_conformal, parse_hypergraph, propagation_delay, reduce,
                    running_intersection_ordering, two_section)
from .model import (BeliefNetwork, ConditionalConstraint, Ordering, UndirectedGraph,
                    Variable, moral_graph, neighbor_set, parse_graph, parse_network,
                    random_graph)
from .optimize import (AnnealConfig, Decomposition, anneal, compare_report,
                       criterion_scores, exact_optimal, mtns_cost)

__version__ = "0.1.0"
