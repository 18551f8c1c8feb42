"""hogr: tree-based shortest-path distance oracles for undirected graphs."""

from .exact import (CapExceededError, DistanceVector, ExactOracle, PairSample,
                    UNREACHED, bfs, estimate_diameter, exact_all_pairs,
                    sample_pairs)
from .evaluate import DistortionRecord, ErrorProfile, emit_profile_csv, evaluate
from .graph import (DisconnectedGraphError, EmptyGraphError, Graph, GraphError,
                    GraphStats, ParseError, gen_flat_grid, gen_hyper_grid,
                    graph_stats, largest_component, load_edge_list, load_graph,
                    save_graph, write_edge_list)
from .hyperbolicity import DeltaEstimate, estimate_delta, four_point_delta
from .ranges import (DistanceRange, RangeOracle, RangeWidthReport, range_query,
                     range_width_report)
from .trees import (ContractionTree, KIND_GROMOV, KIND_HYPERBFS, KIND_STEINER,
                    SpanningTree, SteinerTree, TreeOracle, VertexOrdering,
                    build_gromov_tree, build_hyper_bfs, build_oracle,
                    build_steiner_tree, closeness_root, degree_ordering,
                    gromov_distance, load_oracle, save_oracle, select_roots,
                    steiner_distance, tree_distance)

__version__ = "0.1.0"
