"""hypham: k-uniform hypergraphs, positive codegree, Hamilton l-cycles.

Degree/neighbourhood primitives, l-path/l-cycle structures, the two-class
extremal construction and threshold constants, weighted perfect fractional
matchings with exact Farkas certificates, exact search oracles, greedy
connection/embedding/tiling procedures, and a batch experiment CLI.
"""

from ._engine import backend_name
from .connect import (
    ClusterGraph,
    PartialEmbedding,
    PeelResult,
    TileResult,
    build_cluster_graph,
    connect_ends,
    density,
    embed_partite_path,
    peel_to_positive_codegree,
    tile_paths,
)
from .errors import ContractViolation, HypHamError, QueryError
from .generators import complete_kgraph, extremal_construction, random_kgraph
from .hypergraph import Hypergraph
from .matching import (
    FarkasCertificate,
    OrderedEdgeVar,
    WeightedFractionalMatching,
    find_min_max_pfm,
    find_weighted_pfm,
    verify_certificate,
    verify_pfm,
)
from .params import ThresholdParams, threshold_params
from .paths import (
    LCycle,
    LPath,
    SisWitness,
    abstract_path,
    concatenate,
    cover_partition,
    ends,
    is_hamilton_lcycle,
    max_sis_in_path,
    unbalanced_partition,
    unbalanced_partition_pattern,
    validate_lpath,
)
from .search import (
    AbsorbStats,
    SearchBudget,
    SearchOutcome,
    find_hamilton_lcycle,
    find_lpath_between,
    is_absorbing_tuple,
    max_strong_independent_set,
    sample_absorbing_density,
)
from .textio import (
    dumps_hypergraph,
    frac_str,
    loads_hypergraph,
    parse_path_line,
    path_line,
    read_hypergraph,
    write_hypergraph,
)

__version__ = "0.1.0"
