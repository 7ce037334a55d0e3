"""Seeded graph matching by joint embedding of two graphs.

Pipeline: within-graph dissimilarities -> omnibus matrix over the seeds ->
weighted raw-stress MDS -> out-of-sample embedding of unseeded vertices ->
assignment.  A Frank-Wolfe relaxation baseline and Monte Carlo simulation
experiments are included.
"""

from .assignment import (
    MatchEvaluation,
    distance_costs,
    edge_disagreement,
    evaluate_match,
    gap_match,
    hungarian,
)
from .dissimilarity import (
    compute_dissimilarity,
    normalize,
    shortest_path_dissimilarity,
    weighted_dice_dissimilarity,
)
from .embedding import (
    BACKEND,
    EmbeddingConfig,
    SmacofOptions,
    embed_omnibus,
    jofc_weights,
    oos_embed,
    select_dimension,
    smacof,
)
from .experiments import (
    ExperimentResult,
    run_bitflip_experiment,
    run_clone_experiment,
    save_aggregates_csv,
    save_replicates_csv,
)
from .graph import (
    BitFlipParams,
    CloneParams,
    Graph,
    bit_flip,
    clone_vertices,
    load_edge_list,
    sample_connected_component,
    sample_er,
    save_edge_list,
)
from .pipeline import JofcResult, PipelineConfig, jofc_match
from .seeding import Matching, OmnibusMatrix, Seeding, build_omnibus, impute_delta
from .sgm import SgmResult, sgm

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitFlipParams",
    "CloneParams",
    "EmbeddingConfig",
    "ExperimentResult",
    "Graph",
    "JofcResult",
    "MatchEvaluation",
    "Matching",
    "OmnibusMatrix",
    "PipelineConfig",
    "Seeding",
    "SgmResult",
    "SmacofOptions",
    "bit_flip",
    "build_omnibus",
    "clone_vertices",
    "compute_dissimilarity",
    "distance_costs",
    "edge_disagreement",
    "embed_omnibus",
    "evaluate_match",
    "gap_match",
    "hungarian",
    "impute_delta",
    "jofc_match",
    "jofc_weights",
    "load_edge_list",
    "normalize",
    "oos_embed",
    "run_bitflip_experiment",
    "run_clone_experiment",
    "sample_connected_component",
    "sample_er",
    "save_aggregates_csv",
    "save_edge_list",
    "save_replicates_csv",
    "select_dimension",
    "sgm",
    "shortest_path_dissimilarity",
    "smacof",
    "weighted_dice_dissimilarity",
]
