"""Weighted raw-stress MDS: in-sample SMACOF, out-of-sample embedding, and
dimension selection.  Hot kernels run from a compiled extension when built,
with a pure numpy fallback (see `jofcmatch.embedding.BACKEND`)."""

from ._backend import BACKEND, get_kernels
from .dimension import DimensionSelectionError, select_dimension, seed_recovery_fraction
from .oos import oos_embed
from .smacof import (
    EmbeddingConfig,
    EmbeddingError,
    SmacofOptions,
    StressReport,
    embed_omnibus,
    format_stress_report,
    jofc_weights,
    save_embedding_csv,
    smacof,
    stress,
    stress_gradient,
    stress_report,
)

__all__ = [
    "BACKEND",
    "DimensionSelectionError",
    "EmbeddingConfig",
    "EmbeddingError",
    "SmacofOptions",
    "StressReport",
    "embed_omnibus",
    "format_stress_report",
    "get_kernels",
    "jofc_weights",
    "oos_embed",
    "save_embedding_csv",
    "seed_recovery_fraction",
    "select_dimension",
    "smacof",
    "stress",
    "stress_gradient",
    "stress_report",
]
