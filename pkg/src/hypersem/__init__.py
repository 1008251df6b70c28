"""Latent-space semantic editing workbench.

Discovers linear attribute boundaries in a Gaussian latent space with a
from-scratch linear SVM, edits latent codes along (conditionally projected)
normal directions, measures attribute entanglement two ways, verifies the
concentration-of-measure properties the editing story rests on, and renders
every latent code as a procedural SVG face through an analytic generator.
"""

from .concentration import MonteCarloReport, annulus_mc, property2_mc, sphere_slab_mc
from .errors import HypersemError
from .faces import FaceParams, render
from .geometry import (
    ConditionSet,
    DirectionMeta,
    LatentCode,
    SemanticDirection,
    condition,
    cosine,
    distance,
    edit,
    interpolate,
    normalize,
)
from .oracle import (
    DEFAULT_ATTRIBUTES,
    DEFAULT_GRAM,
    GeneratorSpec,
    InversionResult,
    face_params,
    invert,
    label,
    make_generator,
    score,
    true_scores,
    unwarp,
    warp,
)
from .pipeline import (
    BoundarySet,
    CandidateSplit,
    CorrelationReport,
    SampleDataset,
    boundary_correlation,
    conditional_effect,
    correlation_report,
    distance_sweep,
    fit_all_boundaries,
    fix_artifact,
    ground_truth_boundaries,
    score_correlation,
    select_candidates,
    synthesize_dataset,
    warp_dataset,
)
from .session import ManipulationRequest, SessionState, api_edit, sample_session
from .store import BoundaryStore, load_dataset, load_generator, save_dataset, save_generator
from .svm import LabeledDataset, SvmConfig, TrainedBoundary, accuracy, classify, fit

__version__ = "0.1.0"

__all__ = [
    "annulus_mc",
    "api_edit",
    "accuracy",
    "BoundarySet",
    "BoundaryStore",
    "CandidateSplit",
    "ConditionSet",
    "CorrelationReport",
    "DEFAULT_ATTRIBUTES",
    "DEFAULT_GRAM",
    "DirectionMeta",
    "FaceParams",
    "GeneratorSpec",
    "HypersemError",
    "InversionResult",
    "LabeledDataset",
    "LatentCode",
    "ManipulationRequest",
    "MonteCarloReport",
    "SampleDataset",
    "SemanticDirection",
    "SessionState",
    "SvmConfig",
    "TrainedBoundary",
    "boundary_correlation",
    "classify",
    "condition",
    "conditional_effect",
    "correlation_report",
    "cosine",
    "distance",
    "distance_sweep",
    "edit",
    "face_params",
    "fit",
    "fit_all_boundaries",
    "fix_artifact",
    "ground_truth_boundaries",
    "interpolate",
    "invert",
    "label",
    "load_dataset",
    "load_generator",
    "make_generator",
    "normalize",
    "property2_mc",
    "render",
    "sample_session",
    "save_dataset",
    "save_generator",
    "score",
    "score_correlation",
    "select_candidates",
    "sphere_slab_mc",
    "synthesize_dataset",
    "true_scores",
    "unwarp",
    "warp",
    "warp_dataset",
]
