"""End-to-end boundary-discovery pipeline.

Synthesizes a latent corpus from the generator, picks the most confidently
scored samples per attribute as training candidates, fits one linear boundary
per attribute (plus the quality axis), and derives entanglement reports and
manipulation diagnostics from the result.
"""

from dataclasses import dataclass

import numpy as np

from . import oracle, svm
from .errors import KTooLarge, QualityBoundaryMissing, ValidationError, ZeroVariance
from .geometry import ConditionSet, LatentCode, SemanticDirection, condition, distance, edit
from .oracle import GeneratorSpec
from .svm import LabeledDataset, SvmConfig, TrainedBoundary

SAMPLE_CHUNK = 8192
TRAIN_FRACTION = 0.7

DEFAULT_SAMPLE_COUNT = 50_000
DEFAULT_CANDIDATES_PER_SIDE = 2_000
PIPELINE_SVM_LAMBDA = 0.1  # dense-margin regime; see SvmConfig for the svm-level default


@dataclass(frozen=True, eq=False)
class SampleDataset:
    """Latents with their classifier scores, stored at wire precision (float32)."""

    latents: np.ndarray   # (count, d) float32
    scores: np.ndarray    # (count, m) float32
    space: str
    seed: int

    def __post_init__(self):
        if self.latents.ndim != 2 or self.scores.ndim != 2:
            raise ValidationError("latents and scores must be 2-D arrays")
        if self.latents.shape[0] != self.scores.shape[0]:
            raise ValidationError("latents and scores disagree on sample count")
        if self.latents.shape[0] < 1:
            raise ValidationError("dataset needs at least one sample")
        object.__setattr__(self, "latents", np.ascontiguousarray(self.latents, dtype=np.float32))
        object.__setattr__(self, "scores", np.ascontiguousarray(self.scores, dtype=np.float32))

    @property
    def count(self):
        return self.latents.shape[0]

    @property
    def d(self):
        return self.latents.shape[1]

    @property
    def m(self):
        return self.scores.shape[1]


@dataclass(frozen=True, eq=False)
class CandidateSplit:
    attribute: str
    train: LabeledDataset
    validation: LabeledDataset
    k: int


@dataclass(frozen=True, eq=False)
class BoundarySet:
    """Trained boundaries keyed by attribute name."""

    boundaries: dict
    space: str

    def __getitem__(self, name) -> TrainedBoundary:
        return self.boundaries[name]

    def __contains__(self, name):
        return name in self.boundaries

    def names(self):
        return list(self.boundaries)

    def direction(self, name) -> SemanticDirection:
        return self.boundaries[name].direction


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    attributes: tuple
    boundary_cosine: np.ndarray
    score_pearson: np.ndarray

    def to_dict(self):
        return {
            "attributes": list(self.attributes),
            "boundary_cosine": self.boundary_cosine.tolist(),
            "score_pearson": self.score_pearson.tolist(),
        }


def synthesize_dataset(gen: GeneratorSpec, count, seed) -> SampleDataset:
    """Sample `count` standard-normal latents and score them with the oracle.

    Chunked with per-chunk sub-seeds (seed, chunk_index); serial and parallel
    runs agree bit-exactly.  Latents are stored at float32 wire precision and
    scores are computed on the stored values.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    latents = np.empty((count, gen.d), dtype=np.float32)
    done = 0
    index = 0
    while done < count:
        n = min(SAMPLE_CHUNK, count - done)
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((int(seed), int(index))))
        )
        latents[done : done + n] = rng.standard_normal((n, gen.d)).astype(np.float32)
        done += n
        index += 1
    scores = oracle.score_batch(gen, latents.astype(np.float64)).astype(np.float32)
    return SampleDataset(latents=latents, scores=scores, space="Z", seed=int(seed))


def warp_dataset(ds: SampleDataset, gen: GeneratorSpec) -> SampleDataset:
    """The same samples expressed in W coordinates (scores unchanged)."""
    if ds.space != "Z":
        raise ValidationError("can only warp a Z-space dataset")
    warped = oracle.warp_values(gen, ds.latents.astype(np.float64)).astype(np.float32)
    return SampleDataset(latents=warped, scores=ds.scores, space="W", seed=ds.seed)


def _rank_scores(ds: SampleDataset, attr_scores):
    # ties broken by sample index ascending on both ends; negation is exact
    bottom = np.argsort(attr_scores, kind="stable")
    top = np.argsort(-attr_scores, kind="stable")
    return top, bottom


def select_candidates(ds: SampleDataset, attr_scores, k, split_seed, attribute="attr") -> CandidateSplit:
    """Label the k best-scored samples +1 and the k worst -1, then split 70/30."""
    k = int(k)
    if 2 * k > ds.count:
        raise KTooLarge(f"2k = {2 * k} exceeds dataset size {ds.count}")
    if k < 1:
        raise ValidationError("k must be >= 1")
    attr_scores = np.asarray(attr_scores)
    top, bottom = _rank_scores(ds, attr_scores)
    cand_idx = np.concatenate([top[:k], bottom[:k]])
    labels = np.concatenate([np.ones(k), -np.ones(k)])
    rng = np.random.default_rng(int(split_seed))
    perm = rng.permutation(2 * k)
    n_train = int(round(TRAIN_FRACTION * 2 * k))
    tr, va = perm[:n_train], perm[n_train:]
    X = ds.latents.astype(np.float64)
    return CandidateSplit(
        attribute=attribute,
        train=LabeledDataset(X[cand_idx[tr]], labels[tr], space=ds.space),
        validation=LabeledDataset(X[cand_idx[va]], labels[va], space=ds.space),
        k=k,
    )


def candidate_split_for_attribute(ds: SampleDataset, gen: GeneratorSpec, attr, k, split_seed):
    """Candidate split ranked by the stored classifier score of one attribute."""
    idx = gen.attribute_index(attr)
    return select_candidates(ds, ds.scores[:, idx], k, split_seed, attribute=attr)


@dataclass(frozen=True, eq=False)
class BoundaryFitStats:
    attribute: str
    train_accuracy: float
    val_accuracy: float
    full_set_accuracy: float


def fit_all_boundaries(
    ds: SampleDataset,
    gen: GeneratorSpec,
    k=DEFAULT_CANDIDATES_PER_SIDE,
    svm_config: SvmConfig | None = None,
    include_quality=True,
    seed=0,
):
    """Fit one boundary per attribute (plus the quality axis).

    Per-attribute candidate splits and SGD shuffles get independent sub-seeds
    of `seed`.  Returns (BoundarySet, list of BoundaryFitStats); validation
    accuracy is measured on the held-out 30% of candidates and full-set
    accuracy against the noiseless oracle labels of every sample.
    """
    names = list(gen.attributes) + (["quality"] if include_quality else [])
    X64 = ds.latents.astype(np.float64)
    boundaries = {}
    stats = []
    for pos, attr in enumerate(names):
        sub = np.random.SeedSequence((int(seed), pos)).generate_state(2)
        split_seed, sgd_seed = int(sub[0]), int(sub[1])
        if attr == "quality":
            # the quality axis has no classifier column; rank by the noiseless
            # signed quality coordinate (positive side renders clean)
            ranking = oracle.quality_scores(gen, X64).astype(np.float32)
            truth = np.where(ranking >= 0.0, 1.0, -1.0)
        else:
            ranking = ds.scores[:, gen.attribute_index(attr)]
            truth = oracle.label_batch(gen, X64, attr).astype(np.float64)
        split = select_candidates(ds, ranking, k, split_seed, attribute=attr)
        if svm_config is None:
            config = SvmConfig(lambda_reg=PIPELINE_SVM_LAMBDA, epochs=20, seed=sgd_seed)
        else:
            config = svm_config
        boundary = svm.fit(split.train, config, validation=split.validation, name=attr)
        full_acc = svm.accuracy(boundary, LabeledDataset(X64, truth, space=ds.space))
        boundaries[attr] = boundary
        stats.append(
            BoundaryFitStats(
                attribute=attr,
                train_accuracy=boundary.train_accuracy,
                val_accuracy=boundary.val_accuracy,
                full_set_accuracy=full_acc,
            )
        )
    return BoundarySet(boundaries=boundaries, space=ds.space), stats


def ground_truth_boundaries(gen: GeneratorSpec, include_quality=True) -> BoundarySet:
    """BoundarySet of the planted directions (for diagnostics and baselines)."""
    boundaries = {
        attr: TrainedBoundary(gen.ground_truth_direction(attr), 1.0, 1.0)
        for attr in gen.attributes
    }
    if include_quality:
        boundaries["quality"] = TrainedBoundary(gen.ground_truth_direction("quality"), 1.0, 1.0)
    return BoundarySet(boundaries=boundaries, space="Z")


def boundary_correlation(bs: BoundarySet, attributes) -> np.ndarray:
    """Pairwise cosine matrix of the attribute boundary normals."""
    attributes = list(attributes)
    if len(attributes) < 2:
        raise ValidationError("need at least two boundaries to correlate")
    N = np.stack([bs.direction(a).normal for a in attributes], axis=1)
    M = N.T @ N
    np.fill_diagonal(M, 1.0)
    return M


def score_correlation(ds: SampleDataset) -> np.ndarray:
    """Pearson correlation matrix of the per-attribute score columns."""
    if ds.count < 2:
        raise ValidationError("need at least two samples")
    S = ds.scores.astype(np.float64)
    std = S.std(axis=0)
    if np.any(std == 0.0):
        raise ZeroVariance(f"score columns {np.nonzero(std == 0.0)[0].tolist()} are constant")
    M = np.corrcoef(S, rowvar=False)
    np.fill_diagonal(M, 1.0)
    return np.clip(M, -1.0, 1.0)


def correlation_report(ds: SampleDataset, bs: BoundarySet, gen: GeneratorSpec) -> CorrelationReport:
    return CorrelationReport(
        attributes=tuple(gen.attributes),
        boundary_cosine=boundary_correlation(bs, gen.attributes),
        score_pearson=score_correlation(ds),
    )


# -- manipulation diagnostics -------------------------------------------------


@dataclass(frozen=True, eq=False)
class SweepPoint:
    alpha: float
    score: float
    identity_drift: float


@dataclass(frozen=True, eq=False)
class DistanceSweepReport:
    attribute: str
    points: tuple
    score_nondecreasing: bool

    def to_dict(self):
        return {
            "attribute": self.attribute,
            "points": [
                {"alpha": p.alpha, "score": p.score, "identity_drift": p.identity_drift}
                for p in self.points
            ],
            "score_nondecreasing": self.score_nondecreasing,
        }


def distance_sweep(gen: GeneratorSpec, boundary: SemanticDirection, z0: LatentCode, alphas) -> DistanceSweepReport:
    """Walk a latent code along a boundary normal and track score and identity.

    The walk starts from z0 projected onto the boundary (signed distance 0);
    each report row carries the noiseless attribute score and the identity
    drift relative to the start.
    """
    alphas = [float(a) for a in alphas]
    if any(not np.isfinite(a) for a in alphas):
        raise ValidationError("alphas must be finite")
    if alphas != sorted(alphas):
        raise ValidationError("alphas must be sorted ascending")
    idx = gen.attribute_index(boundary.name.split("|")[0])
    start = edit(z0, boundary, -distance(boundary, z0))
    id_start = np.asarray(oracle.face_params(gen, start).identity_features)
    points = []
    for a in alphas:
        z = edit(start, boundary, a)
        s = float(oracle.true_scores(gen, z)[idx])
        ident = np.asarray(oracle.face_params(gen, z).identity_features)
        points.append(SweepPoint(alpha=a, score=s, identity_drift=float(np.linalg.norm(ident - id_start))))
    scores = [p.score for p in points]
    nondec = all(b >= a - 1e-12 for a, b in zip(scores, scores[1:]))
    return DistanceSweepReport(attribute=boundary.name, points=tuple(points), score_nondecreasing=nondec)


NOISE_LEVEL_CLEAN = 0.05
ARTIFACT_MAX_STEPS = 10


def fix_artifact(gen: GeneratorSpec, bs: BoundarySet, z: LatentCode, step) -> LatentCode:
    """Push a latent code along the quality direction until it renders clean."""
    if "quality" not in bs:
        raise QualityBoundaryMissing("boundary set has no 'quality' entry")
    if not (step > 0):
        raise ValidationError(f"step must be positive, got {step}")
    quality = bs.direction("quality")
    current = z
    for _ in range(ARTIFACT_MAX_STEPS):
        if oracle.face_params(gen, current).noise_level <= NOISE_LEVEL_CLEAN:
            return current
        current = edit(current, quality, float(step))
    return current


@dataclass(frozen=True, eq=False)
class ConditionalEffect:
    """Score movements along a (possibly conditioned) direction."""

    direction: SemanticDirection
    primal_change: float              # max |delta primal score| over the sweep
    changes: dict                     # attribute -> max |delta score|

    def change(self, attr):
        return self.changes[attr]


def conditional_effect(
    gen: GeneratorSpec,
    bs: BoundarySet,
    attribute,
    conditions=(),
    z0: LatentCode | None = None,
    alphas=None,
) -> ConditionalEffect:
    """Measure per-attribute score changes along an edit direction.

    The direction is the attribute boundary normal, conditioned on the named
    condition boundaries when given.  Changes are measured per edit: the max
    over the alpha grid of |score(z0 + alpha p) - score(z0)|, from a start
    projected onto the primal boundary.
    """
    primal = bs.direction(attribute)
    if conditions:
        cond = ConditionSet(tuple(bs.direction(c) for c in conditions))
        direction = condition(primal, cond)
    else:
        direction = primal
    if alphas is None:
        alphas = np.linspace(-3.0, 3.0, 13)
    if z0 is None:
        z0 = LatentCode(np.zeros(gen.d), "Z")
    start = edit(z0, primal, -distance(primal, z0)) if distance(primal, z0) != 0.0 else z0
    base = oracle.true_scores(gen, start)
    deltas = np.zeros(gen.m)
    for a in alphas:
        s = oracle.true_scores(gen, edit(start, direction, float(a)))
        deltas = np.maximum(deltas, np.abs(s - base))
    by_attr = dict(zip(gen.attributes, deltas))
    return ConditionalEffect(
        direction=direction,
        primal_change=float(by_attr[attribute]),
        changes={name: float(v) for name, v in by_attr.items()},
    )
