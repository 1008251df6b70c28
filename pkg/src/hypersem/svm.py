"""Linear soft-margin SVM trained with stochastic subgradient descent.

Minimizes the primal objective

    (1/N) sum_i max(0, 1 - y_i (w.x_i + b)) + lambda_reg * ||w||^2

with Pegasos-style steps eta_t = 1/(lambda_reg * t), tail-averaged over the
final half of the iterates, followed by an exact one-dimensional minimization
of the hinge in the intercept.  Fully deterministic given (dataset, config).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyDataset, SingleClass, ValidationError
from .geometry import DirectionMeta, SemanticDirection


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Vectors with +/-1 labels, all in one latent space."""

    X: np.ndarray
    y: np.ndarray
    space: str = "Z"

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if X.ndim != 2:
            raise DimensionMismatch(f"X must be 2-D, got shape {X.shape}")
        if y.shape != (X.shape[0],):
            raise DimensionMismatch(f"y shape {y.shape} does not match {X.shape[0]} rows")
        if X.shape[0] == 0:
            raise EmptyDataset("dataset has no points")
        if not np.all(np.isfinite(X)):
            raise ValidationError("dataset contains non-finite vectors")
        if not np.all(np.isin(y, (-1.0, 1.0))):
            raise ValidationError("labels must be -1 or +1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def dim(self):
        return self.X.shape[1]

    def __len__(self):
        return self.X.shape[0]


@dataclass(frozen=True)
class SvmConfig:
    lambda_reg: float = 1e-4
    epochs: int = 20
    seed: int = 0
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.lambda_reg <= 0:
            raise ValidationError(f"lambda_reg must be positive, got {self.lambda_reg}")
        if self.epochs < 1:
            raise ValidationError(f"epochs must be >= 1, got {self.epochs}")


@dataclass(frozen=True, eq=False)
class TrainedBoundary:
    direction: SemanticDirection
    train_accuracy: float
    val_accuracy: float | None = None


def hinge_objective(X, y, w, b, lambda_reg):
    margins = 1.0 - y * (X @ w + b)
    return float(np.mean(np.maximum(0.0, margins)) + lambda_reg * (w @ w))


def _polish_intercept(X, y, w):
    # The hinge is convex piecewise-linear in b with breakpoints t_i = y_i - w.x_i;
    # the minimizer is where the subgradient crosses zero.  Plateau midpoint keeps
    # the result symmetric under label negation.
    t = y - X @ w
    order = np.argsort(t, kind="stable")
    ts, ys = t[order], y[order]
    n = ts.size
    pos_after = np.sum(ys > 0) - np.cumsum(ys > 0)
    neg_upto = np.cumsum(ys < 0)
    slope = neg_upto - pos_after  # subgradient on the open segment right of ts[i]
    nonneg = np.nonzero(slope >= 0)[0]
    if nonneg.size == 0:
        return float(ts[-1])
    i = int(nonneg[0])
    if slope[i] > 0:
        return float(ts[i])
    j = i
    while j + 1 < n and slope[j + 1] == 0:
        j += 1
    hi = ts[j + 1] if j + 1 < n else ts[j]
    return float((ts[i] + hi) / 2.0)


def fit(train: LabeledDataset, config: SvmConfig, validation: LabeledDataset | None = None,
        name: str = "boundary") -> TrainedBoundary:
    """Train a boundary on labeled latent vectors.

    Returns the unit-normalized primal solution; ``validation`` fills the
    held-out accuracy when provided.
    """
    X, y = train.X, train.y
    if np.all(y == y[0]):
        raise SingleClass("training labels are all identical")
    n, d = X.shape
    lam = config.lambda_reg
    rng = np.random.default_rng(config.seed)

    w = np.zeros(d)
    b = 0.0
    t = 0
    w_sum = np.zeros(d)
    n_avg = 0
    avg_from = config.epochs // 2
    prev_obj = None
    for epoch in range(config.epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            violated = y[i] * (X[i] @ w + b) < 1.0
            w *= max(0.0, 1.0 - 2.0 / t)  # shrink from the 2*lam*w regularizer subgradient
            if violated:
                w += eta * y[i] * X[i]
                b += y[i] / t
            if epoch >= avg_from:
                w_sum += w
                n_avg += 1
        obj = hinge_objective(X, y, w, b, lam)
        if prev_obj is not None and abs(prev_obj - obj) < config.tolerance and epoch >= avg_from:
            break
        prev_obj = obj

    if n_avg:
        w = w_sum / n_avg
    b = _polish_intercept(X, y, w)

    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        # all margins satisfied from the zero vector; fall back to the class-mean gap
        w = X[y > 0].mean(axis=0) - X[y < 0].mean(axis=0)
        norm = float(np.linalg.norm(w))
    normal = w / norm
    intercept = b / norm

    direction = SemanticDirection(
        name=name,
        normal=normal,
        intercept=intercept,
        space=train.space,
        meta=DirectionMeta(seed=config.seed, train_count=n, val_accuracy=None),
    )
    boundary = TrainedBoundary(
        direction=direction,
        train_accuracy=accuracy(TrainedBoundary(direction, 0.0), train),
    )
    if validation is not None:
        val_acc = accuracy(boundary, validation)
        direction = SemanticDirection(
            name=name,
            normal=normal,
            intercept=intercept,
            space=train.space,
            meta=DirectionMeta(seed=config.seed, train_count=n, val_accuracy=val_acc),
        )
        boundary = TrainedBoundary(direction, boundary.train_accuracy, val_acc)
    return boundary


def classify(boundary: TrainedBoundary, z) -> int:
    """Side of the boundary: sign(normal.z + intercept), with sign(0) -> +1."""
    d = boundary.direction
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (d.dim,):
        raise DimensionMismatch(f"vector shape {z.shape} vs boundary dim {d.dim}")
    return 1 if d.normal @ z + d.intercept >= 0.0 else -1


def decision_values(boundary: TrainedBoundary, X) -> np.ndarray:
    d = boundary.direction
    X = np.asarray(X, dtype=np.float64)
    if X.shape[-1] != d.dim:
        raise DimensionMismatch(f"vectors of dim {X.shape[-1]} vs boundary dim {d.dim}")
    return X @ d.normal + d.intercept


def accuracy(boundary: TrainedBoundary, data: LabeledDataset) -> float:
    """Fraction of points whose predicted side matches the label."""
    if len(data) == 0:
        raise EmptyDataset("cannot score an empty dataset")
    pred = np.where(decision_values(boundary, data.X) >= 0.0, 1.0, -1.0)
    return float(np.mean(pred == data.y))
