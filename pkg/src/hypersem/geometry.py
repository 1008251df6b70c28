"""Pure vector geometry of the latent space.

Latent codes are points of R^d tagged with the space they live in (Z or W).
Semantic directions are unit hyperplane normals; editing moves a code along a
normal, conditioning removes the component of a normal that lies in the span
of other normals so the conditioned attributes stay fixed.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateProjection,
    DimensionMismatch,
    NonFinite,
    OutOfRange,
    SpaceMismatch,
    UnitNormViolation,
    ZeroVector,
)

SPACES = ("Z", "W")

MIN_DIM = 4  # the concentration bounds assume d >= 4

_UNIT_TOL = 1e-9
_GRAM_EIG_FLOOR = 1e-6


def _as_vector(values):
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFinite("vector has non-finite entries")
    return v


class LatentCode:
    """Immutable point in latent space.

    Editing the same code repeatedly along one direction accumulates a single
    coefficient per direction and re-evaluates from the original base vector,
    so +alpha followed by -alpha restores the original bits exactly.
    """

    __slots__ = ("values", "space", "_base", "_dirs", "_coeffs")

    def __init__(self, values, space="Z", _trail=None):
        v = _as_vector(values)
        if v.size < MIN_DIM:
            raise DimensionMismatch(f"latent dimension must be >= {MIN_DIM}, got {v.size}")
        if space not in SPACES:
            raise SpaceMismatch(f"unknown space {space!r}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "space", space)
        if _trail is None:
            _trail = (v, (), ())
        object.__setattr__(self, "_base", _trail[0])
        object.__setattr__(self, "_dirs", _trail[1])
        object.__setattr__(self, "_coeffs", _trail[2])

    def __setattr__(self, name, value):
        raise AttributeError("LatentCode is immutable")

    @property
    def dim(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, LatentCode):
            return NotImplemented
        return self.space == other.space and self.values.tobytes() == other.values.tobytes()

    def __hash__(self):
        return hash((self.space, self.values.tobytes()))

    def __repr__(self):
        return f"LatentCode(dim={self.dim}, space={self.space!r})"


@dataclass(frozen=True)
class DirectionMeta:
    """Training provenance of a discovered direction."""

    seed: int = 0
    train_count: int = 0
    val_accuracy: float | None = None


@dataclass(frozen=True, eq=False)
class SemanticDirection:
    """Unit normal of a semantic hyperplane plus the classifier intercept.

    The intercept participates in classification only; edits and conditioning
    use the normal alone.
    """

    name: str
    normal: np.ndarray
    intercept: float = 0.0
    space: str = "Z"
    meta: DirectionMeta = field(default_factory=DirectionMeta)

    def __post_init__(self):
        n = _as_vector(self.normal).copy()
        norm = float(np.linalg.norm(n))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise UnitNormViolation(f"direction {self.name!r} has norm {norm}, expected 1")
        n.setflags(write=False)
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "intercept", float(self.intercept))
        if self.space not in SPACES:
            raise SpaceMismatch(f"unknown space {self.space!r}")

    @property
    def dim(self):
        return self.normal.size


@dataclass(frozen=True, eq=False)
class ConditionSet:
    """Ordered, non-degenerate collection of condition directions."""

    directions: tuple

    def __post_init__(self):
        dirs = tuple(self.directions)
        if not dirs:
            raise DegenerateProjection("condition set is empty")
        names = [d.name for d in dirs]
        if len(set(names)) != len(names):
            raise DegenerateProjection(f"duplicate condition names: {names}")
        d0 = dirs[0]
        for d in dirs[1:]:
            if d.dim != d0.dim:
                raise DimensionMismatch("condition directions differ in dimension")
            if d.space != d0.space:
                raise SpaceMismatch("condition directions differ in space")
        C = np.stack([d.normal for d in dirs], axis=1)
        gram = C.T @ C
        min_eig = float(np.linalg.eigvalsh(gram)[0])
        if min_eig <= _GRAM_EIG_FLOOR:
            raise DegenerateProjection(
                f"condition normals are nearly dependent (min Gram eigenvalue {min_eig:.3e})"
            )
        object.__setattr__(self, "directions", dirs)

    @property
    def space(self):
        return self.directions[0].space

    @property
    def dim(self):
        return self.directions[0].dim

    def matrix(self):
        """Condition normals stacked as columns, shape (d, n_conditions)."""
        return np.stack([d.normal for d in self.directions], axis=1)


def normalize(v):
    """Scale a vector to unit length; rejects (near-)zero input."""
    v = _as_vector(v)
    norm = float(np.linalg.norm(v))
    if norm <= 1e-12:
        raise ZeroVector(f"cannot normalize vector with norm {norm}")
    return v / norm


def _check_pair(n: SemanticDirection, z: LatentCode):
    if n.dim != z.dim:
        raise DimensionMismatch(f"direction dim {n.dim} vs latent dim {z.dim}")
    if n.space != z.space:
        raise SpaceMismatch(f"direction in {n.space}, latent in {z.space}")


def distance(n: SemanticDirection, z: LatentCode) -> float:
    """Signed offset of a latent code from the hyperplane through the origin."""
    _check_pair(n, z)
    return float(n.normal @ z.values)


def edit(z: LatentCode, n: SemanticDirection, alpha: float) -> LatentCode:
    """Move a latent code along a unit normal: z + alpha * n."""
    _check_pair(n, z)
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise NonFinite(f"alpha is {alpha}")
    key = n.normal.tobytes()
    dirs = list(z._dirs)
    coeffs = list(z._coeffs)
    for i, d in enumerate(dirs):
        if d.tobytes() == key:
            coeffs[i] = coeffs[i] + alpha
            break
    else:
        dirs.append(n.normal)
        coeffs.append(alpha)
    values = z._base.copy()
    for d, c in zip(dirs, coeffs):
        if c != 0.0:
            values += c * d
    return LatentCode(values, z.space, _trail=(z._base, tuple(dirs), tuple(coeffs)))


def interpolate(z1: LatentCode, z2: LatentCode, t: float) -> LatentCode:
    """Linear interpolation (1-t)*z1 + t*z2 for t in [0, 1]."""
    if z1.dim != z2.dim:
        raise DimensionMismatch(f"latent dims differ: {z1.dim} vs {z2.dim}")
    if z1.space != z2.space:
        raise SpaceMismatch(f"latent spaces differ: {z1.space} vs {z2.space}")
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise OutOfRange(f"t must lie in [0, 1], got {t}")
    return LatentCode((1.0 - t) * z1.values + t * z2.values, z1.space)


def cosine(n1: SemanticDirection, n2: SemanticDirection) -> float:
    """Cosine similarity of two unit normals."""
    if n1.dim != n2.dim:
        raise DimensionMismatch(f"direction dims differ: {n1.dim} vs {n2.dim}")
    return float(np.clip(n1.normal @ n2.normal, -1.0, 1.0))


def condition(primal: SemanticDirection, conditions: ConditionSet) -> SemanticDirection:
    """Project the conditioned components out of a primal direction.

    Solves the least-squares projection onto the span of the condition
    normals and removes it, then renormalizes.  A second projection pass
    keeps the residual orthogonal to every condition at working precision.
    """
    if conditions.dim != primal.dim:
        raise DimensionMismatch(
            f"primal dim {primal.dim} vs condition dim {conditions.dim}"
        )
    if conditions.space != primal.space:
        raise SpaceMismatch(
            f"primal in {primal.space}, conditions in {conditions.space}"
        )
    C = conditions.matrix()
    gram = C.T @ C
    r = primal.normal - C @ np.linalg.solve(gram, C.T @ primal.normal)
    r = r - C @ np.linalg.solve(gram, C.T @ r)
    if float(np.linalg.norm(r)) <= 1e-9:
        raise DegenerateProjection(
            f"direction {primal.name!r} lies in the span of its conditions"
        )
    name = primal.name + "|" + ",".join(d.name for d in conditions.directions)
    return SemanticDirection(
        name=name,
        normal=normalize(r),
        intercept=0.0,
        space=primal.space,
        meta=primal.meta,
    )
