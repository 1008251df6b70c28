"""Analytic synthetic generator and attribute scorer.

The generator owns a set of planted unit normals N* (one per attribute) whose
pairwise cosines match a configured Gram matrix, a quality axis whose negative
side renders artifacts, and an identity subspace that no planted direction can
touch.  Attribute scores saturate through tanh so that editing is linear near
a boundary and degrades far away, and a keyed pseudo-noise term stands in for
classifier error.  A fixed invertible nonlinear warp maps Z to a second space
W in which the score function is exactly linear.

Layout of the planted frame: semantic normals and the quality axis live in the
first d-k coordinates, identity directions in the last k.  The disjoint
support makes identity features bit-exactly invariant under ground-truth
edits.
"""

import hashlib
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import ndtri

from .errors import (
    DimensionTooSmall,
    GramNotRepairable,
    NoConvergence,
    SpaceMismatch,
    UnknownAttribute,
    ValidationError,
)
from .faces import FaceParams
from .geometry import LatentCode, SemanticDirection

DEFAULT_ATTRIBUTES = ("pose", "smile", "age", "gender", "eyeglasses")

# Measured boundary-correlation structure used as the default entanglement
# target: pose/smile near-orthogonal, age/gender/eyeglasses mutually coupled.
DEFAULT_GRAM = np.array(
    [
        [1.00, -0.04, -0.06, -0.05, -0.04],
        [-0.04, 1.00, 0.04, -0.10, -0.05],
        [-0.06, 0.04, 1.00, 0.49, 0.38],
        [-0.05, -0.10, 0.49, 1.00, 0.52],
        [-0.04, -0.05, 0.38, 0.52, 1.00],
    ]
)

DEFAULT_LAMBDA = 0.6  # per-attribute score slope; saturation |s|>=0.995 at offset ~5
DEFAULT_IDENTITY_DIMS = 8
DEFAULT_NOISE_SIGMA = 0.1

_GRAM_TOL = 1e-9
_PSD_MAX_ITERS = 100


@dataclass(frozen=True, eq=False)
class GeneratorSpec:
    """Frozen description of one synthetic generator instance."""

    d: int
    attributes: tuple
    N_star: np.ndarray          # (d, m) unit ground-truth normals
    Lambda_star: np.ndarray     # (m,) positive score slopes
    quality_dir: np.ndarray     # (d,) unit artifact axis
    identity_dirs: np.ndarray   # (d, k) orthonormal identity frame
    warp_scale: float
    warp_rotation: np.ndarray   # (d, d) orthogonal
    noise_sigma: float
    seed: int
    gram: np.ndarray            # (m, m) realized target Gram
    space: str = "Z"            # space in which scores are linear

    @property
    def m(self):
        return len(self.attributes)

    @property
    def k(self):
        return self.identity_dirs.shape[1]

    def attribute_index(self, name):
        try:
            return self.attributes.index(name)
        except ValueError:
            raise UnknownAttribute(
                f"unknown attribute {name!r}; generator knows {list(self.attributes)}"
            ) from None

    def ground_truth_direction(self, name) -> SemanticDirection:
        """Planted unit normal for an attribute (or 'quality')."""
        if name == "quality":
            normal = self.quality_dir
        else:
            normal = self.N_star[:, self.attribute_index(name)]
        return SemanticDirection(name=name, normal=normal, intercept=0.0, space="Z")

    def config(self):
        """Serializable configuration; matrices regenerate from the seed."""
        return {
            "attributes": list(self.attributes),
            "gram": self.gram.tolist(),
            "d": self.d,
            "k": self.k,
            "lambdas": self.Lambda_star.tolist(),
            "noise_sigma": self.noise_sigma,
            "seed": self.seed,
            "warp_scale": self.warp_scale,
            "space": self.space,
        }


def _nearest_correlation(G, max_iters=_PSD_MAX_ITERS):
    """Alternating projections onto the PSD cone and the unit diagonal."""
    Y = G.copy()
    delta = np.zeros_like(G)
    for _ in range(max_iters):
        R = Y - delta
        eigval, eigvec = np.linalg.eigh(R)
        X = (eigvec * np.maximum(eigval, 0.0)) @ eigvec.T
        delta = X - R
        Y = X.copy()
        np.fill_diagonal(Y, 1.0)
        if np.linalg.eigvalsh(Y)[0] >= -1e-12 and np.max(np.abs(np.diag(X) - 1.0)) < 1e-12:
            return Y
    raise GramNotRepairable(
        f"nearest-PSD projection did not converge in {max_iters} iterations"
    )


def make_generator(
    attributes=DEFAULT_ATTRIBUTES,
    gram=None,
    d=512,
    seed=0,
    noise_sigma=DEFAULT_NOISE_SIGMA,
    lambdas=None,
    identity_dims=DEFAULT_IDENTITY_DIMS,
    warp_scale=1.0,
    space="Z",
) -> GeneratorSpec:
    """Build a generator whose planted normals realize the target Gram.

    The Gram is repaired to the nearest PSD matrix with unit diagonal when
    needed, factored, and embedded through a seeded random orthonormal frame.
    Deterministic given the seed.
    """
    attributes = tuple(attributes)
    m = len(attributes)
    if len(set(attributes)) != m or m == 0:
        raise ValidationError(f"attribute names must be unique and non-empty: {attributes}")
    k = int(identity_dims)
    if d < m + k + 1:
        raise DimensionTooSmall(f"need d >= m+k+1 = {m + k + 1}, got {d}")
    if not (0.0 < warp_scale <= 3.0):
        raise ValidationError(f"warp_scale must lie in (0, 3], got {warp_scale}")
    if space not in ("Z", "W"):
        raise SpaceMismatch(f"unknown generator space {space!r}")

    G = DEFAULT_GRAM.copy() if gram is None else np.asarray(gram, dtype=np.float64).copy()
    if G.shape != (m, m):
        raise ValidationError(f"Gram must be {m}x{m}, got {G.shape}")
    if np.max(np.abs(G - G.T)) > _GRAM_TOL or np.max(np.abs(np.diag(G) - 1.0)) > _GRAM_TOL:
        raise ValidationError("Gram must be symmetric with unit diagonal")
    if np.linalg.eigvalsh(G)[0] < -_GRAM_TOL:
        G = _nearest_correlation(G)

    eigval, eigvec = np.linalg.eigh(G)
    V = np.sqrt(np.maximum(eigval, 0.0))[:, None] * eigvec.T  # V.T @ V == G

    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 0)))
    sem_frame, _ = np.linalg.qr(rng.standard_normal((d - k, m + 1)))
    N_star = np.zeros((d, m))
    N_star[: d - k, :] = sem_frame[:, :m] @ V
    N_star /= np.linalg.norm(N_star, axis=0, keepdims=True)
    quality = np.zeros(d)
    quality[: d - k] = sem_frame[:, m]
    id_frame, _ = np.linalg.qr(rng.standard_normal((k, k)))
    identity = np.zeros((d, k))
    identity[d - k :, :] = id_frame
    rotation, _ = np.linalg.qr(rng.standard_normal((d, d)))

    if lambdas is None:
        lam = np.full(m, DEFAULT_LAMBDA)
    else:
        lam = np.asarray(lambdas, dtype=np.float64)
        if lam.shape != (m,) or np.any(lam <= 0):
            raise ValidationError("lambdas must be m positive reals")

    return GeneratorSpec(
        d=int(d),
        attributes=attributes,
        N_star=N_star,
        Lambda_star=lam,
        quality_dir=quality,
        identity_dirs=identity,
        warp_scale=float(warp_scale),
        warp_rotation=rotation,
        noise_sigma=float(noise_sigma),
        seed=int(seed),
        gram=G,
        space=space,
    )


def _rows(gen, Z, space="Z"):
    Z = np.asarray(Z, dtype=np.float64)
    single = Z.ndim == 1
    if single:
        Z = Z[None, :]
    if Z.shape[1] != gen.d:
        raise SpaceMismatch(f"latent dim {Z.shape[1]} vs generator dim {gen.d}")
    return Z, single


def _score_coordinates(gen, Z):
    """Coordinates the score function is linear in (warped when space=W)."""
    if gen.space == "W":
        return warp_values(gen, Z)
    return Z


def _classifier_noise(gen, Z):
    """Deterministic pseudo-noise keyed on (generator seed, latent bytes, attribute)."""
    n, m = Z.shape[0], gen.m
    if gen.noise_sigma == 0.0:
        return np.zeros((n, m))
    key = int(gen.seed).to_bytes(8, "little", signed=False)
    blocks = (m + 7) // 8
    raw = np.empty((n, blocks * 8), dtype=np.uint64)
    for i in range(n):
        payload = Z[i].tobytes()
        for blk in range(blocks):
            digest = hashlib.blake2b(
                payload + blk.to_bytes(4, "little"), key=key, digest_size=64
            ).digest()
            raw[i, blk * 8 : (blk + 1) * 8] = np.frombuffer(digest, dtype="<u8")
    uniform = (raw[:, :m].astype(np.float64) + 0.5) / 2.0**64
    return gen.noise_sigma * ndtri(uniform)


def true_score_batch(gen, Z) -> np.ndarray:
    """Noiseless saturating scores tanh(lambda_i * n_i . x), rows of Z."""
    Z, single = _rows(gen, Z)
    s = np.tanh((_score_coordinates(gen, Z) @ gen.N_star) * gen.Lambda_star)
    return s[0] if single else s


def linear_score_batch(gen, Z) -> np.ndarray:
    """Diagnostic linear-regime scores lambda_i * n_i . x (no saturation, no noise)."""
    Z, single = _rows(gen, Z)
    s = (_score_coordinates(gen, Z) @ gen.N_star) * gen.Lambda_star
    return s[0] if single else s


def score_batch(gen, Z) -> np.ndarray:
    """Classifier-style scores: saturating plus keyed pseudo-noise."""
    Z, single = _rows(gen, Z)
    s = np.tanh((_score_coordinates(gen, Z) @ gen.N_star) * gen.Lambda_star)
    s = s + _classifier_noise(gen, Z)
    return s[0] if single else s


def quality_scores(gen, Z) -> np.ndarray:
    """Noiseless signed quality coordinate; the positive side renders clean."""
    Z, single = _rows(gen, Z)
    q = Z @ gen.quality_dir
    return float(q[0]) if single else q


def _require_z(gen, z: LatentCode):
    if z.space != "Z":
        raise SpaceMismatch(f"generator consumes Z-space codes, got {z.space}")
    if z.dim != gen.d:
        raise SpaceMismatch(f"latent dim {z.dim} vs generator dim {gen.d}")


def score(gen, z: LatentCode) -> np.ndarray:
    """Attribute score vector for one latent code (classifier surrogate)."""
    _require_z(gen, z)
    return score_batch(gen, z.values)


def true_scores(gen, z: LatentCode) -> np.ndarray:
    _require_z(gen, z)
    return true_score_batch(gen, z.values)


def label(gen, z, attr) -> int:
    """Ground-truth side of the attribute boundary; sign(0) -> +1."""
    idx = gen.attribute_index(attr)
    values = z.values if isinstance(z, LatentCode) else np.asarray(z, dtype=np.float64)
    x = _score_coordinates(gen, values[None, :])[0]
    return 1 if x @ gen.N_star[:, idx] >= 0.0 else -1


def label_batch(gen, Z, attr) -> np.ndarray:
    idx = gen.attribute_index(attr)
    Z, _ = _rows(gen, Z)
    raw = _score_coordinates(gen, Z) @ gen.N_star[:, idx]
    return np.where(raw >= 0.0, 1, -1)


def face_params(gen, z: LatentCode) -> FaceParams:
    """Deterministic renderable description of the face at a latent code."""
    _require_z(gen, z)
    s = dict(zip(gen.attributes, true_score_batch(gen, z.values)))
    pose = s.get("pose", 0.0)
    smile = s.get("smile", 0.0)
    age = s.get("age", 0.0)
    gender = s.get("gender", 0.0)
    eyeglasses = s.get("eyeglasses", 0.0)
    return FaceParams(
        yaw=45.0 * pose,
        mouth_curve=smile,
        wrinkle_density=(age + 1.0) / 2.0,
        jaw_width=1.0 + 0.4 * gender,
        glasses_opacity=float(np.clip((eyeglasses + 1.0) / 2.0, 0.0, 1.0)),
        identity_features=tuple(gen.identity_dirs.T @ z.values),
        noise_level=float(np.clip(-(gen.quality_dir @ z.values) / 5.0, 0.0, 1.0)),
    )


# -- warp between Z and W -----------------------------------------------------

def warp_values(gen, Z) -> np.ndarray:
    """Componentwise saturating warp followed by a fixed rotation."""
    Z = np.asarray(Z, dtype=np.float64)
    c = gen.warp_scale
    return (np.tanh(c * Z) / c) @ gen.warp_rotation.T


def unwarp_values(gen, W) -> np.ndarray:
    W = np.asarray(W, dtype=np.float64)
    c = gen.warp_scale
    inner = c * (W @ gen.warp_rotation)
    if np.max(np.abs(inner)) >= 1.0:
        raise ValidationError(
            "point lies outside the warp image (|component| >= 1/warp_scale)"
        )
    return np.arctanh(inner) / c


def warp(gen, z: LatentCode) -> LatentCode:
    """Map a Z-space code into W."""
    _require_z(gen, z)
    return LatentCode(warp_values(gen, z.values), "W")


def unwarp(gen, w: LatentCode) -> LatentCode:
    """Exact inverse of :func:`warp`."""
    if w.space != "W":
        raise SpaceMismatch(f"unwarp expects a W-space code, got {w.space}")
    if w.dim != gen.d:
        raise SpaceMismatch(f"latent dim {w.dim} vs generator dim {gen.d}")
    return LatentCode(unwarp_values(gen, w.values), "Z")


# -- latent inversion ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InversionResult:
    code: LatentCode
    objective: float
    iterations: int
    saturated: bool


def _param_vector(gen, p: FaceParams):
    return np.concatenate(
        [
            [p.yaw, p.mouth_curve, p.wrinkle_density, p.jaw_width, p.glasses_opacity],
            np.asarray(p.identity_features, dtype=np.float64),
            [p.noise_level],
        ]
    )


def _forward(gen, z):
    x = _score_coordinates(gen, z[None, :])[0]
    s = np.tanh(gen.Lambda_star * (gen.N_star.T @ x))
    names = gen.attributes
    by = dict(zip(names, s))
    head = np.array(
        [
            45.0 * by.get("pose", 0.0),
            by.get("smile", 0.0),
            (by.get("age", 0.0) + 1.0) / 2.0,
            1.0 + 0.4 * by.get("gender", 0.0),
            np.clip((by.get("eyeglasses", 0.0) + 1.0) / 2.0, 0.0, 1.0),
        ]
    )
    ident = gen.identity_dirs.T @ z
    noise = np.clip(-(gen.quality_dir @ z) / 5.0, 0.0, 1.0)
    return np.concatenate([head, ident, [noise]]), s, x


def _head_scales(gen):
    # d(param)/d(score) for the five named attributes, 0 for absent ones
    scale = {"pose": 45.0, "smile": 1.0, "age": 0.5, "gender": 0.4, "eyeglasses": 0.5}
    return np.array([scale.get(a, 0.0) for a in ("pose", "smile", "age", "gender", "eyeglasses")])


def invert(gen, target: FaceParams, init_seed=0, max_steps=10_000) -> InversionResult:
    """Recover a latent code whose face parameters match the target.

    First-order optimization (L-BFGS) of the squared parameter error with
    analytic gradients.  Raises :class:`NoConvergence` when the objective
    stays above 1e-6 after the step budget; targets whose derived scores sit
    at the tanh saturation limit are returned flagged instead.
    """
    tvec = _param_vector(gen, target)
    derived = np.array(
        [
            target.yaw / 45.0,
            target.mouth_curve,
            2.0 * target.wrinkle_density - 1.0,
            (target.jaw_width - 1.0) / 0.4,
            2.0 * target.glasses_opacity - 1.0,
        ]
    )
    saturated = bool(np.any(np.abs(derived) > 0.99))

    head_idx = {a: i for i, a in enumerate(("pose", "smile", "age", "gender", "eyeglasses"))}
    attr_rows = np.array([head_idx.get(a, -1) for a in gen.attributes])
    head_scale = _head_scales(gen)
    k = gen.k
    warped = gen.space == "W"
    c = gen.warp_scale

    def objective(z):
        p, _, _ = _forward(gen, z)
        r = p - tvec
        return float(r @ r)

    def gradient(z):
        p, s, x = _forward(gen, z)
        r = p - tvec
        coeff = np.zeros(gen.m)
        for j, row in enumerate(attr_rows):
            if row >= 0:
                coeff[j] = 2.0 * r[row] * head_scale[row] * gen.Lambda_star[j] * (1.0 - s[j] ** 2)
        gx = gen.N_star @ coeff
        if warped:
            # x = R tanh(cz)/c  =>  dx/dz = R diag(sech^2(cz))
            g = (gx @ gen.warp_rotation) * (1.0 - np.tanh(c * z) ** 2)
        else:
            g = gx
        g = g + gen.identity_dirs @ (2.0 * r[5 : 5 + k])
        raw = -(gen.quality_dir @ z) / 5.0
        if 0.0 < raw < 1.0:
            g = g - (2.0 * r[-1] / 5.0) * gen.quality_dir
        return g

    rng = np.random.default_rng(np.random.SeedSequence((int(init_seed), 1)))
    z0 = 0.1 * rng.standard_normal(gen.d)
    # start the quality coordinate inside the open clamp interval; on the
    # clamped side its gradient is zero and nonzero noise targets are unreachable
    raw0 = float(np.clip(target.noise_level, 0.05, 0.95))
    z0 = z0 - (gen.quality_dir @ z0) * gen.quality_dir - 5.0 * raw0 * gen.quality_dir

    def solve_quality_coordinate(z):
        # noise_level depends on q.z alone and, for Z-scored generators, q is
        # orthogonal to every other active direction, so this block has an
        # exact minimizer; it also pulls the iterate out of the clamp's
        # zero-gradient region.  The warp couples coordinates, so skip it there.
        if warped:
            return z
        t = target.noise_level
        current = float(gen.quality_dir @ z)
        if t <= 0.0:
            desired = max(current, 0.0)
        else:
            desired = -5.0 * t
        return z + (desired - current) * gen.quality_dir

    budget = max_steps
    z_cur = z0
    result = None
    for _ in range(4):  # restarts clear stale curvature pairs after line-search stalls
        result = minimize(
            objective,
            z_cur,
            jac=gradient,
            method="L-BFGS-B",
            options={"maxiter": budget, "ftol": 1e-18, "gtol": 1e-14},
        )
        budget -= max(int(result.nit), 1)
        z_cur = solve_quality_coordinate(result.x)
        if objective(z_cur) <= 1e-10 or budget <= 0:
            break
    final = objective(z_cur)
    iterations = max_steps - budget
    if final > 1e-6 and not saturated:
        raise NoConvergence(
            f"inversion stalled at objective {final:.3e} after {iterations} iterations",
            residual=final,
        )
    return InversionResult(
        code=LatentCode(z_cur, "Z"),
        objective=final,
        iterations=iterations,
        saturated=saturated,
    )
