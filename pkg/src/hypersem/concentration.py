"""Monte Carlo checks of high-dimensional Gaussian concentration.

Three empirical verifiers:

* hyperplane slab -- a standard Gaussian stays within 2*alpha*sqrt(d/(d-2))
  of any hyperplane through the origin with probability at least
  1 - (2/alpha) e^{-alpha^2/2} (the dimension factor is dropped, which only
  strengthens the requirement);
* sphere slab -- the same bound for the first coordinate of a uniform point
  on the unit sphere at threshold alpha/sqrt(d-2);
* Gaussian annulus -- the norm concentrates in sqrt(d) +/- beta, with the
  decay constant of the outside mass estimated from the data.

Trials are drawn in fixed-size chunks with per-chunk generators seeded by
(seed, chunk_index), so results are reproducible bit-for-bit regardless of
how chunks are scheduled.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

MC_CHUNK = 1_000_000
_SAMPLE_CHUNK_ROWS = 131_072
MIN_TRIALS = 10_000


@dataclass(frozen=True)
class MonteCarloReport:
    """Outcome of one empirical concentration check."""

    kind: str
    d: int
    parameter: float        # alpha for slab checks, beta for the annulus
    trials: int
    empirical_probability: float
    bound_value: float
    passed: bool
    half_width: float       # 95% normal-approximation confidence half width
    seed: int
    extra: dict | None = None

    def to_dict(self):
        out = {
            "kind": self.kind,
            "d": self.d,
            "parameter": self.parameter,
            "trials": self.trials,
            "empirical_probability": self.empirical_probability,
            "bound_value": self.bound_value,
            "passed": self.passed,
            "half_width": self.half_width,
            "seed": self.seed,
        }
        if self.extra is not None:
            out["extra"] = self.extra
        return out


def _chunk_rng(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((int(seed), int(index)))))


def _mc_passed(empirical, bound, trials):
    # flake control: accept when the shortfall is within 2 MC standard errors
    p = min(max(empirical, 0.0), 1.0)
    se = np.sqrt(max(p * (1.0 - p), 1e-12) / trials)
    return bool(empirical - bound >= -2.0 * se)


def _half_width(empirical, trials):
    p = min(max(empirical, 0.0), 1.0)
    return float(1.96 * np.sqrt(p * (1.0 - p) / trials))


def slab_bound(alpha):
    """Lower bound 1 - (2/alpha) e^{-alpha^2/2} on the slab probability."""
    return float(1.0 - (2.0 / alpha) * np.exp(-(alpha**2) / 2.0))


def property2_mc(d, alpha, trials, seed=0) -> MonteCarloReport:
    """Empirical P(|n.z| <= 2*alpha*sqrt(d/(d-2))) for Gaussian z.

    By rotation invariance n is fixed to the first axis, so each trial is a
    single standard normal draw.
    """
    if d < 4:
        raise ValidationError(f"need d >= 4, got {d}")
    if alpha < 1:
        raise ValidationError(f"need alpha >= 1, got {alpha}")
    if trials < MIN_TRIALS:
        raise ValidationError(f"need at least {MIN_TRIALS} trials, got {trials}")
    threshold = 2.0 * alpha * np.sqrt(d / (d - 2.0))
    inside = 0
    done = 0
    index = 0
    while done < trials:
        n = min(MC_CHUNK, trials - done)
        x = _chunk_rng(seed, index).standard_normal(n)
        inside += int(np.sum(np.abs(x) <= threshold))
        done += n
        index += 1
    empirical = inside / trials
    bound = slab_bound(alpha)
    return MonteCarloReport(
        kind="property2",
        d=int(d),
        parameter=float(alpha),
        trials=int(trials),
        empirical_probability=empirical,
        bound_value=bound,
        passed=_mc_passed(empirical, bound, trials),
        half_width=_half_width(empirical, trials),
        seed=int(seed),
        extra={"threshold": float(threshold), "outside_count": int(trials - inside)},
    )


def gaussian_tail_mc(threshold, trials, seed=0) -> float:
    """Empirical P(|n.z| > threshold) for Gaussian z (1-D by rotation invariance)."""
    if trials < 1:
        raise ValidationError("need at least one trial")
    outside = 0
    done = 0
    index = 0
    while done < trials:
        n = min(MC_CHUNK, trials - done)
        x = _chunk_rng(seed, index).standard_normal(n)
        outside += int(np.sum(np.abs(x) > threshold))
        done += n
        index += 1
    return outside / trials


def sphere_slab_mc(d, alpha, trials, seed=0) -> MonteCarloReport:
    """Empirical P(|z_1| <= alpha/sqrt(d-2)) for z uniform on the unit sphere."""
    if d < 4:
        raise ValidationError(f"need d >= 4, got {d}")
    if alpha < 1:
        raise ValidationError(f"need alpha >= 1, got {alpha}")
    if alpha / np.sqrt(d - 2.0) > 1.0:
        raise ValidationError("threshold alpha/sqrt(d-2) exceeds 1; no slab to test")
    if trials < MIN_TRIALS:
        raise ValidationError(f"need at least {MIN_TRIALS} trials, got {trials}")
    threshold = alpha / np.sqrt(d - 2.0)
    inside = 0
    done = 0
    index = 0
    while done < trials:
        n = min(_SAMPLE_CHUNK_ROWS, trials - done)
        X = _chunk_rng(seed, index).standard_normal((n, d))
        z1 = X[:, 0] / np.linalg.norm(X, axis=1)
        inside += int(np.sum(np.abs(z1) <= threshold))
        done += n
        index += 1
    empirical = inside / trials
    bound = slab_bound(alpha)
    return MonteCarloReport(
        kind="sphere_slab",
        d=int(d),
        parameter=float(alpha),
        trials=int(trials),
        empirical_probability=empirical,
        bound_value=bound,
        passed=_mc_passed(empirical, bound, trials),
        half_width=_half_width(empirical, trials),
        seed=int(seed),
        extra={"threshold": float(threshold)},
    )


ANNULUS_FIT_BETAS = (1.0, 2.0, 3.0, 4.0)


def annulus_mc(d, beta, trials, seed=0) -> MonteCarloReport:
    """Empirical mass of sqrt(d)-beta <= ||z|| <= sqrt(d)+beta for Gaussian z.

    One sampling pass provides the norms; the outside-mass decay constant
    c-hat is fitted on log(mass/3) = -c * beta^2 across the standard beta
    grid, skipping entries with zero observed mass.
    """
    if beta <= 0 or beta > np.sqrt(d):
        raise ValidationError(f"need 0 < beta <= sqrt(d), got beta={beta}")
    if trials < MIN_TRIALS:
        raise ValidationError(f"need at least {MIN_TRIALS} trials, got {trials}")
    root_d = np.sqrt(d)
    norms = np.empty(trials)
    done = 0
    index = 0
    while done < trials:
        n = min(_SAMPLE_CHUNK_ROWS, trials - done)
        X = _chunk_rng(seed, index).standard_normal((n, d))
        norms[done : done + n] = np.linalg.norm(X, axis=1)
        done += n
        index += 1

    def outside_mass(b):
        return float(np.mean((norms < root_d - b) | (norms > root_d + b)))

    empirical = 1.0 - outside_mass(beta)

    masses = {b: outside_mass(b) for b in ANNULUS_FIT_BETAS}
    usable = [(b, m_out) for b, m_out in masses.items() if m_out > 0.0]
    if len(usable) >= 2:
        bs = np.array([b for b, _ in usable])
        ys = np.log(np.array([m_out for _, m_out in usable]) / 3.0)
        slope = float(np.polyfit(bs**2, ys, 1)[0])
        c_hat = -slope
    else:
        slope = float("-inf")
        c_hat = float("inf")

    ordered = [masses[b] for b in ANNULUS_FIT_BETAS]
    decreasing = all(a >= b for a, b in zip(ordered, ordered[1:]))
    passed = decreasing and slope < 0.0
    bound = float(1.0 - 3.0 * np.exp(-min(c_hat, 700.0) * beta**2))
    return MonteCarloReport(
        kind="annulus",
        d=int(d),
        parameter=float(beta),
        trials=int(trials),
        empirical_probability=empirical,
        bound_value=bound,
        passed=passed,
        half_width=_half_width(empirical, trials),
        seed=int(seed),
        extra={
            "c_hat": c_hat,
            "outside_mass": {str(b): masses[b] for b in ANNULUS_FIT_BETAS},
            "outside_mass_at_beta": outside_mass(beta),
        },
    )
