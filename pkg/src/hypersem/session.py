"""Editing sessions: resolved-direction edits with replayable history."""

import threading
from dataclasses import dataclass

import numpy as np

from . import oracle
from .errors import UnknownAttribute, ValidationError
from .faces import render
from .geometry import ConditionSet, LatentCode, SemanticDirection, condition, cosine, distance, edit
from .oracle import GeneratorSpec


@dataclass(frozen=True)
class ManipulationRequest:
    attribute: str
    alpha: float
    conditions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        if self.attribute in self.conditions:
            raise ValidationError(
                f"attribute {self.attribute!r} cannot appear in its own conditions"
            )
        if not np.isfinite(self.alpha):
            raise ValidationError(f"alpha is {self.alpha}")

    def to_dict(self):
        return {"attribute": self.attribute, "alpha": self.alpha, "conditions": list(self.conditions)}


class SessionState:
    """One latent code being edited against a fixed generator and boundary map.

    Mutations are serialized by an internal lock; replaying the recorded
    history from the initial code reproduces the current code bit-exactly.
    """

    def __init__(self, gen: GeneratorSpec, boundaries: dict, initial: LatentCode, seed=None):
        self.gen = gen
        self.boundaries = dict(boundaries)
        self.initial = initial
        self.current = initial
        self.history: list[ManipulationRequest] = []
        self.seed = seed
        self._lock = threading.Lock()

    def direction_for(self, name) -> SemanticDirection:
        try:
            return self.boundaries[name]
        except KeyError:
            raise UnknownAttribute(
                f"no boundary named {name!r}; loaded: {sorted(self.boundaries)}"
            ) from None

    def resolve(self, req: ManipulationRequest) -> SemanticDirection:
        primal = self.direction_for(req.attribute)
        if not req.conditions:
            return primal
        cond = ConditionSet(tuple(self.direction_for(c) for c in req.conditions))
        return condition(primal, cond)

    def apply(self, req: ManipulationRequest) -> dict:
        direction = self.resolve(req)
        with self._lock:
            self.current = edit(self.current, direction, req.alpha)
            self.history.append(req)
            return self.view(resolved=direction, request=req)

    def replay(self) -> LatentCode:
        """Re-run the history from the initial code (does not touch state)."""
        code = self.initial
        for req in self.history:
            code = edit(code, self.resolve(req), req.alpha)
        return code

    def view(self, resolved: SemanticDirection | None = None,
             request: ManipulationRequest | None = None) -> dict:
        z = self.current
        scores = oracle.true_scores(self.gen, z)
        params = oracle.face_params(self.gen, z)
        payload = {
            "latent": z.values.tolist(),
            "space": z.space,
            "scores": {a: float(s) for a, s in zip(self.gen.attributes, scores)},
            "distances": {
                name: distance(d, z) if d.space == z.space else None
                for name, d in self.boundaries.items()
            },
            "face": params.to_dict(),
            "svg": render(params),
            "history_length": len(self.history),
            "seed": self.seed,
        }
        if resolved is not None:
            payload["resolved_direction"] = {
                "attribute": request.attribute if request else resolved.name,
                "conditions": list(request.conditions) if request else [],
                "name": resolved.name,
                "normal": resolved.normal.tolist(),
                "cosines": {
                    name: cosine(resolved, d) if d.dim == resolved.dim else None
                    for name, d in self.boundaries.items()
                },
            }
        return payload


def sample_session(gen: GeneratorSpec, boundaries: dict, seed) -> SessionState:
    """Fresh session on a standard-normal latent drawn from the seed."""
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 2)))
    z = LatentCode(rng.standard_normal(gen.d), "Z")
    return SessionState(gen, boundaries, z, seed=int(seed))


def api_edit(state: SessionState, req: ManipulationRequest) -> dict:
    """Apply one manipulation request and return the full render payload."""
    return state.apply(req)
