"""Persistence: boundary files, generator configs, and the binary dataset format.

Boundary and generator documents are JSON; floats use Python's shortest
round-trip decimal form, so write-then-read reproduces every value to the bit.
Datasets use the LSDS container: a fixed little-endian header followed by
interleaved float32 latent/score records.
"""

import json
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .errors import IoFailure, MalformedFile, UnitNormViolation
from .geometry import DirectionMeta, SemanticDirection
from .oracle import GeneratorSpec, make_generator
from .pipeline import SampleDataset

ENV_HOME = "HYPERSEM_HOME"

LSDS_MAGIC = b"LSDS"
LSDS_VERSION = 1
_LSDS_HEADER = struct.Struct("<4sIIIQQB")
_SPACE_CODE = {"Z": 0, "W": 1}
_SPACE_NAME = {0: "Z", 1: "W"}


def default_home() -> Path:
    return Path(os.environ.get(ENV_HOME, "~/.hypersem")).expanduser()


def _atomic_write_bytes(path: Path, payload: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


# -- boundary documents -------------------------------------------------------

def direction_to_dict(direction: SemanticDirection) -> dict:
    return {
        "name": direction.name,
        "space": direction.space,
        "dim": direction.dim,
        "normal": direction.normal.tolist(),
        "intercept": direction.intercept,
        "meta": {
            "seed": direction.meta.seed,
            "train_count": direction.meta.train_count,
            "val_accuracy": direction.meta.val_accuracy,
        },
    }


def direction_from_dict(data: dict) -> SemanticDirection:
    try:
        normal = np.asarray(data["normal"], dtype=np.float64)
        if int(data["dim"]) != normal.size:
            raise MalformedFile(
                f"declared dim {data['dim']} but normal has {normal.size} entries"
            )
        meta = data.get("meta", {})
        return SemanticDirection(
            name=str(data["name"]),
            normal=normal,
            intercept=float(data.get("intercept", 0.0)),
            space=str(data["space"]),
            meta=DirectionMeta(
                seed=int(meta.get("seed", 0)),
                train_count=int(meta.get("train_count", 0)),
                val_accuracy=meta.get("val_accuracy"),
            ),
        )
    except UnitNormViolation:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"boundary document is missing or mistypes fields: {exc}") from exc


class BoundaryStore:
    """Directory of one JSON document per named direction.

    Saves replace the whole file atomically; concurrent readers always see a
    complete document.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self.loaded: dict[str, SemanticDirection] = {}

    def path_for(self, name) -> Path:
        safe = str(name).replace("/", "_")
        return self.directory / f"{safe}.json"

    def save(self, direction: SemanticDirection) -> Path:
        path = self.path_for(direction.name)
        payload = json.dumps(direction_to_dict(direction), indent=2).encode("utf-8")
        _atomic_write_bytes(path, payload)
        self.loaded[direction.name] = direction
        return path

    def load(self, name) -> SemanticDirection:
        path = self.path_for(name)
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc
        try:
            data = json.loads(raw.decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise MalformedFile(f"{path}: invalid JSON at byte {exc.pos}", offset=exc.pos) from exc
        except UnicodeDecodeError as exc:
            raise MalformedFile(f"{path}: not UTF-8 at byte {exc.start}", offset=exc.start) from exc
        direction = direction_from_dict(data)
        self.loaded[name] = direction
        return direction

    def load_all(self) -> dict:
        if self.directory.is_dir():
            for path in sorted(self.directory.glob("*.json")):
                self.load(path.stem)
        return self.loaded

    def names(self):
        if self.directory.is_dir():
            return sorted(p.stem for p in self.directory.glob("*.json"))
        return []


def save_boundary(store: BoundaryStore, direction: SemanticDirection) -> Path:
    return store.save(direction)


def load_boundary(store: BoundaryStore, name) -> SemanticDirection:
    return store.load(name)


# -- generator configs --------------------------------------------------------

def save_generator(gen: GeneratorSpec, path) -> Path:
    path = Path(path)
    _atomic_write_bytes(path, json.dumps(gen.config(), indent=2).encode("utf-8"))
    return path


def load_generator(path) -> GeneratorSpec:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"{path}: invalid JSON at byte {exc.pos}", offset=exc.pos) from exc
    try:
        return make_generator(
            attributes=tuple(data["attributes"]),
            gram=np.asarray(data["gram"], dtype=np.float64),
            d=int(data["d"]),
            seed=int(data["seed"]),
            noise_sigma=float(data["noise_sigma"]),
            lambdas=np.asarray(data["lambdas"], dtype=np.float64),
            identity_dims=int(data["k"]),
            warp_scale=float(data["warp_scale"]),
            space=str(data.get("space", "Z")),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedFile(f"{path}: generator config is missing fields: {exc}") from exc


# -- LSDS dataset container ---------------------------------------------------

def save_dataset(ds: SampleDataset, path) -> Path:
    path = Path(path)
    header = _LSDS_HEADER.pack(
        LSDS_MAGIC,
        LSDS_VERSION,
        ds.d,
        ds.m,
        ds.count,
        ds.seed,
        _SPACE_CODE[ds.space],
    )
    records = np.hstack([ds.latents, ds.scores]).astype("<f4")
    _atomic_write_bytes(path, header + records.tobytes())
    return path


def load_dataset(path) -> SampleDataset:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if len(raw) < _LSDS_HEADER.size:
        raise MalformedFile(f"{path}: truncated header ({len(raw)} bytes)", offset=len(raw))
    magic, version, d, m, count, seed, space_code = _LSDS_HEADER.unpack_from(raw, 0)
    if magic != LSDS_MAGIC:
        raise MalformedFile(f"{path}: bad magic {magic!r}", offset=0)
    if version != LSDS_VERSION:
        raise MalformedFile(f"{path}: unsupported version {version}", offset=4)
    if space_code not in _SPACE_NAME:
        raise MalformedFile(f"{path}: unknown space code {space_code}", offset=_LSDS_HEADER.size - 1)
    expected = _LSDS_HEADER.size + 4 * count * (d + m)
    if len(raw) != expected:
        raise MalformedFile(
            f"{path}: expected {expected} bytes, found {len(raw)}", offset=min(len(raw), expected)
        )
    body = np.frombuffer(raw, dtype="<f4", offset=_LSDS_HEADER.size).reshape(count, d + m)
    if count < 1:
        raise MalformedFile(f"{path}: empty dataset", offset=_LSDS_HEADER.size)
    return SampleDataset(
        latents=body[:, :d].copy(),
        scores=body[:, d:].copy(),
        space=_SPACE_NAME[space_code],
        seed=int(seed),
    )


def write_json_report(data: dict, path) -> Path:
    """Machine-readable report document (UTF-8 JSON, round-trip floats)."""
    path = Path(path)
    _atomic_write_bytes(path, json.dumps(data, indent=2).encode("utf-8"))
    return path
