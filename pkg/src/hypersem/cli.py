"""Command-line entry points.

Every subcommand accepts --seed and writes its machine-readable result to
--out.  Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import concentration, oracle, pipeline, session as session_mod
from .errors import HypersemError, IoError, ValidationError
from .faces import FaceParams, render
from .geometry import LatentCode
from .store import (
    BoundaryStore,
    default_home,
    load_dataset,
    load_generator,
    save_dataset,
    save_generator,
    write_json_report,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _write_out(data: dict, out):
    write_json_report(data, out)


def _load_gen(args):
    return load_generator(args.gen)


def _store(args):
    directory = Path(args.boundaries) if getattr(args, "boundaries", None) else default_home() / "boundaries"
    store = BoundaryStore(directory)
    store.load_all()
    return store


def _latent_from_args(args, gen):
    if args.latent:
        data = json.loads(Path(args.latent).read_text())
        values = data["latent"] if isinstance(data, dict) else data
        return LatentCode(np.asarray(values, dtype=np.float64), "Z")
    rng = np.random.default_rng(np.random.SeedSequence((int(args.seed), 2)))
    return LatentCode(rng.standard_normal(gen.d), "Z")


def cmd_gen_config(args):
    gen = oracle.make_generator(
        d=args.d,
        seed=args.seed,
        noise_sigma=args.noise_sigma,
        identity_dims=args.identity_dims,
        warp_scale=args.warp_scale,
        space=args.space,
    )
    save_generator(gen, args.out)
    print(f"generator config written to {args.out} (d={gen.d}, m={gen.m}, space={gen.space})")
    return EXIT_OK


def cmd_sample(args):
    gen = _load_gen(args)
    ds = pipeline.synthesize_dataset(gen, args.count, args.seed)
    save_dataset(ds, args.out)
    print(f"{ds.count} samples (d={ds.d}, m={ds.m}) written to {args.out}")
    return EXIT_OK


def cmd_fit(args):
    gen = _load_gen(args)
    ds = load_dataset(args.data)
    store = _store(args)
    config = None
    if args.lambda_reg is not None:
        from .svm import SvmConfig

        config = SvmConfig(lambda_reg=args.lambda_reg, epochs=args.epochs, seed=args.seed)
    bs, stats = pipeline.fit_all_boundaries(
        ds, gen, k=args.k, svm_config=config, include_quality=not args.no_quality, seed=args.seed
    )
    wanted = [args.attr] if args.attr else bs.names()
    for name in wanted:
        store.save(bs.direction(name))
    report = {
        "boundaries_dir": str(store.directory),
        "stats": [
            {
                "attribute": s.attribute,
                "train_accuracy": s.train_accuracy,
                "val_accuracy": s.val_accuracy,
                "full_set_accuracy": s.full_set_accuracy,
            }
            for s in stats
            if s.attribute in wanted
        ],
    }
    _write_out(report, args.out)
    for s in report["stats"]:
        print(
            f"{s['attribute']}: train {s['train_accuracy']:.4f}  "
            f"val {s['val_accuracy']:.4f}  all {s['full_set_accuracy']:.4f}"
        )
    return EXIT_OK


def cmd_correlate(args):
    gen = _load_gen(args)
    ds = load_dataset(args.data)
    store = _store(args)
    from .pipeline import BoundarySet
    from .svm import TrainedBoundary

    missing = [a for a in gen.attributes if a not in store.loaded]
    if missing:
        raise ValidationError(f"boundaries missing for {missing}; run fit first")
    bs = BoundarySet(
        boundaries={n: TrainedBoundary(d, 1.0, None) for n, d in store.loaded.items()},
        space=ds.space,
    )
    report = pipeline.correlation_report(ds, bs, gen)
    _write_out(report.to_dict(), args.out)
    names = report.attributes
    print("boundary cosine / score pearson:")
    for i, a in enumerate(names):
        for j in range(i + 1, len(names)):
            print(
                f"  {a}-{names[j]}: {report.boundary_cosine[i, j]:+.3f} / "
                f"{report.score_pearson[i, j]:+.3f}"
            )
    return EXIT_OK


def cmd_edit(args):
    gen = _load_gen(args)
    store = _store(args)
    state = session_mod.SessionState(gen, dict(store.loaded), _latent_from_args(args, gen), seed=args.seed)
    conditions = tuple(c for c in (args.conditions or "").split(",") if c)
    req = session_mod.ManipulationRequest(attribute=args.attr, alpha=args.alpha, conditions=conditions)
    payload = session_mod.api_edit(state, req)
    _write_out(payload, args.out)
    scores = " ".join(f"{k}={v:+.3f}" for k, v in payload["scores"].items())
    print(f"edited {args.attr} by {args.alpha:+g}; scores: {scores}")
    return EXIT_OK


def cmd_render(args):
    gen = _load_gen(args)
    if args.params:
        params = FaceParams.from_dict(json.loads(Path(args.params).read_text()))
    else:
        params = oracle.face_params(gen, _latent_from_args(args, gen))
    svg = render(params)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"SVG written to {args.out}")
    return EXIT_OK


def cmd_invert(args):
    gen = _load_gen(args)
    target = FaceParams.from_dict(json.loads(Path(args.target).read_text()))
    result = oracle.invert(gen, target, init_seed=args.seed)
    recovered = oracle.face_params(gen, result.code)
    _write_out(
        {
            "latent": result.code.values.tolist(),
            "objective": result.objective,
            "iterations": result.iterations,
            "saturated": result.saturated,
            "face": recovered.to_dict(),
        },
        args.out,
    )
    print(
        f"inverted in {result.iterations} iterations, objective {result.objective:.3e}"
        + (" (saturated target)" if result.saturated else "")
    )
    return EXIT_OK


def cmd_verify(args):
    checks = []
    if args.property2 or args.all:
        checks.append(concentration.property2_mc(args.d, args.alpha, args.trials, seed=args.seed))
    if args.sphere or args.all:
        checks.append(concentration.sphere_slab_mc(args.d, args.alpha, args.trials, seed=args.seed))
    if args.annulus or args.all:
        checks.append(concentration.annulus_mc(args.d, args.beta, args.trials, seed=args.seed))
    if not checks:
        raise ValidationError("choose at least one of --property2/--sphere/--annulus/--all")
    report = {"checks": [c.to_dict() for c in checks]}
    _write_out(report, args.out)
    ok = True
    for c in checks:
        ok &= c.passed
        print(
            f"{c.kind}(d={c.d}, param={c.parameter:g}, trials={c.trials}): "
            f"empirical={c.empirical_probability:.6f} bound={c.bound_value:.6f} "
            f"passed={c.passed}"
        )
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_serve(args):
    import uvicorn

    from .server import create_app

    gen = _load_gen(args)
    store = _store(args)
    _write_out({"host": args.host, "port": args.port, "generator": gen.config()}, args.out)
    app = create_app(gen, store)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="hypersem", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=out_required, help="machine-readable output path")

    p = sub.add_parser("gen-config", help="write a generator configuration")
    common(p)
    p.add_argument("--d", type=int, default=512)
    p.add_argument("--noise-sigma", type=float, default=0.1)
    p.add_argument("--identity-dims", type=int, default=8)
    p.add_argument("--warp-scale", type=float, default=1.0)
    p.add_argument("--space", choices=("Z", "W"), default="Z")
    p.set_defaults(func=cmd_gen_config)

    p = sub.add_parser("sample", help="synthesize a scored latent dataset")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--count", type=int, default=pipeline.DEFAULT_SAMPLE_COUNT)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fit", help="fit attribute boundaries from a dataset")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--boundaries", help="boundary store directory")
    p.add_argument("--attr", help="save only this attribute")
    p.add_argument("--k", type=int, default=pipeline.DEFAULT_CANDIDATES_PER_SIDE)
    p.add_argument("--lambda-reg", type=float, default=None)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--no-quality", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("correlate", help="entanglement report from boundaries + dataset")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--boundaries")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("edit", help="edit one latent code along an attribute direction")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--boundaries")
    p.add_argument("--attr", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--conditions", help="comma-separated condition attributes")
    p.add_argument("--latent", help="JSON file with a latent vector")
    p.set_defaults(func=cmd_edit)

    p = sub.add_parser("render", help="render a latent code or parameter file to SVG")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--latent")
    p.add_argument("--params", help="JSON face-parameter file")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("invert", help="recover a latent code from face parameters")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--target", required=True, help="JSON face-parameter file")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", help="run concentration Monte Carlo checks")
    common(p)
    p.add_argument("--property2", action="store_true")
    p.add_argument("--sphere", action="store_true")
    p.add_argument("--annulus", action="store_true")
    p.add_argument("--all", action="store_true")
    p.add_argument("--d", type=int, default=512)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=5.0)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP API")
    common(p)
    p.add_argument("--gen", required=True)
    p.add_argument("--boundaries")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HypersemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
