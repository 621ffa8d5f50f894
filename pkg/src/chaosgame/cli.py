"""Command-line interface.

Subcommands:
  cloud build | cloud info     attractor point clouds and their cache files
  driver emit | driver stats   symbol streams and word-coverage statistics
  recover                      one recovery-time measurement
  dim                          box-dimension estimate
  schedule                     slow-driver schedule table (optionally symbols)
  experiment run               full preset or config-file experiment

Exit codes: 0 success, 2 validation error, 3 cap exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import drivers as drv
from .construct import (build_schedule, choose_base_map, iterexp_rate,
                        power_rate, slow_driver)
from .errors import (CapExceededError, ChaosGameError, InternalInvariantError,
                     ValidationError)
from .harness import (PRESETS, load_preset, make_driver, parse_config,
                      run_experiment)
from .ifs import build_cloud, read_cloud, write_cloud
from .metrics import box_dimension, log_rate, recovery_time


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def _ifs_from_args(args):
    from .harness import _IFS_FACTORIES

    if args.ifs in _IFS_FACTORIES:
        return _IFS_FACTORIES[args.ifs]()
    raise ValidationError(
        f"unknown ifs preset {args.ifs!r}; known: {sorted(_IFS_FACTORIES)}"
    )


def _driver_from_args(args, K):
    kind = args.driver
    if kind == "champernowne":
        return drv.champernowne(K)
    if kind == "debruijn":
        return drv.infinite_de_bruijn(K)
    if kind == "example4":
        return drv.example4_driver(args.z)
    if kind == "random":
        return drv.random_driver(K, args.seed)
    raise ValidationError(
        f"unknown driver kind {kind!r}; known: champernowne, debruijn, "
        "example4, random"
    )


def _cmd_cloud(args) -> int:
    if args.cloud_cmd == "build":
        ifs = _ifs_from_args(args)
        cloud = build_cloud(ifs, args.resolution, args.cap)
        write_cloud(args.out, cloud)
        print(f"wrote {cloud.size} points to {args.out} "
              f"(resolution {_fmt(cloud.resolution)}, depth {cloud.depth})")
        return 0
    cloud = read_cloud(args.path)
    print(f"points: {cloud.size}")
    print(f"dim: {cloud.points.shape[1]}")
    print(f"resolution: {_fmt(cloud.resolution)}")
    print(f"depth: {cloud.depth}")
    print(f"diam bracket: [{_fmt(cloud.diam_lower)}, {_fmt(cloud.diam_upper)}]")
    return 0


def _cmd_driver(args) -> int:
    K = args.alphabet
    stream = _driver_from_args(args, K)
    if args.driver_cmd == "emit":
        symbols = stream.prefix(args.count)
        if K <= 9:
            print("".join(str(int(s)) for s in symbols))
        else:
            print(",".join(str(int(s)) for s in symbols))
        return 0
    print("m,n_i_m")
    for m in range(1, args.stats + 1):
        stat = drv.word_coverage(stream, m, cap=args.cap)
        value = "exceeded" if stat.exceeded else str(stat.n_of_m)
        print(f"{m},{value}")
    return 0


def _cmd_recover(args) -> int:
    ifs = _ifs_from_args(args)
    driver = _driver_from_args(args, ifs.alphabet_size)
    cloud = build_cloud(ifs, args.resolution)
    x0 = np.array([float(t) for t in args.x0.split()])
    record = recovery_time(ifs, driver, x0, args.eps, cloud, cap=args.cap)
    if record.n is None:
        raise CapExceededError(
            f"recovery did not complete within cap {args.cap}"
        )
    rate = log_rate(record.n, record.eps)
    rate_field = "undefined" if rate is None else _fmt(rate)
    print("driver,x0,eps,n,guard,log_rate")
    print(f"{record.driver},{args.x0},{_fmt(record.eps)},{record.n},"
          f"{_fmt(record.guard)},{rate_field}")
    return 0


def _cmd_dim(args) -> int:
    ifs = _ifs_from_args(args)
    cloud = build_cloud(ifs, args.resolution)
    est = box_dimension(cloud, args.a, args.r, args.m_lo, args.m_hi)
    print("b_m,lower,upper,rate_lower,rate_upper")
    for sample, rl, ru in zip(est.samples, est.rates_lower, est.rates_upper):
        print(f"{_fmt(sample.eps)},{sample.lower},{sample.upper},"
              f"{_fmt(rl)},{_fmt(ru)}")
    print(f"# value {_fmt(est.value)}")
    return 0


def _cmd_schedule(args) -> int:
    ifs = _ifs_from_args(args)
    cloud = build_cloud(ifs, args.resolution)
    psi = power_rate(args.z) if args.psi == "power" else iterexp_rate(args.order)
    base = choose_base_map(ifs, cloud)
    schedule = build_schedule(ifs, cloud, psi, base, k_max=args.k_max,
                              step_cap=args.step_cap)
    print("k,m_k,p_k,N_hat_k,v_k")
    for k, entry in enumerate(schedule.entries, start=1):
        print(f"{k},{entry.m},{entry.p},{entry.N_hat},{entry.v}")
    if schedule.truncated:
        print("# truncated at the step cap", file=sys.stderr)
    if args.emit:
        symbols = slow_driver(schedule).prefix(args.emit)
        if ifs.alphabet_size <= 9:
            print("".join(str(int(s)) for s in symbols))
        else:
            print(",".join(str(int(s)) for s in symbols))
    return 0


def _cmd_experiment(args) -> int:
    if args.target in PRESETS:
        cfg = load_preset(args.target)
    else:
        path = Path(args.target)
        if not path.exists():
            raise ValidationError(
                f"{args.target!r} is neither a preset ({sorted(PRESETS)}) "
                "nor a config file"
            )
        cfg = parse_config(path.read_text())
    if args.cap is not None:
        from dataclasses import replace
        cfg = replace(cfg, orbit_cap=args.cap)
    if args.seed is not None:
        from dataclasses import replace
        cfg = replace(cfg, seed=args.seed)
    report = run_experiment(cfg, out_dir=args.out, cache_dir=args.cache)
    sys.stdout.write(report.artifacts["summary.txt"])
    if args.out:
        print(f"artifacts written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaosgame",
        description="Deterministic chaos game: drivers, recovery times, "
                    "and rate diagnostics for contractive IFSs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cloud = sub.add_parser("cloud", help="attractor point clouds")
    cloud_sub = p_cloud.add_subparsers(dest="cloud_cmd", required=True)
    p_build = cloud_sub.add_parser("build")
    p_build.add_argument("--ifs", required=True)
    p_build.add_argument("--resolution", type=float, required=True)
    p_build.add_argument("--out", required=True)
    p_build.add_argument("--cap", type=int, default=2 ** 24,
                         help="point budget")
    p_info = cloud_sub.add_parser("info")
    p_info.add_argument("path")

    p_driver = sub.add_parser("driver", help="symbol streams")
    driver_sub = p_driver.add_subparsers(dest="driver_cmd", required=True)
    for name in ("emit", "stats"):
        p = driver_sub.add_parser(name)
        p.add_argument("driver",
                       choices=["champernowne", "debruijn", "example4", "random"])
        p.add_argument("--alphabet", type=int, default=2)
        p.add_argument("--z", type=float, default=1.0)
        p.add_argument("--seed", type=int, default=0)
        if name == "emit":
            p.add_argument("-n", "--count", type=int, required=True)
        else:
            p.add_argument("--stats", type=int, required=True, metavar="M",
                           help="emit n_i(m) rows for m = 1..M")
            p.add_argument("--cap", type=int, default=10 ** 9)

    p_rec = sub.add_parser("recover", help="one recovery-time measurement")
    p_rec.add_argument("--ifs", required=True)
    p_rec.add_argument("--driver", required=True)
    p_rec.add_argument("--x0", required=True,
                       help="coordinates, space separated")
    p_rec.add_argument("--eps", type=float, required=True)
    p_rec.add_argument("--resolution", type=float, default=1e-6)
    p_rec.add_argument("--z", type=float, default=1.0)
    p_rec.add_argument("--seed", type=int, default=0)
    p_rec.add_argument("--cap", type=int, default=10 ** 7)

    p_dim = sub.add_parser("dim", help="box-dimension estimate")
    p_dim.add_argument("--ifs", required=True)
    p_dim.add_argument("--a", type=float, default=1.0)
    p_dim.add_argument("--r", type=float, required=True)
    p_dim.add_argument("--m-lo", type=int, required=True)
    p_dim.add_argument("--m-hi", type=int, required=True)
    p_dim.add_argument("--resolution", type=float, required=True)

    p_sch = sub.add_parser("schedule", help="slow-driver schedule table")
    p_sch.add_argument("--ifs", required=True)
    p_sch.add_argument("--psi", choices=["power", "iterexp"], default="power")
    p_sch.add_argument("--z", type=float, default=1.0)
    p_sch.add_argument("--order", type=int, default=2)
    p_sch.add_argument("--k-max", type=int, default=3)
    p_sch.add_argument("--step-cap", type=int, default=5 * 10 ** 6)
    p_sch.add_argument("--resolution", type=float, default=3e-7)
    p_sch.add_argument("--emit", type=int, default=0, metavar="N",
                       help="also print the first N driver symbols")

    p_exp = sub.add_parser("experiment", help="full experiment runs")
    exp_sub = p_exp.add_subparsers(dest="experiment_cmd", required=True)
    p_run = exp_sub.add_parser("run")
    p_run.add_argument("target", help="preset name or config file path")
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--cache", default=None)
    p_run.add_argument("--cap", type=int, default=None,
                       help="override the orbit cap")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the seed")
    return parser


_DISPATCH = {
    "cloud": _cmd_cloud,
    "driver": _cmd_driver,
    "recover": _cmd_recover,
    "dim": _cmd_dim,
    "schedule": _cmd_schedule,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4
    except ChaosGameError as exc:   # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
