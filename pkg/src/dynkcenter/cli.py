"""Command-line interface: stream generation, replay, verification and
benchmarking.

Exit codes: 0 success, 1 usage error, 2 invariant or verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import core, runner, streamgen
from .errors import DynKCenterError, InvariantViolation


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dynkcenter", description="Dynamic k-center clustering with lifetimes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a stream file")
    gen.add_argument("--kind", required=True, choices=["sliding", "random", "hbounded", "adversarial"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--h", type=int, default=0)
    gen.add_argument("--window", type=int, default=10)
    gen.add_argument("--gamma", type=float, default=1.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--max-life", type=int, default=20)
    gen.add_argument("--out", required=True)
    gen.add_argument("--matrix-out", default=None, help="sidecar CSV for matrix metrics")

    def common(p, oracle_cap=False):
        p.add_argument("--algo", required=True, choices=["two", "six"])
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--epsilon", type=float, required=True)
        p.add_argument("--dmin", type=float, default=None)
        p.add_argument("--dmax", type=float, default=None)
        p.add_argument("--prescan", action="store_true",
                       help="compute distance bounds from the stream")
        p.add_argument("--stream", required=True)
        p.add_argument("--metric", default="euclidean",
                       help="'euclidean' or 'matrix:PATH'")
        p.add_argument("--queries", default="end",
                       help="'every', 'end', or 'at:t1,t2,...'")
        p.add_argument("--report", default=None, help="CSV output path")
        p.add_argument("--no-reclustering", action="store_true")
        if oracle_cap:
            p.add_argument("--oracle-cap", type=int, default=16)

    run_p = sub.add_parser("run", help="replay a stream")
    common(run_p)

    ver_p = sub.add_parser("verify", help="replay with oracle and invariant audits")
    common(ver_p, oracle_cap=True)

    bench_p = sub.add_parser("bench", help="operation-count growth benchmark")
    bench_p.add_argument("--sizes", required=True, help="comma list, e.g. 200,400,800")
    bench_p.add_argument("--kind", default="adversarial", choices=["adversarial", "random"])
    bench_p.add_argument("--algo", default="two", choices=["two", "six"])
    bench_p.add_argument("--k", type=int, default=2)
    bench_p.add_argument("--epsilon", type=float, default=1.0)
    bench_p.add_argument("--gamma", type=float, default=1.0)
    bench_p.add_argument("--seed", type=int, default=0)
    bench_p.add_argument("--max-life", type=int, default=64)
    bench_p.add_argument("--dim", type=int, default=2)
    bench_p.add_argument("--no-reclustering", action="store_true")
    return parser


def _load_metric(args, points):
    if args.metric == "euclidean":
        dims = {len(p.payload) for p in points if not isinstance(p.payload, int)}
        if len(dims) != 1:
            raise DynKCenterError("stream has no consistent coordinate dimension")
        return core.EuclideanMetric(dims.pop())
    if args.metric.startswith("matrix:"):
        table = core.load_matrix_csv(args.metric.split(":", 1)[1])
        return core.MatrixMetric(table)
    raise DynKCenterError(f"unknown metric spec {args.metric!r}")


def _parse_queries(spec):
    if spec in ("every", "end"):
        return spec
    if spec.startswith("at:"):
        return [int(x) for x in spec[3:].split(",") if x]
    raise DynKCenterError(f"bad --queries value {spec!r}")


def _cmd_gen(args):
    if args.kind == "sliding":
        rng = streamgen._rng(args.seed)
        gen = streamgen.sliding_window_stream(rng.random((args.n, args.dim)), args.window)
    elif args.kind == "random":
        gen = streamgen.random_lifetime_stream(args.n, args.dim, args.max_life, args.seed)
    elif args.kind == "hbounded":
        gen = streamgen.h_bounded_stream(args.n, args.h, args.dim, args.seed)
    else:
        gen = streamgen.adversarial_quadratic_stream(args.n, args.gamma)
        matrix_out = args.matrix_out or args.out + ".matrix.csv"
        core.save_matrix_csv(gen.metric.table, matrix_out)
        print(f"wrote matrix sidecar to {matrix_out}")
    core.save_stream_jsonl(gen.stream.points, args.out)
    print(
        f"wrote {len(gen.stream.points)} points to {args.out} "
        f"(d_min={gen.stream.d_min:.6g}, d_max={gen.stream.d_max:.6g}, "
        f"H={streamgen.measure_h(gen.stream)})"
    )
    return 0


def _cmd_run(args, verify):
    points = core.load_stream_jsonl(args.stream)
    metric = _load_metric(args, points)
    if args.prescan:
        d_min, d_max = core.pairwise_extremes(metric.clone(), points)
    else:
        if args.dmin is None or args.dmax is None:
            raise DynKCenterError("supply --dmin/--dmax or use --prescan")
        d_min, d_max = args.dmin, args.dmax
    stream = core.validate_stream(points, metric.clone(), d_min, d_max)
    config = runner.RunConfig(
        algorithm=args.algo,
        k=args.k,
        epsilon=args.epsilon,
        d_min=d_min,
        d_max=d_max,
        queries=_parse_queries(args.queries),
        verify=verify,
        reclustering_enabled=not args.no_reclustering,
        oracle_cap=getattr(args, "oracle_cap", 16),
    )
    report = runner.run(config, stream, metric)
    if args.report:
        report.to_csv(args.report)
        print(f"wrote {len(report.rows)} report rows to {args.report}")
    for row in report.rows:
        print(
            f"t={row['time']} active={row['active_size']} radius={row['radius']} "
            f"oracle={row['oracle_radius']} gamma={row['gamma']} "
            f"ops={row['structural_ops']} dists={row['distance_evals']}"
        )
    if verify:
        print("verification passed: all invariants and ratio bounds hold")
    return 0


def _cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    if args.kind == "adversarial":
        config = runner.RunConfig(
            algorithm="two",
            k=args.k,
            epsilon=args.epsilon,
            d_min=args.gamma,
            d_max=args.gamma,
            reclustering_enabled=not args.no_reclustering,
            single_gamma=args.gamma,
        )
        make = lambda n: streamgen.adversarial_quadratic_stream(n, args.gamma)
    else:
        config = runner.RunConfig(
            algorithm=args.algo,
            k=args.k,
            epsilon=args.epsilon,
            d_min=0.05,
            d_max=2.0,
            reclustering_enabled=not args.no_reclustering,
        )
        make = lambda n: streamgen.random_lifetime_stream(
            n, args.dim, args.max_life, args.seed
        )
    rows = runner.bench(make, config, sizes)
    print("n,structural_ops,distance_evals,wall_time,peak_stored,growth_ratio")
    for row in rows:
        print(
            f"{row['n']},{row['structural_ops']},{row['distance_evals']},"
            f"{row['wall_time']:.4f},{row['peak_stored']},"
            f"{row.get('growth_ratio', '')}"
        )
    return 0


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "run":
            return _cmd_run(args, verify=False)
        if args.command == "verify":
            return _cmd_run(args, verify=True)
        if args.command == "bench":
            return _cmd_bench(args)
    except InvariantViolation as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 2
    except DynKCenterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
