"""Command-line interface.

Exit codes: 0 success, 2 usage or validation error, 3 divergence,
4 fit failure. Failures print one ``kernelode: error: <Kind>: <message>``
line to standard error.
"""

import argparse
import math
import sys


from . import data, dynamics
from .evaluation import evaluate, one_step_errors, phase_portrait
from .exceptions import Diverged, KernelODEError, SingularSystem, UnsupportedDimension
from .regression import FitConfig, fit_batch, fit_online

EXIT_USAGE, EXIT_DIVERGED, EXIT_FIT = 2, 3, 4

# Initial conditions and steps are repo choices; the linear and lotka
# sample counts match the benchmark training-set sizes.
SIM_DEFAULTS = {
    "linear": {"x0": (1.0, 0.0), "dt": 0.02, "samples": 100},
    "lotka": {"x0": (20.0, 10.0), "dt": 0.5, "samples": 500},
    "sir": {"x0": (0.99, 0.01, 0.0), "dt": 0.5, "samples": 200},
    "chua": {"x0": (0.1, 0.0, 0.0), "dt": 0.01, "samples": 5000},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vector(text):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return values


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _nonnegative(text):
    value = float(text)
    if not (math.isfinite(value) and value >= 0):
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text!r}")
    return value


def _count(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _bandwidth(text):
    return text if text == "auto" else _positive(text)


def _param(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    return name.strip(), float(value)


def _sim_help():
    lines = ["defaults (x0, dt and the sir/chua sample counts are repo choices):"]
    for name, d in SIM_DEFAULTS.items():
        x0 = ",".join(f"{v:g}" for v in d["x0"])
        lines.append(f"  {name:7s} --x0 {x0}  --dt {d['dt']:g}  --samples {d['samples']}")
    lines.append("system parameters default to the benchmark values; override with --param NAME=VALUE")
    lines.append("negative vectors need '=': --x0=-1,2")
    return "\n".join(lines)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    common.add_argument("--output", "-o", help="output file (default: standard output)")
    common.add_argument("--format", choices=data.FORMATS, default="csv", help="output format")

    parser = _Parser(prog="kernelode", description="Learn and integrate kernel ODE models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", parents=[common], help="sample a benchmark system",
                       epilog=_sim_help(), formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("system", choices=sorted(dynamics.SYSTEMS))
    p.add_argument("--param", type=_param, action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--x0", type=_vector)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--dt", type=_positive)
    p.add_argument("--samples", type=_count)
    p.add_argument("--subsample", type=_count, help="keep N random samples (always the first)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", parents=[common], help="fit a model to a time-series CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--bandwidth", type=_bandwidth, default="auto", help="'auto' or a positive number")
    p.add_argument("--lambda", dest="ridge", type=_nonnegative, default=1e-6)
    p.add_argument("--mode", choices=("batch", "online"), default="batch")
    p.add_argument("--weighting", choices=("velocity", "increment"), default="velocity")
    p.add_argument("--passes", type=_count, default=200, help="online passes")
    p.add_argument("--learning-rate", type=_positive, default=0.1)
    p.add_argument("--tol", type=_nonnegative, default=0.0, help="online stopping tolerance")
    p.add_argument("--model-out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("forecast", parents=[common], help="integrate a fitted model")
    p.add_argument("--model", required=True)
    p.add_argument("--x0", default="first", help="'first' (needs --data) or a comma-separated vector")
    p.add_argument("--data", help="time-series CSV supplying x0, t0 and t1 defaults")
    p.add_argument("--t0", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--dt", type=_positive, help="step (default with --data: mean sampling gap)")
    p.add_argument("--solver", choices=("euler", "rk4"), default="rk4")
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("eval", parents=[common], help="score a model against data")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--solver", choices=("euler", "rk4"), default="rk4")
    p.add_argument("--dt", type=_positive, help="integration step (default: smallest data gap)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("portrait", parents=[common], help="phase portrait of a 2-d model")
    p.add_argument("--model", required=True)
    p.add_argument("--bounds", type=_vector, required=True, help="xmin,xmax,ymin,ymax")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--horizon", type=_positive, required=True)
    p.add_argument("--dt", type=_positive, required=True)
    p.add_argument("--solver", choices=("euler", "rk4"), default="rk4")
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("covid", parents=[common], help="epidemic counts to an S,I,R series")
    p.add_argument("--input", required=True)
    p.add_argument("--population", type=int, required=True)
    p.set_defaults(func=cmd_covid)
    return parser


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kv(mapping):
    return " ".join(f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}" for k, v in mapping.items())


def cmd_simulate(args):
    params_cls = dynamics.SYSTEMS[args.system]
    try:
        params = params_cls(**dict(args.param))
    except TypeError:
        raise UsageError(f"unknown parameter for {args.system}: {[n for n, _ in args.param]}") from None
    defaults = SIM_DEFAULTS[args.system]
    x0 = args.x0 if args.x0 is not None else defaults["x0"]
    if len(x0) != len(params.names):
        raise UsageError(f"--x0 needs {len(params.names)} values for {args.system}")
    M = args.samples or defaults["samples"]
    if M < 2:
        raise UsageError("--samples must be at least 2")
    ts = dynamics.simulate(params, x0, args.t0, M, args.dt or defaults["dt"])
    ts = data.TimeSeries(ts.times, ts.states, names=params.names)
    if args.subsample is not None:
        ts = data.subsample_nonuniform(ts, args.subsample, args.seed)
    _emit(args, data.write_timeseries(ts, None, args.format))
    return 0


def cmd_fit(args):
    ts = data.load_timeseries_csv(args.input)
    cfg = FitConfig(
        bandwidth=args.bandwidth,
        ridge=args.ridge,
        residual_weighting=args.weighting,
        n_passes=args.passes,
        learning_rate=args.learning_rate,
        tol=args.tol,
    )
    fitter = fit_batch if args.mode == "batch" else fit_online
    try:
        model = fitter(ts, cfg)
    except (SingularSystem, Diverged) as exc:
        return _fail(exc, EXIT_FIT)
    data.save_model(model, args.model_out)
    rmse, worst = one_step_errors(model, ts)
    summary = {"N": len(ts), "d": ts.dim, "bandwidth": model.bandwidth, "lambda": model.ridge,
               "mode": args.mode, "one_step_rmse": rmse, "one_step_max": worst}
    print(_kv(summary))
    return 0


def cmd_forecast(args):
    model = data.load_model(args.model)
    ts = data.load_timeseries_csv(args.data) if args.data else None
    if args.x0 == "first":
        if ts is None:
            raise UsageError("--x0 first needs --data")
        x0 = ts.states[0]
    else:
        try:
            x0 = _vector(args.x0)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
    t0 = args.t0 if args.t0 is not None else (ts.times[0] if ts is not None else 0.0)
    t1 = args.t1 if args.t1 is not None else (ts.times[-1] if ts is not None else None)
    dt = args.dt
    if dt is None and ts is not None:
        dt = float((ts.times[-1] - ts.times[0]) / (len(ts) - 1))
    if t1 is None or dt is None:
        raise UsageError("--t1 and --dt are required without --data")
    if not t1 > t0:
        raise UsageError(f"--t1 must exceed t0={t0!r}")
    names = ts.column_names if ts is not None and ts.dim == model.dim else None
    try:
        traj = dynamics.integrate(model.field, x0, t0, t1, dt, args.solver)
    except Diverged as exc:
        _emit(args, data.write_trajectory(exc.trajectory, None, names, args.format))
        return _fail(exc, EXIT_DIVERGED)
    _emit(args, data.write_trajectory(traj, None, names, args.format))
    return 0


def cmd_eval(args):
    model = data.load_model(args.model)
    ts = data.load_timeseries_csv(args.data)
    report = evaluate(model, ts, args.solver, args.dt)
    print(_kv(report.as_dict()))
    if args.output:
        d = report.as_dict()
        data.write_records(args.output, list(d), [list(d.values())], args.format)
    return 0


def cmd_portrait(args):
    model = data.load_model(args.model)
    if model.dim != 2:
        raise UnsupportedDimension(f"phase portraits need a 2-d model, got dim={model.dim}")
    if len(args.bounds) != 4:
        raise UsageError("--bounds needs xmin,xmax,ymin,ymax")
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    b = args.bounds
    trajs = phase_portrait(model, [(b[0], b[1]), (b[2], b[3])], args.grid, args.horizon,
                           args.dt, args.solver)
    _emit(args, data.write_portrait(trajs, None, None, args.format))
    return 0


def cmd_covid(args):
    records = data.load_epidemic_csv(args.input)
    ts = data.transform_covid(records, args.population)
    rows = [[repr(float(t)), *(str(int(v)) for v in x)] for t, x in zip(ts.times, ts.states)]
    if args.format == "json-lines":
        rows = [[float(t), *(int(v) for v in x)] for t, x in zip(ts.times, ts.states)]
    _emit(args, data.write_records(None, ["t", *ts.names], rows, args.format))
    return 0


def _fail(exc, code):
    msg = " ".join(str(exc).split())
    print(f"kernelode: error: {type(exc).__name__}: {msg}", file=sys.stderr)
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail(exc, EXIT_USAGE)
    except Diverged as exc:
        return _fail(exc, EXIT_DIVERGED)
    except SingularSystem as exc:
        return _fail(exc, EXIT_FIT)
    except (KernelODEError, ValueError, OSError) as exc:
        return _fail(exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
