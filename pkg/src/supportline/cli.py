"""Command-line front end.

Subcommands
-----------
reject    apply a procedure (sl / bh / adaptive-sl) to a p-value file
lfdr      per-p-value density and lfdr estimates from the shape-constrained MLE
simulate  run a scenario file or preset and write the aggregate CSV
predict   print the limiting-law predictions for a model or explicit constants

Inputs are one p-value per line ('#' comments allowed) or a single-column CSV
with header ``p``.  All numbers are serialized with 17 significant digits so
round-trips are lossless.  Every error path exits nonzero with a one-line
``error: ...`` message on stderr.  The SUPPORTLINE_OUTDIR environment
variable, when set, provides the directory for bare output filenames.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys

import numpy as np

from . import asymptotics, models, procedures, sample_core, simulation

__all__ = ["main"]


class CliError(Exception):
    """User-facing error with a one-line message and nonzero exit."""


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def _json_dump(obj, out: io.TextIOBase, indent: int = 0) -> None:
    # tiny serializer so floats carry exactly 17 significant digits
    pad = " " * indent
    if isinstance(obj, dict):
        out.write("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.write(pad + '  "' + str(k) + '": ')
            _json_dump(v, out, indent + 2)
            out.write(",\n" if i < len(items) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for i, v in enumerate(obj):
            if i:
                out.write(", ")
            _json_dump(v, out, indent + 2)
        out.write("]")
    elif isinstance(obj, str):
        out.write(f'"{obj}"')
    elif isinstance(obj, bool):
        out.write("true" if obj else "false")
    elif obj is None:
        out.write("null")
    else:
        out.write(_fmt(obj))


def read_pvalue_file(path: str) -> list[float]:
    """Parse a p-value file: one value per line or single-column CSV with header p."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read input file {path!r}: {exc.strerror}") from exc
    values: list[float] = []
    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if lines and lines[0] == "p":
        lines = lines[1:]
    for ln in lines:
        try:
            v = float(ln)
        except ValueError as exc:
            raise CliError(f"malformed number {ln!r} in {path!r}") from exc
        if math.isnan(v) or not (0.0 <= v <= 1.0):
            raise CliError(f"p-value {ln!r} outside [0, 1] in {path!r}")
        values.append(v)
    if not values:
        raise CliError("empty sample")
    return values


def _make_sample(values: list[float]) -> sample_core.PValueSample:
    try:
        return sample_core.PValueSample(np.array(values))
    except sample_core.EmptySampleError as exc:
        raise CliError("empty sample") from exc


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    outdir = os.environ.get("SUPPORTLINE_OUTDIR")
    if outdir and not os.path.isabs(path) and os.sep not in path:
        path = os.path.join(outdir, path)
    try:
        return open(path, "w", encoding="utf-8"), True
    except OSError as exc:
        raise CliError(f"cannot write output file {path!r}: {exc.strerror}") from exc


def _cmd_reject(args) -> int:
    values = read_pvalue_file(args.input)
    sample = _make_sample(values)
    if not (0.0 < args.q <= 1.0):
        raise CliError(f"level q={args.q!r} outside (0, 1]")
    try:
        if args.method == "sl":
            result = procedures.sl_reject(sample, args.q)
        elif args.method == "bh":
            result = procedures.bh_reject(sample, args.q)
        else:
            result = procedures.adaptive_sl_reject(sample, args.q, args.zeta)
    except (procedures.LevelError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    report: dict = {"method": args.method, "q": float(args.q)}
    if args.method == "adaptive-sl":
        report["zeta"] = float(args.zeta)
        report["pi0_hat"] = result.pi0_estimate
        report["effective_level"] = result.effective_level
    report.update(
        {
            "m": sample.m,
            "R": result.rejection_count,
            "tau": result.threshold,
            "rejected_indices": sorted(result.rejected_indices),
        }
    )
    out, close = _open_out(args.out)
    try:
        _json_dump(report, out)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def _cmd_lfdr(args) -> int:
    values = read_pvalue_file(args.input)
    sample = _make_sample(values)
    spec = args.pi0.strip()
    if spec == "1":
        pi0 = 1.0
    elif spec.startswith("storey:"):
        try:
            zeta = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise CliError(f"malformed storey spec {spec!r}") from exc
        try:
            pi0 = procedures.storey_pi0(sample, zeta)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    else:
        try:
            pi0 = float(spec)
        except ValueError as exc:
            raise CliError(f"malformed pi0 {spec!r}") from exc
        if not (0.0 < pi0 <= 1.0):
            raise CliError(f"pi0 {spec!r} outside (0, 1]")
    fit = sample_core.lcm_fit(sample)
    out, close = _open_out(args.out)
    try:
        out.write("index,p,f_hat,lfdr_hat\n")
        for i, p in enumerate(sample.values, start=1):
            if p > 0.0:
                f_hat = sample_core.grenander_density(fit, float(p))
            else:
                # left derivative undefined at 0; report the first segment slope
                f_hat = float(fit.slopes[0])
            lf = pi0 / f_hat if f_hat > 0.0 else math.inf
            out.write(f"{i},{_fmt(float(p))},{_fmt(float(f_hat))},{_fmt(float(lf))}\n")
    finally:
        if close:
            out.close()
    return 0


_CONFIG_KEYS = {
    "name",
    "model",
    "m",
    "dependence",
    "rho",
    "reps",
    "seed",
    "q_grid",
    "procedures",
    "zeta",
    "lambda",
}


def parse_scenario_file(path: str) -> simulation.ScenarioConfig:
    """Parse a key = value scenario file into a ScenarioConfig."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read scenario file {path!r}: {exc.strerror}") from exc
    kv: dict[str, str] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip().lower()
        if key not in _CONFIG_KEYS:
            raise CliError(
                f"{path}:{lineno}: unknown key {key!r}; valid keys: "
                + ", ".join(sorted(_CONFIG_KEYS))
            )
        kv[key] = val.strip()
    missing = {"model", "m", "reps", "seed", "q_grid", "procedures"} - kv.keys()
    if missing:
        raise CliError(f"scenario file missing keys: {', '.join(sorted(missing))}")
    try:
        zeta_raw = kv.get("zeta", "0.5")
        return simulation.ScenarioConfig(
            name=kv.get("name", os.path.splitext(os.path.basename(path))[0]),
            model=kv["model"],
            m=int(kv["m"]),
            replications=int(kv["reps"]),
            seed=int(kv["seed"]),
            q_grid=tuple(float(v) for v in kv["q_grid"].split(",") if v.strip()),
            procedures=tuple(v.strip() for v in kv["procedures"].split(",") if v.strip()),
            dependence=kv.get("dependence", "independent"),
            rho=float(kv.get("rho", "0")),
            zeta="auto" if zeta_raw == "auto" else float(zeta_raw),
            lambda_cost=float(kv.get("lambda", "4")),
        )
    except ValueError as exc:
        raise CliError(f"invalid scenario value: {exc}") from exc


def _cmd_simulate(args) -> int:
    if (args.scenario is None) == (args.preset is None):
        raise CliError("exactly one of --scenario or --preset is required")
    if args.scenario is not None:
        configs = [parse_scenario_file(args.scenario)]
    else:
        presets = simulation.scenario_presets()
        if args.preset not in presets:
            raise CliError(
                f"unknown preset {args.preset!r}; available: "
                + ", ".join(sorted(presets))
            )
        configs = list(presets[args.preset])
    entries = []
    for config in configs:
        table = simulation.run_scenario(config)
        entries.append((config, simulation.aggregate(table)))
    out, close = _open_out(args.out)
    try:
        simulation.write_aggregate_report(entries, out)
    finally:
        if close:
            out.close()
    return 0


def _cmd_predict(args) -> int:
    ms = [int(v) for v in args.m.split(",") if v.strip()]
    if not ms or any(m < 1 for m in ms):
        raise CliError("--m must list positive integers")
    alpha = args.alpha
    use_manual = args.fprime is not None
    if use_manual:
        pi0 = args.pi0 if args.pi0 is not None else 1.0
        if args.q is None:
            raise CliError("--q is required with --fprime")
        q = args.q
        fp = args.fprime
        if fp >= 0.0:
            raise CliError("--fprime must be negative")
        t_q = math.nan
    else:
        if args.model is None:
            raise CliError("either --model or --fprime constants are required")
        try:
            spec = models.model_preset(args.model)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        pi0 = spec.pi0
        q = args.q if args.q is not None else (alpha / pi0 if pi0 > 0 else alpha)
        if pi0 == 1.0:
            # global null: the cube-root laws degenerate and the relevant
            # prediction is the limit of m * regret
            limit = asymptotics.global_null_limit(q, lam=1.0 / alpha - 1.0)
            rows = [
                {"m": m, "q": q, "global_null_m_regret": limit.value,
                 "truncation_bound": limit.tail_bound}
                for m in ms
            ]
            return _emit_rows(rows, args)
        try:
            t_q = models.population_threshold_tq(spec, q)
            fp = models.mixture_f_prime(spec, t_q)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        if fp >= 0.0:
            raise CliError("assumption (ii) violated: f'(t_q) must be negative")

    rows = []
    for m in ms:
        mscale = m ** (-1.0 / 3.0)
        thr_scale = mscale * (q * fp * fp / 4.0) ** (-1.0 / 3.0)
        rel_scale = mscale * (4.0 * q * q * abs(fp)) ** (1.0 / 3.0)
        center = pi0 * q
        row = {"m": m}
        if not math.isnan(t_q):
            row["t_q"] = t_q
        row.update(
            {
                "threshold_scale": thr_scale,
                "lfdr_center": center,
                "lfdr_relative_scale": rel_scale,
                "lfdr_p95": asymptotics.lfdr_upper_percentile(center, rel_scale),
            }
        )
        if not use_manual and 0.0 < spec.pi0 < 1.0:
            try:
                row["regret_prediction"] = asymptotics.regret_prediction(spec, alpha, m)
            except ValueError:
                pass
        rows.append(row)
    return _emit_rows(rows, args)


def _emit_rows(rows, args) -> int:
    out, close = _open_out(args.out)
    try:
        if args.format == "json":
            _json_dump({"rows": rows}, out)
            out.write("\n")
        else:
            keys = list(rows[0].keys())
            out.write(",".join(keys) + "\n")
            for row in rows:
                out.write(",".join(_fmt(row.get(k, math.nan)) for k in keys) + "\n")
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supportline",
        description="Support-line multiple testing procedures and experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rej = sub.add_parser("reject", help="apply a rejection procedure to a p-value file")
    p_rej.add_argument("input", help="p-value file (one per line or CSV with header p)")
    p_rej.add_argument("--method", choices=("sl", "bh", "adaptive-sl"), default="sl")
    p_rej.add_argument("--q", type=float, required=True, help="procedure level in (0, 1]")
    p_rej.add_argument("--zeta", type=float, default=0.5, help="threshold for the null-proportion estimate")
    p_rej.add_argument("--out", default=None, help="output path (default stdout)")
    p_rej.set_defaults(func=_cmd_reject)

    p_lfdr = sub.add_parser("lfdr", help="density and lfdr estimates per p-value")
    p_lfdr.add_argument("input")
    p_lfdr.add_argument(
        "--pi0",
        default="1",
        help="null-proportion handling: a value in (0,1], 'storey:ZETA', or 1",
    )
    p_lfdr.add_argument("--out", default=None)
    p_lfdr.set_defaults(func=_cmd_lfdr)

    p_sim = sub.add_parser("simulate", help="run a simulation scenario")
    p_sim.add_argument("--scenario", default=None, help="scenario config file")
    p_sim.add_argument("--preset", default=None, help="named preset (e.g. fig3, fig3-ci)")
    p_sim.add_argument("--out", default=None)
    p_sim.set_defaults(func=_cmd_simulate)

    p_pred = sub.add_parser("predict", help="limiting-law predictions")
    p_pred.add_argument("--model", default=None, help="model preset name")
    p_pred.add_argument("--q", type=float, default=None, help="procedure level")
    p_pred.add_argument("--alpha", type=float, default=0.2, help="target lfdr level")
    p_pred.add_argument("--m", required=True, help="comma-separated sample sizes")
    p_pred.add_argument("--pi0", type=float, default=None, help="null proportion (manual mode)")
    p_pred.add_argument(
        "--fprime",
        type=float,
        default=None,
        help="mixture density slope at the population threshold (manual mode)",
    )
    p_pred.add_argument("--format", choices=("json", "csv"), default="json")
    p_pred.add_argument("--out", default=None)
    p_pred.set_defaults(func=_cmd_predict)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
