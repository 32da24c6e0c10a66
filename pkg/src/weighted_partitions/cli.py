"""Command-line front end.

    wpart count  --model constant --n 100
    wpart cdf    --model linear --n 50 --m 10
    wpart saddle --model sqrt --n 1000
    wpart gumbel --model constant --n 600 --grid 0
    wpart sample --model constant --n 50 --samples 10000 --seed 1
    wpart verify mellin|perron|m3 --model linear ...

Data go to stdout (or --out, or $WPART_OUT_DIR/<subcommand>.<ext>); a
run manifest goes to stderr (or --manifest).  Exit codes: 0 ok, 1 usage,
2 domain error, 3 non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analytic import check_m3, mellin_F_check, perron_truncation_check
from .errors import ConvergenceError, DomainError
from .limit_law import Normalization, diagnostic
from .saddle import meinardus_estimate, solve_saddle
from .sampler import empirical_largest_part
from .series import Mode, cdf_exact, count, expand, format_log_count, format_value, largest_part_cdf
from .weights import WeightModel, from_spec, load_model

OUT_DIR_ENV = "WPART_OUT_DIR"
MELLIN_TOL = 1e-6
PERRON_TOL = 0.02

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


@dataclass
class RunManifest:
    subcommand: str
    model_spec: dict
    parameters: dict
    seed: int | None = None
    tool_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    summary: dict | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _default_mode(model: WeightModel, requested):
    if requested:
        return Mode(requested)
    return Mode.EXACT if model.rational_weights else Mode.LOG


def _render(mode: Mode, value, as_count: bool) -> str:
    if mode is Mode.LOG and as_count:
        return format_log_count(value)
    return format_value(value, mode)


# --- subcommands: each returns (data text, extension, summary or None) ---

def cmd_count(model, args):
    mode = _default_mode(model, args.mode)
    table = expand(model, args.n, args.m, mode)
    m = "" if args.m is None else args.m
    value = count(table, args.n)
    if args.format == "json":
        return _json({"n": args.n, "m": args.m, "value": _render(mode, value, True),
                      "mode": mode.value, "formal": table.formal}), "json", None
    return _csv(["n", "m", "value"], [[args.n, m, _render(mode, value, True)]]), "csv", None


def cmd_cdf(model, args):
    mode = _default_mode(model, args.mode)
    if args.m is None:
        values = largest_part_cdf(model, args.n, mode)
        rows = [[args.n, m, format_value(values[m], mode)] for m in range(1, args.n + 1)]
    else:
        rows = [[args.n, args.m, format_value(cdf_exact(model, args.n, args.m, mode), mode)]]
    if args.format == "json":
        return _json({"rows": [dict(zip(("n", "m", "value"), r)) for r in rows],
                      "mode": mode.value, "formal": not model.integer_weights}), "json", None
    return _csv(["n", "m", "value"], rows), "csv", None


def cmd_saddle(model, args):
    sol = solve_saddle(model, args.n)
    out = {
        "n": sol.n,
        "alpha_n": sol.alpha_n,
        "alpha_expansion": sol.alpha_expansion,
        "F": sol.F_value,
        "B": sol.B_value,
        "h": sol.h,
        "residual": sol.residual,
        "meinardus_log_estimate": meinardus_estimate(model, args.n),
    }
    return _json(out), "json", None


def cmd_gumbel(model, args):
    mode = Mode(args.mode) if args.mode else Mode.LOG
    diag = diagnostic(model, args.n, _floats(args.grid), args.normalization, mode)
    summary = diag.summary()
    if args.format == "json":
        rows = [dict(asdict(r), abs_err=r.abs_err) for r in diag.grid]
        return _json({"rows": rows, "summary": summary}), "json", summary
    rows = [[repr(r.t), r.m, f"{r.exact_cdf:.15g}", f"{r.closed_form_cdf:.15g}",
             f"{r.gumbel_cdf:.15g}", f"{r.abs_err:.15g}"] for r in diag.grid]
    return _csv(["t", "m", "exact", "closed_form", "gumbel", "abs_err"], rows), "csv", summary


def cmd_sample(model, args):
    law = empirical_largest_part(model, args.n, args.samples, args.seed, max_tries=args.max_tries)
    summary = {"ks": law.ks, "ks_critical_99": law.ks_critical(0.99), "tries_mean": law.tries_mean,
               "seed": args.seed, "samples": args.samples, "n": args.n}
    if args.format == "json":
        return _json({"frequencies": {str(k): v for k, v in law.frequencies.items()},
                      "summary": summary}), "json", summary
    rows = [[k, v] for k, v in sorted(law.frequencies.items())]
    return _csv(["largest_part", "count"], rows), "csv", summary


def _verify_mellin(model, args):
    ms = [None] if args.m is None else _ints(args.m)
    checks = [mellin_F_check(model, args.alpha, m, args.delta, args.y_max, args.step, MELLIN_TOL) for m in ms]
    ok = all(c.abs_diff < MELLIN_TOL and c.converged for c in checks)
    body = checks[0].to_dict() if len(checks) == 1 else {"checks": [c.to_dict() for c in checks]}
    return {**body, "pass": ok, "tolerance": MELLIN_TOL}


def _verify_perron(model, args):
    ms = _ints(args.m or "100,1000,10000")
    w = complex(args.w.replace(" ", ""))
    checks = [perron_truncation_check(model, w, m, args.T, args.C1, args.integral) for m in ms]
    mags = [abs(c.omega_m) for c in checks]
    ok = all(b < a for a, b in zip(mags, mags[1:])) and mags[-1] < PERRON_TOL
    return {"w": {"re": w.real, "im": w.imag}, "checks": [c.to_dict() for c in checks],
            "abs_omega": mags, "pass": ok, "tolerance": PERRON_TOL}


def _verify_m3(model, args):
    alphas = _floats(args.alpha_grid)
    checks = [check_m3(model, a, args.grid_size) for a in sorted(alphas, reverse=True)]
    mins = [c.min_S for c in checks]
    ratios = [c.bound_ratio["0.5"] for c in checks]
    growing = all(b > a for a, b in zip(mins, mins[1:]))
    bounded = min(ratios) >= 0.5 * ratios[0]
    return {"checks": [c.to_dict() for c in checks], "growing": growing,
            "bounded_at_half": bounded, "pass": growing and bounded}


def cmd_verify(model, args):
    handler = {"mellin": _verify_mellin, "perron": _verify_perron, "m3": _verify_m3}[args.check]
    out = handler(model, args)
    out["check"] = args.check
    out["certified_model"] = model.certified
    return _json(out), "json", {"pass": out["pass"]}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", required=True, help="built-in name, inline JSON, or JSON file")
    common.add_argument("--out", help="data output path (default stdout or $%s)" % OUT_DIR_ENV)
    common.add_argument("--manifest", help="manifest path (default stderr)")

    tabular = _Parser(add_help=False)
    tabular.add_argument("--format", choices=("csv", "json"), default="csv")

    p = _Parser(prog="wpart", description="Weighted partition statistics")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("count", parents=[common, tabular], help="p_b(n) or its truncation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--mode", choices=[m.value for m in Mode])
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("cdf", parents=[common, tabular], help="P(X_n <= m); all m when --m is omitted")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--mode", choices=[m.value for m in Mode])
    s.set_defaults(func=cmd_cdf)

    s = sub.add_parser("saddle", parents=[common], help="saddle point and Meinardus estimate")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_saddle)

    s = sub.add_parser("gumbel", parents=[common, tabular], help="exact vs Gumbel CDF on a t-grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--grid", default="-2,-1,0,1,2,3")
    s.add_argument("--normalization", choices=[x.value for x in Normalization], default="alpha")
    s.add_argument("--mode", choices=[m.value for m in Mode])
    s.set_defaults(func=cmd_gumbel)

    s = sub.add_parser("sample", parents=[common, tabular], help="Monte Carlo largest-part law")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int)
    s.add_argument("--max-tries", type=int, help="rejection budget; exceeding it exits with code 3")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("verify", parents=[common], help="numerical identity checks")
    s.add_argument("check", choices=("mellin", "perron", "m3"))
    s.add_argument("--alpha", type=float, default=0.3, help="mellin: alpha")
    s.add_argument("--m", help="mellin: truncation(s); perron: m list (default 100,1000,10000)")
    s.add_argument("--delta", type=float, default=1.5)
    s.add_argument("--y-max", type=float, default=200.0)
    s.add_argument("--step", type=float, default=0.01)
    s.add_argument("--w", default="2.5", help="perron: complex w with Re(w) > 2")
    s.add_argument("--T", type=float, help="perron: integral height (<= admissible bound)")
    s.add_argument("--C1", type=float, default=1.0)
    s.add_argument("--integral", action="store_true", help="perron: also evaluate the truncated integral")
    s.add_argument("--alpha-grid", default="0.1,0.03,0.01", help="m3: alphas")
    s.add_argument("--grid-size", type=int, default=10_000)
    s.set_defaults(func=cmd_verify)
    return p


_NON_PARAMS = {"func", "out", "manifest", "model"}
_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv: list) -> list:
    # argparse reads "--grid -1,0,1" as two flags; glue such values on with '='
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _write(path: str | None, text: str, stream) -> None:
    if path is None:
        stream.write(text)
        stream.flush()
        return
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, dispatch, and return the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_attach_negative_values(argv))
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    if args.subcommand == "sample" and args.seed is None:
        args.seed = int(np.random.SeedSequence().entropy % (1 << 63))
    try:
        model = load_model(args.model)
        data, ext, summary = args.func(model, args)
    except (OSError, json.JSONDecodeError, UsageError) as exc:
        stderr.write(f"wpart: error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        stderr.write(f"wpart: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (DomainError, ValueError, KeyError, IndexError) as exc:
        stderr.write(f"wpart: domain error: {exc}\n")
        return EXIT_DOMAIN
    out = args.out
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = os.path.join(os.environ[OUT_DIR_ENV], f"{args.subcommand}.{ext}")
    _write(out, data, stdout)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _NON_PARAMS}
    params["argv"] = argv
    manifest = RunManifest(
        subcommand=args.subcommand,
        model_spec=model.to_spec(),
        parameters=params,
        seed=getattr(args, "seed", None),
        summary=summary,
    )
    _write(args.manifest, manifest.to_json() + "\n", stderr)
    return EXIT_OK


def replay(manifest, stdout=None, stderr=None) -> int:
    """Re-run the invocation recorded in a manifest (dict, JSON text or path).

    The recorded argv is reused with the seed pinned, so a sampling run
    started without --seed replays identically.
    """
    if isinstance(manifest, str):
        manifest = json.loads(manifest) if manifest.lstrip().startswith("{") else json.load(open(manifest))
    argv = list(manifest["parameters"]["argv"])
    if manifest.get("seed") is not None and "--seed" not in argv:
        argv += ["--seed", str(manifest["seed"])]
    return run(argv, stdout=stdout, stderr=stderr if stderr is not None else io.StringIO())


def model_from_manifest(manifest: dict) -> WeightModel:
    return from_spec(manifest["model_spec"])


def main() -> None:
    sys.exit(run())
