"""Command-line front end.

    intlab suite run --name <suite> [--out report.json]
    intlab suite list
    intlab residual --eq <tag> --sol <family> [--<param> <val>]...
                    --grid "x=a:b:n,t=a:b:n" [--tol T] [--format json|csv]
    intlab flow <f0|f1|recon|pii|riccati> ...

Settings resolve in three layers: an optional line-oriented ``key = value``
config file, then command-line flags, then ``INTLAB_``-prefixed environment
variables (strongest).  Exit codes: 0 pass, 1 check failure, 2 usage/config
error.  Reports are deterministic apart from the wall_clock field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from . import catalog as C
from . import equations as Q
from . import flows as FL
from .fields import Field, FieldError
from .sampling import Region, SamplingError
from .suites import run_suite, suite_names

_ENV_PREFIX = "INTLAB_"
_PARAM_ALIASES = {"lambda": "lam", "lambda1": "lam1", "lam_1": "lam1"}


class UsageError(ValueError):
    pass


def _load_config(path: str | None) -> dict[str, str]:
    cfg: dict[str, str] = {}
    if path is None:
        path = "intlab.cfg" if os.path.exists("intlab.cfg") else None
    if path is None:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, val = line.split("=", 1)
                cfg[key.strip()] = val.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return cfg


def _setting(name: str, flag_value, cfg: dict[str, str], default=None):
    """config file < flag < INTLAB_ environment variable."""
    value = cfg.get(name, default)
    if flag_value is not None:
        value = flag_value
    env = os.environ.get(_ENV_PREFIX + name.upper())
    if env is not None:
        value = env
    return value


def _parse_grid(text: str) -> tuple[Region, int]:
    bounds: dict[str, tuple[float, float]] = {}
    count = 1
    try:
        for part in text.split(","):
            var, rng = part.split("=")
            a, b, n = rng.split(":")
            n = int(n)
            if n < 1:
                raise ValueError("node count must be >= 1")
            bounds[var.strip()] = (float(a), float(b))
            count *= n
        region = Region(bounds)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad --grid {text!r}: {exc}") from exc
    return region, count


def _norm_params(pairs: list[str]) -> dict[str, complex]:
    out: dict[str, complex] = {}
    for raw in pairs:
        if not raw.startswith("--"):
            raise UsageError(f"unexpected argument {raw!r}")
        if "=" in raw:
            key, val = raw[2:].split("=", 1)
        else:
            raise UsageError(f"parameter flag {raw!r} needs --name=value form")
        key = _PARAM_ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        try:
            out[key] = complex(val)
        except ValueError as exc:
            raise UsageError(f"bad numeric value in {raw!r}") from exc
    return out


def _resolve_solution(name: str, params: dict[str, complex]) -> Field:
    if name == "zero":
        return Field.from_expression("zero", "0*x", ("x", "t"))
    if name.startswith("seed."):
        member = name.split(".", 1)[1]
        tup = C.seed_family(params.pop("lam", 1.0), params.pop("c", 0.0),
                            params.pop("c0", 0.0))
        members = tup.fields()
        if member not in members:
            raise UsageError(f"seed tuple has no member {member!r}")
        return members[member]
    if name == "cnoidal-omega4-constructive":
        return C.cnoidal_constructive(**params)
    try:
        return C.field(name, **params)
    except (KeyError, FieldError) as exc:
        raise UsageError(str(exc)) from exc


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_suite(args, cfg, extra) -> int:
    if extra:
        raise UsageError(f"unexpected arguments: {extra}")
    if args.action == "list":
        for name in suite_names():
            print(name)
        return 0
    name = args.name
    if name not in suite_names():
        raise UsageError(f"unknown suite {name!r} (try: intlab suite list)")
    t0 = time.time()
    result = run_suite(name)
    result["tool_version"] = __version__
    result["wall_clock"] = time.time() - t0
    out = _setting("out", args.out, cfg)
    text = json.dumps(result, indent=2, sort_keys=True, default=_json_num)
    _write_or_print(text, out)
    for case in result["cases"]:
        status = "PASS" if case["pass"] else ("INFO" if case["informational"]
                                              else "FAIL")
        print(f"{status} {name}:{case['name']} metric={case['metric']:.3e}",
              file=sys.stderr)
    return 0 if result["overall_pass"] else 1


def _json_num(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


def _cmd_residual(args, cfg, extra) -> int:
    params = _norm_params(extra)
    tol = float(_setting("tol", args.tol, cfg, 1e-9))
    fmt = _setting("format", args.format, cfg, "json")
    if fmt not in ("json", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    try:
        tag = Q.normalize_tag(args.eq)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    eq = Q.EQUATIONS[tag]
    region, count = _parse_grid(_setting("grid", args.grid, cfg,
                                         "x=-3:3:8,t=0.1:1:4"))
    count = min(count, 400)

    if args.sol == "seed" or (args.sol.startswith("seed") and len(eq.fields) > 1):
        tup = C.seed_family(params.get("lam", 1.0), params.get("c", 0.0),
                            params.get("c0", 0.0))
        members = tup.fields()
        try:
            fields = {name: members[name] for name in eq.fields}
        except KeyError as exc:
            raise UsageError(
                f"equation {tag!r} needs field {exc}; the seed tuple carries "
                f"{sorted(members)}") from exc
    elif len(eq.fields) > 1:
        raise UsageError(
            f"equation {tag!r} consumes fields {eq.fields}; pass --sol seed "
            "or use the library API for other tuples")
    else:
        field = _resolve_solution(args.sol, dict(params))
        fields = {name: field for name in eq.fields}
    eq_params = {k: params[k] for k in eq.params if k in params}
    missing = [k for k in eq.params if k not in eq_params]
    for k in missing:
        eq_params[k] = 0.0
    try:
        rep = Q.scan(tag, fields, eq_params, region, count, tol)
    except SamplingError as exc:
        raise UsageError(str(exc)) from exc
    text = rep.to_json() if fmt == "json" else rep.to_csv()
    _write_or_print(text, _setting("out", args.out, cfg))
    print(f"{'PASS' if rep.passed else 'FAIL'} {tag} on {args.sol}: "
          f"max_rel={rep.max_rel:.3e} (tol {tol:g})", file=sys.stderr)
    return 0 if rep.passed else 1


def _traj_csv(sol, n: int) -> str:
    head = ["var"]
    for i in range(1, n + 1):
        head += [f"q{i}_re", f"q{i}_im"]
    for i in range(1, n + 1):
        head += [f"p{i}_re", f"p{i}_im"]
    lines = [",".join(head)]
    for t, y in zip(sol.ts, sol.ys):
        row = [repr(float(t))]
        for i in range(n):
            row += [repr(float(y[i].real)), repr(float(y[i].imag))]
        for i in range(n):
            row += [repr(float(y[n + i].real)), repr(float(y[n + i].imag))]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _parse_vector(text: str, n: int, what: str) -> np.ndarray:
    vals = [complex(v) for v in str(text).split(",")]
    if len(vals) == 1 and n > 1:
        vals = vals * n
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated values")
    return np.array(vals)


def _cmd_flow(args, cfg, extra) -> int:
    params = _norm_params(extra)
    out_prefix = _setting("out", args.out, cfg, "intlab-flow")
    summary: dict = {"tool_version": __version__, "subcommand": args.flow_cmd}
    t0 = time.time()

    if args.flow_cmd in ("f0", "f1"):
        n = int(args.n)
        if not 1 <= n <= 8:
            raise UsageError("component count must be in 1..8")
        st = FL.FlowState(
            q=_parse_vector(args.q0, n, "--q0"),
            p=_parse_vector(args.p0, n, "--p0"),
            c=_parse_vector(args.c, n, "--c"),
            lam=_parse_vector(params.get("lam", 1.0), n, "--lambda"),
        )
        end = float(args.end)
        sol = (FL.integrate_F0(st, end, start=0.0) if args.flow_cmd == "f0"
               else FL.integrate_F1(st, end, start=0.0))
        with open(f"{out_prefix}-trajectory.csv", "w") as fh:
            fh.write(_traj_csv(sol, n))
        summary.update(nsteps=sol.nsteps, nfev=sol.nfev, singular=sol.singular,
                       t_singular=sol.t_singular, end_state=list(sol.y_end))
    elif args.flow_cmd == "recon":
        n = int(args.n)
        if not 1 <= n <= 8:
            raise UsageError("component count must be in 1..8")
        lam = _parse_vector(params.get("lam", 1.0), n, "--lambda")
        if args.soliton:
            if n != 1:
                raise UsageError("--soliton is the single-component oracle")
            st = FL.soliton_state(lam[0])
            lv = complex(lam[0]).real
            oracle = (lambda xs, tj:
                      -2.0 * lv / np.cosh(np.sqrt(lv) * (xs - 4.0 * lv * tj)) ** 2)
        else:
            st = FL.FlowState(q=_parse_vector(args.q0, n, "--q0"),
                              p=_parse_vector(args.p0, n, "--p0"),
                              c=_parse_vector(args.c, n, "--c"), lam=lam)
            oracle = None
        rep = FL.reconstruct_and_check_kdv(st, oracle=oracle)
        with open(f"{out_prefix}-grid.csv", "w") as fh:
            fh.write("x,t,omega_re,omega_im\n")
            for i, tj in enumerate(rep.t):
                for j, xj in enumerate(rep.x):
                    w = complex(rep.omega[i, j])
                    fh.write(f"{float(xj)!r},{float(tj)!r},"
                             f"{w.real!r},{w.imag!r}\n")
        summary.update(max_fd_residual=rep.max_fd_residual,
                       max_fd_rel=rep.max_fd_rel,
                       fd_error_estimate=rep.fd_error_estimate,
                       conclusive=rep.conclusive, singular=rep.singular,
                       oracle_max_err=rep.oracle_max_err)
    elif args.flow_cmd == "pii":
        if args.from_rational:
            alpha, init, xi0 = 1.0, (-1.0, 1.0), 1.0
        else:
            alpha = complex(params.get("alpha", 0.0))
            init = (complex(args.p0), complex(args.p1))
            xi0 = float(args.xi0)
        sol = FL.integrate_PII(alpha, init, xi0, float(args.end))
        with open(f"{out_prefix}-trajectory.csv", "w") as fh:
            fh.write("var,q1_re,q1_im,p1_re,p1_im\n")
            for t, y in zip(sol.ts, sol.ys):
                fh.write(f"{float(t)!r},{float(y[0].real)!r},{float(y[0].imag)!r},"
                         f"{float(y[1].real)!r},{float(y[1].imag)!r}\n")
        summary.update(nsteps=sol.nsteps, singular=sol.singular,
                       t_singular=sol.t_singular, alpha=alpha)
        if args.from_rational:
            worst = max(abs(y[0] - (-1.0 / t)) for t, y in zip(sol.ts, sol.ys))
            summary["rational_match_max_err"] = worst
    elif args.flow_cmd == "riccati":
        u = _resolve_solution(args.sol, dict(params))
        lam = complex(params.get("lam", 1.0))
        sol = FL.integrate_riccati_bt(u, lam, complex(args.u1_0),
                                      (float(args.start), float(args.end)),
                                      float(args.fixed), args.direction)
        with open(f"{out_prefix}-trajectory.csv", "w") as fh:
            fh.write("var,q1_re,q1_im\n")
            for t, y in zip(sol.ts, sol.ys):
                fh.write(f"{float(t)!r},{float(y[0].real)!r},{float(y[0].imag)!r}\n")
        summary.update(nsteps=sol.nsteps, singular=sol.singular,
                       t_singular=sol.t_singular)
    else:
        raise UsageError(f"unknown flow subcommand {args.flow_cmd!r}")

    summary["wall_clock"] = time.time() - t0
    with open(f"{out_prefix}-summary.json", "w") as fh:
        fh.write(json.dumps(summary, indent=2, sort_keys=True, default=_json_num))
    print(f"wrote {out_prefix}-summary.json", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="intlab")
    ap.add_argument("--config", default=None, help="key = value settings file")
    sub = ap.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run or list verification suites")
    suite_sub = suite.add_subparsers(dest="action", required=True)
    run = suite_sub.add_parser("run")
    run.add_argument("--name", required=True)
    run.add_argument("--out", default=None)
    suite_sub.add_parser("list")

    res = sub.add_parser("residual", help="scan one equation on one family")
    res.add_argument("--eq", required=True)
    res.add_argument("--sol", required=True)
    res.add_argument("--grid", default=None)
    res.add_argument("--tol", type=float, default=None)
    res.add_argument("--format", default=None, choices=(None, "json", "csv"))
    res.add_argument("--out", default=None)

    flow = sub.add_parser("flow", help="trajectory runs and reconstruction")
    flow_sub = flow.add_subparsers(dest="flow_cmd", required=True)
    for name in ("f0", "f1"):
        p = flow_sub.add_parser(name)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--q0", default="1")
        p.add_argument("--p0", default="0")
        p.add_argument("--c", default="-2")
        p.add_argument("--end", type=float, default=2.0)
        p.add_argument("--out", default=None)
    p = flow_sub.add_parser("recon")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--q0", default="1")
    p.add_argument("--p0", default="0")
    p.add_argument("--c", default="-2")
    p.add_argument("--soliton", action="store_true")
    p.add_argument("--out", default=None)
    p = flow_sub.add_parser("pii")
    p.add_argument("--p0", default="0")
    p.add_argument("--p1", default="0")
    p.add_argument("--xi0", type=float, default=0.0)
    p.add_argument("--end", type=float, default=2.0)
    p.add_argument("--from-rational", action="store_true")
    p.add_argument("--out", default=None)
    p = flow_sub.add_parser("riccati")
    p.add_argument("--sol", default="zero")
    p.add_argument("--u1-0", dest="u1_0", default="0")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--end", type=float, default=2.0)
    p.add_argument("--fixed", type=float, default=0.0)
    p.add_argument("--direction", choices=("x", "t"), default="x")
    p.add_argument("--out", default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args, extra = ap.parse_known_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _load_config(args.config)
        if args.command == "suite":
            return _cmd_suite(args, cfg, extra)
        if args.command == "residual":
            return _cmd_residual(args, cfg, extra)
        if args.command == "flow":
            return _cmd_flow(args, cfg, extra)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SamplingError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
