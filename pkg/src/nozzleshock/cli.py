"""Command line interface: ``nozzleshock states|solve|sweep|oracle``.

Exit codes
----------
0  success (also: oracle skipped below the shooting cutoff)
1  configuration or argument error, empty parameter list
2  inadmissible state (not supersonic, wrong model/law, admissibility failure)
3  solver failure (solve), or every parameter of a sweep failed
4  oracle disagreement between quadrature and shooting
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .alpha import Branch, QuadratureSpec, pick_root, solve_alpha
from .asymptotics import geometric_params, limit_alpha, limit_location, run_sweep
from .errors import (DegenerateWeight, InadmissibleState, NotSupersonic, ShockError,
                     XOutOfUnitInterval)
from .models import reduce
from .profile import SHOOTING_MIN_PARAM, reconstruct, shoot_ivp_oracle
from .report import write_csv, write_json, write_svg
from .states import ModelKind, admissibility, build_pair

EXIT_OK, EXIT_CONFIG, EXIT_INADMISSIBLE, EXIT_SOLVER, EXIT_ORACLE = 0, 1, 2, 3, 4

ORACLE_ALPHA_TOL = 1e-6
ORACLE_PROFILE_TOL = 1e-5

KNOWN_KEYS = ("model", "gamma", "M0sq", "q0", "delta", "R", "param", "params", "epsilon",
              "param_start", "param_factor", "param_count", "grid_n", "rel_tol", "abs_tol",
              "max_depth", "branch", "out")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: ModelKind
    gamma: float
    M0sq: float | None = None
    q0: float | None = None
    delta: float | None = None
    R: float = 1.0
    params: tuple = ()
    epsilon: tuple | None = None
    grid_n: int = 512
    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_depth: int = 50
    branch: Branch | None = None
    out: str = "."

    @property
    def spec(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                              max_depth=self.max_depth)

    def echo(self) -> dict:
        return {
            "model": self.model.value,
            "gamma": self.gamma,
            "M0sq": self.M0sq,
            "q0": self.q0,
            "delta": self.delta,
            "R": self.R,
            "params": list(self.params),
            "epsilon": None if self.epsilon is None else list(self.epsilon),
            "grid_n": self.grid_n,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_depth": self.max_depth,
            "branch": None if self.branch is None else self.branch.value,
        }


def parse_config_text(text: str) -> dict:
    """JSON object, or ``key = value`` / ``key: value`` lines.

    In the line form ``#`` starts a comment, and each value is read as JSON
    when possible (numbers, lists, quoted strings, null) and as a bare string
    otherwise.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise ConfigError(f"invalid JSON config: {err}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return data
    data = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        key, found, val = line.partition(sep)
        if not found or not key.strip():
            raise ConfigError(f"line {n}: expected 'key = value'")
        val = val.strip()
        try:
            data[key.strip()] = json.loads(val)
        except json.JSONDecodeError:
            data[key.strip()] = val
    return data


def _num(data, key, kind=float, default=None):
    if key not in data or data[key] is None:
        return default
    v = data[key]
    if isinstance(v, bool):
        raise ConfigError(f"{key} must be a number")
    try:
        out = kind(v)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {v!r}") from None
    if kind is float and not math.isfinite(out):
        raise ConfigError(f"{key} must be finite")
    return out


def _num_list(data, key):
    v = data.get(key)
    if v is None:
        return None
    if not isinstance(v, list):
        v = [v]
    return [_num({key: x}, key) for x in v]


def build_config(data: dict) -> RunConfig:
    unknown = sorted(set(data) - set(KNOWN_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    try:
        model = ModelKind(str(data.get("model", "")).upper())
    except ValueError:
        raise ConfigError("model must be one of HB, HP, VB, VP") from None
    gamma = _num(data, "gamma")
    if gamma is None:
        raise ConfigError("gamma is required")
    M0sq, q0 = _num(data, "M0sq"), _num(data, "q0")
    if (M0sq is None) == (q0 is None):
        raise ConfigError("give exactly one of M0sq and q0")
    if q0 is not None and model in (ModelKind.HP, ModelKind.VP):
        raise ConfigError("q0 parameterization is only available for HB and VB")
    delta = _num(data, "delta")
    if model in (ModelKind.VB, ModelKind.VP) and delta is None:
        raise ConfigError(f"{model.value} needs delta")

    params = _num_list(data, "params") or []
    if data.get("param") is not None:
        params.append(_num(data, "param"))
    eps = _num_list(data, "epsilon")
    if eps is not None:
        if model not in (ModelKind.HB, ModelKind.HP):
            raise ConfigError("epsilon only applies to HB and HP (kappa = epsilon/(gamma-1))")
        params.extend(e / (gamma - 1.0) for e in eps)
    if "param_start" in data or "param_count" in data:
        try:
            params.extend(geometric_params(_num(data, "param_start"),
                                           _num(data, "param_factor", default=0.1),
                                           _num(data, "param_count", int)))
        except (TypeError, ValueError) as err:
            raise ConfigError(str(err)) from None
    if any(not p > 0 for p in params):
        raise ConfigError("parameters must be positive")

    branch = data.get("branch")
    if branch is not None:
        b = str(branch).lower().replace("_", "-")
        table = {"near-zero": Branch.NEAR_ZERO, "nearzero": Branch.NEAR_ZERO,
                 "divergent": Branch.DIVERGENT}
        if b not in table:
            raise ConfigError("branch must be near-zero or divergent")
        branch = table[b]
    cfg = RunConfig(model=model, gamma=gamma, M0sq=M0sq, q0=q0, delta=delta,
                    R=_num(data, "R", default=1.0), params=tuple(params),
                    epsilon=None if eps is None else tuple(eps),
                    grid_n=_num(data, "grid_n", int, 512),
                    rel_tol=_num(data, "rel_tol", default=1e-12),
                    abs_tol=_num(data, "abs_tol", default=1e-15),
                    max_depth=_num(data, "max_depth", int, 50),
                    branch=branch, out=str(data.get("out", ".")))
    if cfg.grid_n < 16:
        raise ConfigError("grid_n must be at least 16")
    if not cfg.gamma > 1.0 or not cfg.R > 0.0:
        raise ConfigError("need gamma > 1 and R > 0")
    try:
        cfg.spec
    except ValueError as err:
        raise ConfigError(str(err)) from None
    return cfg


def load_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            data = parse_config_text(Path(args.config).read_text(encoding="utf-8"))
        except OSError as err:
            raise ConfigError(f"cannot read config: {err}") from None
    for key in ("model", "gamma", "M0sq", "q0", "delta", "R", "grid_n"):
        v = getattr(args, key, None)
        if v is not None:
            data[key] = v
    if getattr(args, "param", None) is not None:
        data.pop("params", None)
        data.pop("epsilon", None)
        data.pop("param_start", None)
        data.pop("param_count", None)
        data.pop("param_factor", None)
        data["param"] = args.param
    if getattr(args, "branch", None) is not None:
        data["branch"] = args.branch
    if getattr(args, "out", None) is not None:
        data["out"] = args.out
    return build_config(data)


def _pair_and_model(cfg: RunConfig):
    """Build the pair and model; raises the inadmissibility family."""
    pair = build_pair(cfg.model, cfg.gamma, M0sq=cfg.M0sq, q0=cfg.q0, R=cfg.R)
    rep = admissibility(pair, cfg.model)
    if not rep.admissible:
        raise InadmissibleState("; ".join(rep.reasons))
    return pair, reduce(pair, cfg.model, cfg.delta)


def _out_dir(cfg) -> Path:
    p = Path(cfg.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


# ---------------------------------------------------------------------------
# commands


def state_table(cfg: RunConfig) -> dict:
    pair = build_pair(cfg.model, cfg.gamma, M0sq=cfg.M0sq, q0=cfg.q0, R=cfg.R)
    rep = admissibility(pair, cfg.model)
    table = {
        "model": cfg.model.value,
        "gamma": pair.gamma,
        "jump": pair.jump.value,
        "U0": {"u": pair.q0, "rho": pair.U0.rho, "p": pair.p0, "M": pair.M0},
        "U1": {"u": pair.q1, "rho": pair.U1.rho, "p": pair.p1, "M": pair.M1},
        "A": pair.A,
        "P0": pair.P0,
        "Phi0": pair.Phi0,
        "M0": pair.M0,
        "M1": pair.M1,
        "admissibility": rep.as_dict(),
    }
    if rep.admissible:
        try:
            model = reduce(pair, cfg.model, cfg.delta)
            if cfg.model is ModelKind.HB:
                cp = model.critical_point()
                table["v_star"] = cp.w_star
                table["limit_alpha"] = limit_alpha(model)
            else:
                table["x_s"] = limit_location(model).x_s
        except (XOutOfUnitInterval, DegenerateWeight, InadmissibleState) as err:
            table["limit_error"] = f"{type(err).__name__}: {err}"
    return table


def _print_table(table: dict, prefix="") -> None:
    for k, v in table.items():
        if isinstance(v, dict):
            _print_table(v, prefix + k + ".")
        elif isinstance(v, float):
            print(f"{prefix + k:<32s} {v:.10g}")
        else:
            print(f"{prefix + k:<32s} {v}")


def cmd_states(cfg: RunConfig, write: bool) -> int:
    try:
        table = state_table(cfg)
    except NotSupersonic as err:
        print(f"NotSupersonic: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    _print_table(table)
    if write:
        write_json(_out_dir(cfg) / "states.json", table)
    if not table["admissibility"]["admissible"]:
        print("inadmissible: " + "; ".join(table["admissibility"]["reasons"]), file=sys.stderr)
        return EXIT_INADMISSIBLE
    return EXIT_OK


def _profile_files(out: Path, stem: str, prof, model, footer=None):
    cols = prof.columns()
    write_csv(out / f"{stem}.csv", cols, footer)
    series = [(k, prof.x, v) for k, v in cols.items() if k not in ("x",)]
    write_svg(out / f"{stem}.svg", series,
              title=f"{model.model.value} profile, param={prof.param:.6g}",
              xlabel="x", ylabel="normalized value", normalize=True)


def _single_param(cfg: RunConfig) -> float:
    if len(cfg.params) != 1:
        raise ConfigError("this command needs exactly one parameter (--param)")
    return cfg.params[0]


def cmd_solve(cfg: RunConfig) -> int:
    param = _single_param(cfg)
    try:
        _, model = _pair_and_model(cfg)
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    try:
        root = pick_root(solve_alpha(model, param, cfg.spec), cfg.branch)
        prof = reconstruct(model, param, root, cfg.grid_n, cfg.spec)
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_SOLVER
    out = _out_dir(cfg)
    footer = {}
    if model.model is ModelKind.VP:
        footer["max_pressure"] = float(np.max(prof.p))
    _profile_files(out, "profile", prof, model, footer)
    summary = {"config": cfg.echo(), "version": __version__, "alpha": root.as_dict(),
               "midpoint_x": prof.midpoint_x}
    write_json(out / "solve.json", summary)
    print(f"alpha={root.alpha!r} log_shift={root.log_shift!r} residual={root.residual:.3g} "
          f"branch={root.branch.value} midpoint_x={prof.midpoint_x:.10g}")
    return EXIT_OK


CONVERGENCE_COLUMNS = ("param", "alpha", "log_shift", "residual", "branch", "midpoint_x",
                       "l1_to_limit", "plateau_measure", "best_step_l1", "max_pressure", "error")


def _versions() -> dict:
    import platform

    import scipy

    return {"nozzleshock": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.params:
        print("empty parameter list", file=sys.stderr)
        return EXIT_CONFIG
    try:
        _, model = _pair_and_model(cfg)
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    out = _out_dir(cfg)
    # wall-time goes to timings.json only, never into the manifest
    t0 = time.perf_counter()
    res = run_sweep(model, cfg.params, cfg.grid_n, cfg.spec, cfg.branch)
    timings = [{"solve_seconds": time.perf_counter() - t0}]

    rows = {c: [] for c in CONVERGENCE_COLUMNS}
    artifacts = []
    for i, pt in enumerate(res.points):
        d = pt.as_dict()
        for c in CONVERGENCE_COLUMNS:
            rows[c].append(d[c])
        entry = {"param": pt.param, "status": "ok" if pt.ok else "failed", "error": pt.error}
        if pt.ok:
            stem = f"profile_{i:02d}"
            footer = {"param": pt.param}
            if pt.max_pressure is not None:
                footer["max_pressure"] = pt.max_pressure
            _profile_files(out, stem, pt.profile, model, footer)
            entry["csv"] = f"{stem}.csv"
            entry["svg"] = f"{stem}.svg"
        artifacts.append(entry)
    write_csv(out / "convergence.csv", rows)

    ok = res.succeeded()
    series = []
    if ok:
        ps = [p.param for p in ok]
        for key in ("l1_to_limit", "midpoint_x", "plateau_measure", "best_step_l1"):
            vals = [getattr(p, key) for p in ok]
            if all(v is not None for v in vals):
                series.append((key, ps, vals))
        if res.branch is Branch.DIVERGENT:
            series.append(("max_pressure", ps, [p.max_pressure for p in ok]))
    if not series:
        series = [("none", [1.0], [0.0])]
    write_svg(out / "convergence.svg", series,
              title=f"{model.model.value} sweep", xlabel="parameter (log10)", ylabel="value",
              logx=True)
    if ok:
        write_svg(out / "profiles.svg", [(f"param={p.param:.3g}", p.profile.x, p.profile.w)
                                         for p in ok],
                  title=f"{model.model.value} profiles w(x)", xlabel="x", ylabel="w")

    manifest = {
        "tool": "nozzleshock",
        "version": __version__,
        "versions": _versions(),
        "command": "sweep",
        "config": cfg.echo(),
        "limit": None if res.limit is None else res.limit.as_dict(),
        "limit_alpha": res.limit_alpha,
        "convergence_csv": "convergence.csv",
        "convergence_svg": "convergence.svg",
        "profiles_svg": "profiles.svg" if ok else None,
        "points": artifacts,
        "failures": [a for a in artifacts if a["status"] != "ok"],
        "timings_json": "timings.json",
    }
    write_json(out / "timings.json", {"timings": timings})
    write_json(out / "manifest.json", manifest)  # written last
    for pt in res.points:
        if pt.ok:
            extra = ""
            if pt.l1_to_limit is not None:
                extra += f" L1={pt.l1_to_limit:.6g}"
            if pt.plateau_measure is not None:
                extra += f" plateau={pt.plateau_measure:.6g} best_step_L1={pt.best_step_l1:.6g}"
            if pt.max_pressure is not None:
                extra += f" max_p={pt.max_pressure:.6g}"
            print(f"param={pt.param:.6g} alpha={pt.alpha.alpha!r} "
                  f"midpoint_x={pt.midpoint_x:.8g}{extra}")
        else:
            print(f"param={pt.param:.6g} FAILED {pt.error}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_SOLVER


def oracle_compare(model, param, spec, branch=None) -> dict:
    root = pick_root(solve_alpha(model, param, spec), branch)
    prof = reconstruct(model, param, root, 512, spec)
    sroot, sprof = shoot_ivp_oracle(model, param, root)
    d = sroot.log_shift - root.log_shift
    if model.alpha_limit == 0.0:
        rel = abs(math.expm1(d))
    else:
        rel = abs(math.expm1(d)) * root.shift / abs(root.alpha)
    linf = float(np.max(np.abs(prof.w - sprof.w)))
    return {
        "model": model.model.value,
        "param": param,
        "alpha_quadrature": root.alpha,
        "alpha_shooting": sroot.alpha,
        "log_shift_quadrature": root.log_shift,
        "log_shift_shooting": sroot.log_shift,
        "alpha_rel_gap": rel,
        "profile_linf_gap": linf,
        "endpoint_mismatch": float(abs(sprof.w[-1] - model.w_out)),
        "pass": bool(rel < ORACLE_ALPHA_TOL and linf < ORACLE_PROFILE_TOL),
    }


def cmd_oracle(cfg: RunConfig, write: bool) -> int:
    param = _single_param(cfg)
    if param < SHOOTING_MIN_PARAM:
        print(f"SKIPPED: param {param:g} below shooting cutoff {SHOOTING_MIN_PARAM:g}")
        return EXIT_OK
    try:
        _, model = _pair_and_model(cfg)
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    try:
        rep = oracle_compare(model, param, cfg.spec, cfg.branch)
    except ShockError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_SOLVER
    for k, v in rep.items():
        print(f"{k:<24s} {v!r}" if not isinstance(v, float) else f"{k:<24s} {v:.6g}")
    print("PASS" if rep["pass"] else "FAIL")
    if write:
        write_json(_out_dir(cfg) / "oracle.json", rep)
    return EXIT_OK if rep["pass"] else EXIT_ORACLE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nozzleshock",
                                 description="Steady shock profiles and vanishing-dissipation limits.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("states", "print upstream/downstream states and admissibility"),
                        ("solve", "solve alpha and write one profile"),
                        ("sweep", "vanishing-parameter sweep"),
                        ("oracle", "compare quadrature with shooting")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="config file (JSON or key = value lines)")
        p.add_argument("--model", choices=[m.value for m in ModelKind])
        p.add_argument("--gamma", type=float)
        p.add_argument("--M0sq", type=float)
        p.add_argument("--q0", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--R", type=float)
        p.add_argument("--grid-n", dest="grid_n", type=int)
        p.add_argument("--param", type=float, help="kappa (HB/HP) or mu (VB/VP)")
        p.add_argument("--branch", choices=["near-zero", "divergent"])
        p.add_argument("--out", help="output directory")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = load_config(args)
        if args.command == "states":
            return cmd_states(cfg, write=args.out is not None)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_oracle(cfg, write=args.out is not None)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
