"""Limit objects and vanishing-parameter sweeps.

The L1 distance between a profile and a step at x_s is computed from the
inverse function: for monotone w(x),

    integral_0^1 |w(x) - step(x)| dx = integral over the w-range of |X(w) - x_s| dw,

which is evaluated on the dense quadrature knots instead of the sample grid,
so boundary layers thinner than the grid spacing are still measured exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alpha import DEFAULT_SPEC, AlphaRoot, Branch, QuadratureSpec, pick_root, solve_alpha
from .errors import ShockError, XOutOfUnitInterval
from .models import ReducedModel, reduce
from .profile import Profile, plateau_measure, reconstruct
from .states import FlowState, ModelKind, ShockPair


@dataclass(frozen=True)
class LimitShock:
    model: ModelKind
    x_s: float
    x_s_mach: float
    U0: FlowState
    U1: FlowState
    delta: float | None = None

    def as_dict(self) -> dict:
        return {"model": self.model.value, "x_s": self.x_s, "x_s_mach": self.x_s_mach,
                "delta": self.delta}


def _unpack(model, pair, delta):
    """Accept a ReducedModel or a (kind, pair, delta) triple."""
    if isinstance(model, ReducedModel):
        return model.model, model.pair, model.delta
    if pair is None:
        raise ValueError("a ShockPair is required when model is given by name")
    return ModelKind(model), pair, delta


def limit_alpha(model, pair: ShockPair | None = None, delta: float | None = None,
                branch: Branch | str | None = None) -> float:
    """Limit of the solved alpha as the parameter vanishes.

    HB: -f(v*) > 0. HP, VB and the VP near-zero branch: 0. VP divergent
    branch: ``-inf``.
    """
    kind, pair, delta = _unpack(model, pair, delta)
    if kind is ModelKind.HB:
        m = model if isinstance(model, ReducedModel) else reduce(pair, kind)
        return -m.critical_point().f_star
    if branch is not None and Branch(branch) is Branch.DIVERGENT:
        return -math.inf
    return 0.0


# closed-form shock locations, each in two algebraic forms

def hp_location(pair: ShockPair) -> tuple:
    A, p0, p1, g = pair.A, pair.p0, pair.p1, pair.gamma
    prim = 0.5 * (A - 2.0 * p0) / (A - p0 - p1)
    gm = g * pair.U0.Msq
    mach = (g + 1.0) / (2.0 * (g - 1.0)) * (gm - 1.0) / (gm + 1.0)
    return prim, mach


def vb_location(pair: ShockPair, delta: float) -> tuple:
    g, q0, q1 = pair.gamma, pair.q0, pair.q1
    factor = (q0 / q1) ** delta
    prim = 1.0 / (1.0 + factor * (q0 / q1) ** (-g - 1.0)
                  * (q0 ** (g + 1.0) - g) / (g - q1 ** (g + 1.0)))
    M0sq, M1sq = pair.U0.Msq, pair.U1.Msq
    mfac = (M0sq / M1sq) ** (delta / (g + 1.0))
    mach = 1.0 / (1.0 + mfac * (1.0 - 1.0 / M0sq) / (1.0 / M1sq - 1.0))
    return prim, mach


def vp_location(pair: ShockPair, delta: float) -> tuple:
    g, q0, q1 = pair.gamma, pair.q0, pair.q1
    k = (g + 1.0) / (g - 1.0)
    factor = ((k - q1 / q0) / (k - q0 / q1)) ** delta
    prim = 1.0 / (1.0 + factor * q1 / q0)
    M0sq, M1sq = pair.U0.Msq, pair.U1.Msq
    mfac = (M0sq / M1sq) ** delta
    mach = 1.0 / (1.0 + mfac * ((1.0 - 1.0 / M0sq) / (1.0 / M1sq - 1.0)) ** (1.0 + 2.0 * delta))
    return prim, mach


def limit_location(model, pair: ShockPair | None = None,
                   delta: float | None = None) -> LimitShock:
    """Position of the limiting step for HP, VB and VP.

    ``model`` is a ReducedModel, or a model name together with ``pair`` (and
    ``delta`` for VB/VP); the latter also works where the HP weight
    degenerates, e.g. on the (HP1) Mach bound where x_s = 1.

    Raises
    ------
    XOutOfUnitInterval
        The formula leaves (0, 1], e.g. HP beyond the (HP1) Mach bound.
    """
    kind, pair, delta = _unpack(model, pair, delta)
    if kind is ModelKind.HP:
        prim, mach = hp_location(pair)
        delta = None
    elif kind is ModelKind.VB:
        prim, mach = vb_location(pair, delta)
    elif kind is ModelKind.VP:
        prim, mach = vp_location(pair, delta)
    else:
        raise ValueError("HB has no limiting shock: profiles converge to the constant v*")
    if not (0.0 < prim <= 1.0 + 1e-12):
        raise XOutOfUnitInterval(f"limit location {prim!r} outside (0, 1]")
    return LimitShock(kind, prim, mach, pair.U0, pair.U1, delta)


# ---------------------------------------------------------------------------
# L1 functionals from knot tables


def l1_to_steps(knots_x, knots_w, x_s):
    """L1 distance from the profile to step(x; x_s) for every entry of ``x_s``.

    The step jumps from w(0) to w(1) at x_s. Uses the exact identity with
    integral |X(w) - x_s| dw, treating X as piecewise linear in w between knots.
    """
    X = np.asarray(knots_x, dtype=float)
    dW = np.abs(np.diff(np.asarray(knots_w, dtype=float)))
    P = np.concatenate([[0.0], np.cumsum(dW)])
    Q = np.concatenate([[0.0], np.cumsum(dW * 0.5 * (X[:-1] + X[1:]))])
    c = np.atleast_1d(np.asarray(x_s, dtype=float))
    j = np.clip(np.searchsorted(X, c, side="right") - 1, 0, X.size - 2)
    below = c * P[j] - Q[j]
    above = (Q[-1] - Q[j + 1]) - c * (P[-1] - P[j + 1])
    span = X[j + 1] - X[j]
    th = np.clip(np.where(span > 0, (c - X[j]) / np.where(span > 0, span, 1.0), 0.0), 0.0, 1.0)
    xc = np.clip(c, X[j], X[j + 1])
    split = th * dW[j] * (xc - X[j]) * 0.5 + (1.0 - th) * dW[j] * (X[j + 1] - xc) * 0.5
    # c outside the knot range: the whole table lies on one side
    lo = c < X[0]
    hi = c > X[-1]
    out = below + above + split
    out = np.where(lo, Q[-1] - c * P[-1], out)
    out = np.where(hi, c * P[-1] - Q[-1], out)
    return out


def best_step_l1(profile: Profile, spacing: float = 1e-3) -> tuple:
    """Minimum L1 distance to steps with x_s on a grid of the given spacing."""
    grid = np.linspace(0.0, 1.0, int(round(1.0 / spacing)) + 1)
    d = l1_to_steps(profile.knots_x, profile.knots_w, grid)
    i = int(np.argmin(d))
    return float(d[i]), float(grid[i])


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True, eq=False)
class SweepPoint:
    param: float
    alpha: AlphaRoot | None = None
    midpoint_x: float | None = None
    l1_to_limit: float | None = None
    plateau_measure: float | None = None
    best_step_l1: float | None = None
    best_step_x: float | None = None
    max_pressure: float | None = None
    branch: Branch | None = None
    error: str | None = None
    profile: Profile | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def as_dict(self) -> dict:
        return {
            "param": self.param,
            "alpha": None if self.alpha is None else self.alpha.alpha,
            "log_shift": None if self.alpha is None else self.alpha.log_shift,
            "residual": None if self.alpha is None else self.alpha.residual,
            "branch": None if self.branch is None else self.branch.value,
            "midpoint_x": self.midpoint_x,
            "l1_to_limit": self.l1_to_limit,
            "plateau_measure": self.plateau_measure,
            "best_step_l1": self.best_step_l1,
            "best_step_x": self.best_step_x,
            "max_pressure": self.max_pressure,
            "error": self.error,
        }


@dataclass(frozen=True, eq=False)
class SweepResult:
    model: ReducedModel
    params: tuple
    points: tuple
    limit: LimitShock | None
    limit_alpha: float
    branch: Branch | None = None

    def succeeded(self) -> list:
        return [p for p in self.points if p.ok]


def geometric_params(start: float, factor: float, count: int) -> list:
    if not (start > 0 and 0 < factor < 1 and count >= 1):
        raise ValueError("geometric sweep needs start > 0, 0 < factor < 1, count >= 1")
    return [start * factor**i for i in range(count)]


def plateau_tolerance(model: ReducedModel) -> float:
    return 0.01 * abs(model.w_out - model.w_in)


def sweep_point(model: ReducedModel, param: float, grid_n: int = 512,
                spec: QuadratureSpec | None = None, branch=None,
                limit: LimitShock | None = None) -> SweepPoint:
    """Solve, reconstruct and measure one parameter value (errors propagate)."""
    spec = spec or DEFAULT_SPEC
    root = pick_root(solve_alpha(model, param, spec), branch)
    prof = reconstruct(model, param, root, grid_n, spec)
    kw = {}
    if model.model is ModelKind.HB:
        vs = model.critical_point().w_star
        kw["plateau_measure"] = plateau_measure(model, param, root.log_shift, vs,
                                                plateau_tolerance(model), spec)
        kw["best_step_l1"], kw["best_step_x"] = best_step_l1(prof)
    elif limit is not None and root.branch is not Branch.DIVERGENT:
        kw["l1_to_limit"] = float(l1_to_steps(prof.knots_x, prof.knots_w, limit.x_s)[0])
    if model.model is ModelKind.VP:
        kw["max_pressure"] = float(np.max(prof.p))
    return SweepPoint(param=param, alpha=root, midpoint_x=prof.midpoint_x, branch=root.branch,
                      profile=prof, **kw)


def run_sweep(model: ReducedModel, params, grid_n: int = 512,
              spec: QuadratureSpec | None = None, branch=None) -> SweepResult:
    """Sweep the vanishing parameter from large to small.

    Failures are recorded per parameter (``SweepPoint.error``) instead of
    aborting the sweep.
    """
    params = sorted({float(p) for p in params}, reverse=True)
    if not params:
        raise ValueError("empty parameter list")
    if any(not p > 0 for p in params):
        raise ValueError("parameters must be positive")
    branch = None if branch is None else Branch(branch)
    limit = None
    if model.model is not ModelKind.HB and branch is not Branch.DIVERGENT:
        limit = limit_location(model)
    points = []
    for p in params:
        try:
            points.append(sweep_point(model, p, grid_n, spec, branch, limit))
        except ShockError as err:
            points.append(SweepPoint(param=p, error=f"{type(err).__name__}: {err}"))
    return SweepResult(model=model, params=tuple(params), points=tuple(points), limit=limit,
                       limit_alpha=limit_alpha(model, branch=branch), branch=branch)
