"""Spatial profiles w(x) from a solved alpha, and an independent IVP oracle.

The quadrature path tabulates X(w) = integral of dX/dw on dense knots that are
uniform in log-distance from each segment anchor, then inverts with a cubic
Hermite interpolant whose slopes are the exact dX/dw. The shooting path
integrates the first-order ODE forward in x with an explicit embedded
Runge-Kutta scheme and adjusts alpha by secant iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .alpha import (DEFAULT_SPEC, LAMBDA_SPAN, AlphaRoot, Branch, QuadratureSpec,
                    _tolerance, segment_integral)
from .errors import (NonMonotoneSamples, RatioOverflow, ShootingDiverged, StepSizeUnderflow)
from .models import ReducedModel, Segment
from .quadrature import adaptive_panels
from .states import ModelKind

# node spacing in lambda = log(s) along each segment
KNOT_STEP = 0.025
# knots start this far (in lambda) below the layer width, at most KNOT_SPAN below the segment length
KNOT_PAD = 10.0
KNOT_SPAN = 60.0
SHOOTING_MIN_PARAM = 1e-3


@dataclass(frozen=True, eq=False)
class Profile:
    """Samples of one shock profile on a uniform grid x in [0, 1].

    ``knots_x``/``knots_w`` is the dense monotone table of (X(w), w) the
    samples were interpolated from; functionals that need accuracy beyond the
    sample grid (L1 distances, plateau widths) use it.
    """

    model: ModelKind
    param: float
    alpha: AlphaRoot
    x: np.ndarray
    w: np.ndarray
    physical: dict
    midpoint_x: float
    knots_x: np.ndarray
    knots_w: np.ndarray
    total: float = 1.0
    method: str = "quadrature"

    @property
    def u(self):
        return self.physical["u"]

    @property
    def rho(self):
        return self.physical["rho"]

    @property
    def p(self):
        return self.physical["p"]

    @property
    def T(self):
        return self.physical.get("T")

    def columns(self) -> dict:
        cols = {"x": self.x, "w": self.w, "u": self.u, "rho": self.rho, "p": self.p}
        if self.T is not None:
            cols["T"] = self.T
        return cols


# ---------------------------------------------------------------------------
# tabulation of X along a segment


@dataclass
class _SegmentTable:
    seg: Segment
    lam: np.ndarray      # knot positions, log(s)
    cum: np.ndarray      # scale * integral from the anchor to s
    dcum: np.ndarray     # d cum / d lambda
    total: float

    def s_of(self, target):
        """Invert cum(s) = target (vectorized, clipped to [0, total])."""
        target = np.clip(np.asarray(target, dtype=float), 0.0, self.total)
        spline = CubicHermiteSpline(self.cum, self.lam, 1.0 / self.dcum)
        lam = spline(np.clip(target, self.cum[0], self.cum[-1]))
        s = np.exp(lam)
        below = target < self.cum[0]
        s = np.where(below, math.exp(self.lam[0]) * target / self.cum[0], s)
        return np.minimum(s, self.seg.length)


def _tabulate(seg: Segment, scale: float, tol: float, spec: QuadratureSpec) -> _SegmentTable:
    top = math.log(seg.length)
    start = min(seg.log_s_ref - KNOT_PAD, top - LAMBDA_SPAN)
    start = max(start, top - KNOT_SPAN)
    n = int(math.ceil((top - start) / KNOT_STEP))
    lam = np.linspace(start, top, n + 1)
    s = np.exp(lam)

    def rem(l):
        ss = np.exp(l)
        return (seg.density(ss) - seg.model_density(ss)) * ss

    pieces, _, _ = adaptive_panels(rem, lam, tol, spec.max_depth)
    cum_rem = np.concatenate([[0.0], np.cumsum(pieces)])
    cum = scale * (seg.model_primitive(s) + cum_rem)
    dcum = scale * seg.density(s) * s
    total = float(cum[-1])
    # drop knots whose increment is below quadrature noise
    keep = np.concatenate([[True], cum[1:] > np.maximum.accumulate(cum)[:-1]])
    keep[-1] = True
    return _SegmentTable(seg, lam[keep], cum[keep], dcum[keep], total)


def _tables(model, param, log_shift, spec):
    scale = model.scale(param)
    segs = model.segments(log_shift)
    tol = _tolerance(model, segs, spec)
    return [_tabulate(seg, scale, tol, spec) for seg in segs]


def _layout(model, tables):
    """x = base + sign * cum along each segment; returns [(table, base, sign)]."""
    left, right = tables
    if model.model is ModelKind.HB:
        xs = left.total
        return [(left, xs, -1.0), (right, xs, 1.0)], left.total + right.total
    total = left.total + right.total
    return [(left, 0.0, 1.0), (right, total, -1.0)], total


def _knots(model, layout):
    xs, ws = [], []
    for i, (tab, base, sign) in enumerate(layout):
        s = np.concatenate([[0.0], np.exp(tab.lam)])
        cum = np.concatenate([[0.0], tab.cum])
        if i == 1 and model.model is not ModelKind.HB:
            # both tables end at the split point; the two copies of that knot
            # differ by rounding and may come out of order
            s, cum = s[:-1], cum[:-1]
        xs.append(base + sign * cum)
        ws.append(tab.seg.w(s))
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    order = np.argsort(x, kind="stable")
    x, w = x[order], w[order]
    keep = np.concatenate([[True], np.diff(x) > 0])
    return x[keep], w[keep]


def _invert(model, layout, x):
    (ta, ba, sa), (tb, bb, sb) = layout
    split = ba if model.model is ModelKind.HB else ta.total
    first = x <= split
    w = np.empty_like(x)
    w[first] = ta.seg.w(ta.s_of(sa * (x[first] - ba)))
    w[~first] = tb.seg.w(tb.s_of(sb * (x[~first] - bb)))
    return w


def _check_monotone(model, x, w):
    dx = np.diff(x)
    dw = np.diff(w) * model.direction
    return bool(np.all(dx > 0) and np.all(dw >= 0))


def reconstruct(model: ReducedModel, param: float, alpha: AlphaRoot, n_samples: int = 512,
                spec: QuadratureSpec | None = None) -> Profile:
    """Profile on ``n_samples`` uniform points of [0, 1] for a solved ``alpha``.

    Raises
    ------
    NonMonotoneSamples
        The tabulated X(w) is not monotone even after one refinement.
    """
    spec = spec or DEFAULT_SPEC
    if n_samples < 16:
        raise ValueError("n_samples must be at least 16")
    for attempt in range(2):
        tables = _tables(model, param, alpha.log_shift, spec)
        layout, total = _layout(model, tables)
        kx, kw = _knots(model, layout)
        x = np.linspace(0.0, 1.0, n_samples)
        w = _invert(model, layout, x)
        w[0] = model.w_in
        if _check_monotone(model, kx, kw) and _check_monotone(model, x, w):
            break
        spec = QuadratureSpec(rel_tol=spec.rel_tol * 1e-2 if spec.rel_tol > 1e-13 else spec.rel_tol,
                              abs_tol=spec.abs_tol, max_depth=spec.max_depth + 10)
    else:
        raise NonMonotoneSamples(f"{model.model.value} profile at param={param} is not monotone")
    physical = model.lift(w, alpha.log_shift)
    mid = midpoint_x(model, param, alpha.log_shift, spec)
    return Profile(model=model.model, param=param, alpha=alpha, x=x, w=w, physical=physical,
                   midpoint_x=mid, knots_x=kx, knots_w=kw, total=total)


# ---------------------------------------------------------------------------
# point evaluations of X


def _locate(model, w):
    """(segment index, distance from that segment's anchor) for a value w."""
    segs = model.segments(0.0)
    for i, seg in enumerate(segs):
        s = (w - seg.anchor) * seg.direction
        if -1e-15 <= s <= seg.length * (1 + 1e-15):
            return i, min(max(s, 0.0), seg.length)
    raise ValueError(f"w={w} outside the profile range")


def x_of_w(model: ReducedModel, param: float, log_shift: float, w: float,
           spec: QuadratureSpec | None = None):
    """(X(w), H - X(w)) by direct quadrature, both without cancellation."""
    spec = spec or DEFAULT_SPEC
    scale = model.scale(param)
    segs = model.segments(log_shift)
    tol = _tolerance(model, segs, spec)
    i, s = _locate(model, w)
    seg = segs[i]
    near = scale * segment_integral(seg, s, tol, spec)[0]
    far = scale * segment_integral(seg, seg.length, tol, spec, s_a=s)[0] if s < seg.length else 0.0
    other = scale * segment_integral(segs[1 - i], segs[1 - i].length, tol, spec)[0]
    if model.model is ModelKind.HB:
        # both segments start at v*; left one runs towards v0
        if i == 0:
            return far, near + other
        return other + near, far
    if i == 0:
        return near, far + other
    return other + far, near


def midpoint_x(model, param, log_shift, spec=None) -> float:
    return x_of_w(model, param, log_shift, 0.5 * (model.w_in + model.w_out), spec)[0]


def ratio_I(model: ReducedModel, param: float, alpha, w: float,
            spec: QuadratureSpec | None = None) -> float:
    """X(w) / (1 - X(w)) for interior ``w``; ``alpha`` may be an AlphaRoot."""
    ell = alpha.log_shift if isinstance(alpha, AlphaRoot) else model.log_shift_of(alpha)
    lo, hi = sorted((model.w_in, model.w_out))
    if not lo < w < hi:
        raise ValueError("w must be strictly interior")
    x, rest = x_of_w(model, param, ell, w, spec)
    total = x + rest
    one_minus = rest + (1.0 - total)
    if not one_minus > 1e-14:
        raise RatioOverflow(f"X(w) = {x} is numerically 1")
    return x / one_minus


def plateau_measure(model, param, log_shift, center, tol_w, spec=None) -> float:
    """Length of {x : |w(x) - center| < tol_w}, from X at center -/+ tol_w."""
    lo, hi = sorted((model.w_in, model.w_out))
    a = max(center - tol_w, lo)
    b = min(center + tol_w, hi)
    xa = x_of_w(model, param, log_shift, a, spec)[0] if a > lo else 0.0
    xb = x_of_w(model, param, log_shift, b, spec)[0] if b < hi else 1.0
    return abs(xb - xa)


# ---------------------------------------------------------------------------
# shooting oracle


def _log_s(log_ref, y):
    """log(s) for s = exp(log_ref) * expm1(y), y >= 0."""
    y = np.maximum(y, 1e-300)
    return log_ref + y + np.log(-np.expm1(-y))


def _linear_phase_rhs(seg: Segment, scale: float, sign: float, y_cap: float):
    """d y/dx for y = log(1 + s/s_ref) while s moves at the model rate."""
    lr = seg.log_s_ref
    kg = seg.k / seg.g_e

    def rhs(x, y):
        # trial stages may overshoot the segment; freeze the rate there
        yy = min(max(float(y[0]), 0.0), y_cap)
        s = math.exp(float(_log_s(lr, yy))) if yy > 0 else 0.0
        sa = np.array([s])
        em = math.exp(-yy)
        top = float(seg.h_ratio(sa)[0]) * (-math.expm1(-yy)) + kg * float(seg.shift_coef(sa)[0]) * em
        return [sign * top / (scale * float(seg.num_weight(sa)[0]))]

    return rhs


def _shoot_linear(model, param, log_shift, tol, dense=False):
    scale = model.scale(param)
    left, right = model.segments(log_shift)
    y_end = float(np.logaddexp(math.log(left.length), left.log_s_ref) - left.log_s_ref)
    z_start = float(np.logaddexp(math.log(right.length), right.log_s_ref) - right.log_s_ref)

    def hit_left(x, y):
        return y[0] - y_end
    hit_left.terminal = True
    hit_left.direction = 1

    def hit_right(x, z):
        return z[0]
    hit_right.terminal = True
    hit_right.direction = -1

    kw = dict(method="DOP853", rtol=tol, atol=tol, dense_output=dense)
    sol1 = solve_ivp(_linear_phase_rhs(left, scale, 1.0, y_end), (0.0, 10.0), [0.0],
                     events=hit_left, **kw)
    _check_ivp(sol1)
    if not sol1.t_events[0].size:
        return math.inf, None
    x1 = float(sol1.t_events[0][0])
    sol2 = solve_ivp(_linear_phase_rhs(right, scale, -1.0, z_start), (x1, x1 + 10.0), [z_start],
                     events=hit_right, **kw)
    _check_ivp(sol2)
    if not sol2.t_events[0].size:
        return math.inf, None
    x_hit = float(sol2.t_events[0][0])

    def sample(x):
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        a = x <= x1
        y = np.clip(sol1.sol(x[a])[0], 0.0, y_end)
        out[a] = left.w(np.exp(_log_s(left.log_s_ref, y)) * (y > 0))
        z = np.clip(sol2.sol(np.minimum(x[~a], x_hit))[0], 0.0, z_start)
        out[~a] = right.w(np.exp(_log_s(right.log_s_ref, z)) * (z > 0))
        return out

    return x_hit, (sample if dense else None)


def _shoot_hb(model, param, log_shift, tol, dense=False):
    # theta = atan(s / sigma) with s = v - v*, sigma = sqrt(eps / a): the
    # plateau passage becomes a constant-rate rotation
    left, right = model.segments(log_shift)
    a = left.k
    sig = math.exp(0.5 * (log_shift - math.log(a)))
    th0 = -math.atan(left.length / sig)
    th1 = math.atan(right.length / sig)
    vs = left.anchor

    def rhs(x, th):
        t = float(th[0])
        s = sig * math.tan(t)
        seg = right if s >= 0 else left
        h = float(seg.h_ratio(np.array([abs(s)]))[0])
        return [sig * (h * math.sin(t) ** 2 + a * math.cos(t) ** 2) / param]

    def hit(x, th):
        return th[0] - th1
    hit.terminal = True
    hit.direction = 1

    sol = solve_ivp(rhs, (0.0, 10.0), [th0], method="DOP853", rtol=tol, atol=tol,
                    events=hit, dense_output=dense)
    _check_ivp(sol)
    if not sol.t_events[0].size:
        return math.inf, None
    x_hit = float(sol.t_events[0][0])

    def sample(x):
        th = np.clip(sol.sol(np.minimum(np.asarray(x, dtype=float), x_hit))[0], th0, th1)
        return vs + sig * np.tan(th)

    return x_hit, (sample if dense else None)


def _check_ivp(sol):
    if sol.status == -1:
        if "step size" in sol.message.lower():
            raise StepSizeUnderflow(sol.message)
        raise ShootingDiverged(sol.message)


def _shoot(model, param, log_shift, tol, dense=False):
    if model.model is ModelKind.HB:
        return _shoot_hb(model, param, log_shift, tol, dense)
    return _shoot_linear(model, param, log_shift, tol, dense)


def shoot_ivp_oracle(model: ReducedModel, param: float, alpha_guess,
                     integrator_tol: float = 1e-12, n_samples: int = 512,
                     max_iter: int = 60):
    """Independent alpha and profile by shooting.

    Integrates the first-order ODE from w(0) = w_in with DOP853 and adjusts
    alpha by secant steps until the profile reaches w_out exactly at x = 1.

    Parameters
    ----------
    alpha_guess : float or AlphaRoot
        Starting value inside the alpha domain.

    Returns
    -------
    (AlphaRoot, Profile)
        ``residual`` of the root is the hitting-time mismatch |x_hit - 1|.
    """
    if param < SHOOTING_MIN_PARAM:
        raise ValueError(f"shooting oracle restricted to param >= {SHOOTING_MIN_PARAM}")
    if isinstance(alpha_guess, AlphaRoot):
        ell0, branch = alpha_guess.log_shift, alpha_guess.branch
    else:
        ell0 = model.log_shift_of(float(alpha_guess))
        branch = Branch.NEAR_FSTAR if model.model is ModelKind.HB else Branch.NEAR_ZERO

    def mismatch(ell):
        if not math.isfinite(ell) or abs(ell) > 1e6:
            raise ShootingDiverged(f"secant iterate left the alpha domain (log shift {ell})")
        return _shoot(model, param, ell, integrator_tol)[0] - 1.0

    # initial slope from the model layers: dX/d(ell) ~ -sum scale*C/k (times 1/2 for HB)
    scale = model.scale(param)
    segs = model.segments(ell0)
    slope = -sum(scale * s.C / s.k for s in segs)
    if model.model is ModelKind.HB:
        slope = -0.5 * sum(scale * s.C * math.pi / 2 / math.sqrt(s.k * s.beta) for s in segs)

    e0 = ell0
    g0 = mismatch(e0)
    if not math.isfinite(g0):
        raise ShootingDiverged("initial shot does not reach w_out")
    n = 1
    if abs(g0) < 1e-13:
        e1, g1 = e0, g0
    else:
        e1 = e0 - g0 / slope
        g1 = mismatch(e1)
        n += 1
        while abs(g1) > 1e-13:
            if n >= max_iter:
                raise ShootingDiverged(f"secant did not converge (mismatch {g1:.3g})")
            if not math.isfinite(g1):
                e1 = 0.5 * (e0 + e1)
                g1 = mismatch(e1)
                n += 1
                continue
            if g1 == g0:
                break
            e2 = e1 - g1 * (e1 - e0) / (g1 - g0)
            e0, g0 = e1, g1
            if abs(e2 - e1) <= 1e-15 * max(1.0, abs(e1)):
                e1 = e2
                g1 = mismatch(e1)
                n += 1
                break
            e1 = e2
            g1 = mismatch(e1)
            n += 1

    x_hit, sample = _shoot(model, param, e1, integrator_tol, dense=True)
    x = np.linspace(0.0, 1.0, n_samples)
    w = sample(x)
    w[0] = model.w_in
    root = AlphaRoot(model=model.model, param=param, log_shift=e1, alpha=model.alpha_of(e1),
                     residual=abs(x_hit - 1.0), bracket=(model.alpha_of(e1),) * 2,
                     log_bracket=(e1, e1), branch=branch, evaluations=n)
    xm = np.interp(0.5 * (model.w_in + model.w_out), w * model.direction, x) \
        if model.direction > 0 else np.interp(-0.5 * (model.w_in + model.w_out), -w, x)
    prof = Profile(model=model.model, param=param, alpha=root, x=x, w=w,
                   physical=model.lift(w, e1), midpoint_x=float(xm), knots_x=x, knots_w=w,
                   total=x_hit, method="shooting")
    return root, prof
