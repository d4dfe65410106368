"""Scalar reductions of the four dissipative shock-profile problems.

Each model is written as dX/dw = scale(param) * weight(w) / F(w, alpha) on the
range between ``w_in`` (x = 0) and ``w_out`` (x = 1):

====  =====  ==========================  ===============  ===============
name  w      F                           weight           alpha domain
====  =====  ==========================  ===============  ===============
HB    u^(1-gamma)  f(v) + alpha          1                (-f(v*), inf)
HP    p      f(p) + alpha                A - 2p           (0, inf)
VB    u      f(u) + alpha                u^(-delta)       (-inf, 0)
VP    u      (f1 + a g1)/(f2 + a g2)^d   1                (-inf, 0)
====  =====  ==========================  ===============  ===============

For vanishing parameters the solved alpha approaches a value where |F|
vanishes somewhere on the closed range (an endpoint for HP/VB/VP, the interior
critical point v* for HB), and alpha itself underflows double precision. The
models therefore expose alpha through a *log shift*
``ell = log(|alpha - alpha_limit|)`` and evaluate |F| in forms anchored at the
point where it vanishes, so no cancellation occurs close to that point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import AlphaOutOfDomain, DegenerateWeight, InadmissibleState, NonphysicalPressure
from .states import MODEL_LAW, ModelKind, ShockPair, admissibility


class Orientation(str, Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"


# ---------------------------------------------------------------------------
# accurate elementary pieces


def _pow1p_ratio(x, p):
    """((1 + x)**p - 1) / x, exact limit ``p`` at x = 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.expm1(p * np.log1p(x)) / x
    return np.where(x == 0.0, p, out)


def _log1p_ratio(x):
    """log1p(x) / x with limit 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.log1p(x) / x
    return np.where(x == 0.0, 1.0, out)


def _phi2(x):
    """(exp(x) - 1 - x) / x**2, series near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    xs = np.where(small, x, 0.0)
    series = 0.5 + xs * (1.0 / 6 + xs * (1.0 / 24 + xs * (1.0 / 120 + xs / 720)))
    xl = np.where(small, 1.0, x)
    direct = (np.expm1(xl) - xl) / (xl * xl)
    return np.where(small, series, direct)


def log_expm1(x: float) -> float:
    """log(exp(x) - 1) without overflow for large x."""
    if x > 30.0:
        return x + math.log(-math.expm1(-x))
    return math.log(math.expm1(x))


# ---------------------------------------------------------------------------
# segments: the unit the quadrature and the shooting oracle work on


@dataclass(frozen=True)
class Segment:
    """Half of the w-range measured by distance ``s`` from an anchor.

    Along the segment w = anchor + direction*s for s in [0, length] and the
    integrand of dX/ds, without ``scale``, is::

        density(s) = num_weight(s) / (h_ratio(s) * s**power + beta * shift_coef(s))

    ``power`` is 1 where |f| vanishes linearly at the anchor (an endpoint) and 2
    at an interior quadratic minimum (HB). ``h_ratio`` must be accurate as
    s -> 0. ``beta = exp(log_shift)`` may underflow to zero; nothing here
    divides by it.
    """

    anchor: float
    direction: int
    length: float
    power: int
    log_shift: float
    h_ratio: Callable
    shift_coef: Callable
    num_weight: Callable
    C: float = field(init=False)
    k: float = field(init=False)
    g_e: float = field(init=False)

    def __post_init__(self):
        z = np.zeros(1)
        object.__setattr__(self, "C", float(self.num_weight(z)[0]))
        object.__setattr__(self, "k", float(self.h_ratio(z)[0]))
        object.__setattr__(self, "g_e", float(self.shift_coef(z)[0]))
        if not (self.C > 0 and self.k > 0 and self.g_e > 0):
            raise InadmissibleState("segment constants must be positive "
                                    f"(C={self.C}, k={self.k}, g={self.g_e})")

    @property
    def beta(self) -> float:
        return math.exp(self.log_shift)

    @property
    def log_b(self) -> float:
        """log of the constant term of the local model denominator."""
        return self.log_shift + math.log(self.g_e)

    @property
    def log_s_ref(self) -> float:
        """log of the width of the near-anchor layer."""
        if self.power == 1:
            return self.log_b - math.log(self.k)
        return 0.5 * (self.log_b - math.log(self.k))

    def w(self, s):
        return self.anchor + self.direction * np.asarray(s, dtype=float)

    def abs_flux_num(self, s):
        """h(s) + beta*shift(s): numerator of |F| (times D^delta for VP)."""
        s = np.asarray(s, dtype=float)
        return self.h_ratio(s) * s**self.power + self.beta * self.shift_coef(s)

    def density(self, s):
        s = np.asarray(s, dtype=float)
        return self.num_weight(s) / self.abs_flux_num(s)

    def model_density(self, s):
        s = np.asarray(s, dtype=float)
        return self.C / (self.k * s**self.power + self.beta * self.g_e)

    def model_primitive(self, s):
        """Integral of :meth:`model_density` from 0 to ``s`` (s >= 0).

        Linear: (C/k) * (log(k s + b) - log b), evaluated in log space so that
        an underflowed ``b`` still gives the right (large) value.
        Quadratic: C/sqrt(k b) * atan(s sqrt(k/b)).
        """
        s = np.asarray(s, dtype=float)
        lk = math.log(self.k)
        lb = self.log_b
        if self.power == 1:
            with np.errstate(divide="ignore"):
                d = lk + np.log(s) - lb
            # softplus(d) = log(1 + e^d), accurate at both ends
            sp = np.where(d < 0.0, np.log1p(np.exp(np.minimum(d, 0.0))),
                          np.maximum(d, 0.0) + np.log1p(np.exp(-np.abs(d))))
            return (self.C / self.k) * sp
        # far below the root b is so small that the value is inf; never raise
        r = math.exp(min(0.5 * (lk - lb), 700.0))
        with np.errstate(over="ignore", invalid="ignore"):
            pre = self.C * np.exp(-0.5 * (lk + lb))
            return np.where(s > 0.0, pre * np.arctan(s * r), 0.0)


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class ReducedModel:
    """Common interface; use :func:`reduce` to build a concrete model."""

    model: ModelKind
    pair: ShockPair
    delta: float
    w_in: float
    w_out: float
    orientation: Orientation
    alpha_domain: tuple

    # alpha = alpha_limit + shift_sign * exp(log_shift)
    alpha_limit: float = 0.0
    shift_sign: int = 1

    @property
    def gamma(self) -> float:
        return self.pair.gamma

    @property
    def direction(self) -> int:
        return 1 if self.orientation is Orientation.INCREASING else -1

    # --- alpha bookkeeping -------------------------------------------------
    def check_alpha(self, alpha: float) -> None:
        lo, hi = self.alpha_domain
        if not (lo < alpha < hi):
            raise AlphaOutOfDomain(f"alpha={alpha!r} outside {self.model.value} domain ({lo}, {hi})")

    def alpha_of(self, log_shift: float) -> float:
        return self.alpha_limit + self.shift_sign * math.exp(log_shift)

    def log_shift_of(self, alpha: float) -> float:
        self.check_alpha(alpha)
        d = self.shift_sign * (alpha - self.alpha_limit)
        if not d > 0.0:
            raise AlphaOutOfDomain(f"alpha={alpha!r} is numerically at the domain boundary")
        return math.log(d)

    # --- per-model pieces --------------------------------------------------
    def scale(self, param: float) -> float:
        if not param > 0.0:
            raise ValueError(f"parameter must be positive, got {param}")
        return float(param)

    def f(self, w):
        raise NotImplementedError

    def f_direct(self, w):
        raise NotImplementedError

    def fprime(self, w):
        raise NotImplementedError

    def weight(self, w):
        raise NotImplementedError

    def flux(self, w, alpha: float):
        self.check_alpha(alpha)
        return self.f(w) + alpha

    def critical_point(self) -> "CriticalPoint":
        raise NotImplementedError

    def segments(self, log_shift: float) -> list:
        raise NotImplementedError

    def split_point(self) -> float:
        """Where the two anchored segments meet."""
        return 0.5 * (self.w_in + self.w_out)

    def analytic_alpha_bracket(self, param: float) -> tuple:
        raise NotImplementedError

    def log_shift_bracket(self, param: float) -> tuple:
        """Analytic (lower, upper) bounds on the log shift; ``None`` if unknown."""
        return (None, None)

    def lift(self, w, log_shift: float) -> dict:
        """Physical fields (u, rho, p[, T]) along profile values ``w``."""
        raise NotImplementedError


@dataclass(frozen=True)
class CriticalPoint:
    w_star: float
    f_star: float


@dataclass(frozen=True)
class HBModel(ReducedModel):
    """Heat-conductive barotropic gas in v = u**(1-gamma)."""

    def _consts(self):
        g = self.gamma
        m = 2.0 / (1.0 - g)
        kk = g / (g - 1.0)
        vs = g ** ((1.0 - g) / (1.0 + g))
        return g, m, kk, vs

    def g_fun(self, v):
        g, m, kk, _ = self._consts()
        v = np.asarray(v, dtype=float)
        return 0.5 * v**m + kk * v

    def f_direct(self, v):
        return self.g_fun(v) - self.g_fun(self.w_in)

    def f(self, v):
        """f(v) = g(v) - g(v0), anchored at whichever endpoint is nearer."""
        g, m, kk, _ = self._consts()
        v = np.asarray(v, dtype=float)
        v0, v1 = self.w_in, self.w_out
        s = v - v0
        t = v1 - v
        from0 = 0.5 * v0**m * np.expm1(m * np.log1p(s / v0)) + kk * s
        from1 = 0.5 * v1**m * np.expm1(m * np.log1p(-t / v1)) - kk * t
        return np.where(s <= t, from0, from1)

    def fprime(self, v):
        g, m, kk, _ = self._consts()
        v = np.asarray(v, dtype=float)
        return v ** (m - 1.0) / (1.0 - g) + kk

    def fsecond(self, v):
        g, m, kk, _ = self._consts()
        return 0.5 * m * (m - 1.0) * np.asarray(v, dtype=float) ** (m - 2.0)

    def weight(self, v):
        return np.ones_like(np.asarray(v, dtype=float))

    def critical_point(self) -> CriticalPoint:
        _, _, _, vs = self._consts()
        return CriticalPoint(vs, float(self.f(vs)))

    def gap(self, v):
        """f(v) - f(v*) written without cancellation near v*."""
        g, m, kk, vs = self._consts()
        v = np.asarray(v, dtype=float)
        t = np.log1p((v - vs) / vs)
        return 0.5 * vs**m * (m * t) ** 2 * _phi2(m * t) + kk * vs * t * t * _phi2(t)

    def _gap_ratio(self, direction):
        g, m, kk, vs = self._consts()

        def h(s):
            x = direction * np.asarray(s, dtype=float) / vs
            t = np.log1p(x)
            ts2 = (_log1p_ratio(x) / vs) ** 2
            return ts2 * (0.5 * vs**m * m * m * _phi2(m * t) + kk * vs * _phi2(t))

        return h

    def segments(self, log_shift):
        _, _, _, vs = self._consts()
        one = lambda s: np.ones_like(np.asarray(s, dtype=float))  # noqa: E731
        return [
            Segment(vs, -1, vs - self.w_in, 2, log_shift, self._gap_ratio(-1), one, one),
            Segment(vs, +1, self.w_out - vs, 2, log_shift, self._gap_ratio(+1), one, one),
        ]

    def split_point(self):
        return self._consts()[3]

    def analytic_alpha_bracket(self, param):
        lo, hi = self.log_shift_bracket(param)
        return (self.alpha_of(lo), self.alpha_of(hi))

    def log_shift_bracket(self, param):
        # lower: chord majorant of f on both sides of v*; upper: kappa*(v1 - v0)
        cp = self.critical_point()
        a0 = -cp.f_star
        s2 = cp.f_star / (cp.w_star - self.w_out)
        lo = math.log(a0) - log_expm1(s2 / param)
        hi = math.log(param * (self.w_out - self.w_in))
        return (lo, hi)

    def lift(self, v, log_shift):
        g = self.gamma
        v = np.asarray(v, dtype=float)
        u = v ** (1.0 / (1.0 - g))
        rho = 1.0 / u
        return {"u": u, "rho": rho, "p": rho**g}


@dataclass(frozen=True)
class HPModel(ReducedModel):
    """Heat-conductive polytropic gas in the pressure p."""

    @property
    def c(self) -> float:
        g = self.gamma
        return (g + 1.0) / (2.0 * (g - 1.0))

    def Phi(self, p):
        g, A = self.gamma, self.pair.A
        p = np.asarray(p, dtype=float)
        return 0.5 * (A - p) ** 2 + g * p * (A - p) / (g - 1.0)

    def f_direct(self, p):
        return self.Phi(p) - self.Phi(self.w_in)

    def f(self, p):
        p = np.asarray(p, dtype=float)
        return self.c * (p - self.w_in) * (self.w_out - p)

    def fprime(self, p):
        return self.c * (self.w_in + self.w_out - 2.0 * np.asarray(p, dtype=float))

    def fsecond(self, p):
        return np.full_like(np.asarray(p, dtype=float), -2.0 * self.c)

    def weight(self, p):
        return self.pair.A - 2.0 * np.asarray(p, dtype=float)

    def critical_point(self):
        ps = 0.5 * (self.w_in + self.w_out)
        return CriticalPoint(ps, float(self.f(ps)))

    def segments(self, log_shift):
        p0, p1, A, c = self.w_in, self.w_out, self.pair.A, self.c
        d = p1 - p0
        pm = self.split_point()
        one = lambda s: np.ones_like(np.asarray(s, dtype=float))  # noqa: E731
        return [
            Segment(p0, +1, pm - p0, 1, log_shift, lambda s: c * (d - s), one,
                    lambda s: A - 2.0 * (p0 + s)),
            Segment(p1, -1, p1 - pm, 1, log_shift, lambda s: c * (d - s), one,
                    lambda s: A - 2.0 * (p1 - s)),
        ]

    def chord_slope(self) -> float:
        ph = 0.5 * (self.w_in + self.w_out)
        return float(self.f(ph)) / (ph - self.w_in)

    def analytic_alpha_bracket(self, param):
        return (0.0, self.alpha_of(self.log_shift_bracket(param)[1]))

    def log_shift_bracket(self, param):
        s = self.chord_slope()
        d = self.w_out - self.w_in
        hi = math.log(0.5 * s * d) - log_expm1(s / (2.0 * param * self.pair.A))
        return (None, hi)

    def lift(self, p, log_shift):
        p = np.asarray(p, dtype=float)
        u = self.pair.A - p
        return {"u": u, "rho": 1.0 / u, "p": p}


@dataclass(frozen=True)
class VBModel(ReducedModel):
    """Temperature-dependent viscosity, barotropic gas, in the velocity u."""

    def g_fun(self, u):
        u = np.asarray(u, dtype=float)
        return u + u**-self.gamma

    def f_direct(self, u):
        return self.g_fun(u) - self.g_fun(self.w_in)

    def _abs_f_ratio(self, anchor_is_q0):
        g = self.gamma
        q0, q1 = self.w_in, self.w_out
        if anchor_is_q0:
            def h(s):
                return 1.0 + q0 ** (-g - 1.0) * _pow1p_ratio(-np.asarray(s, dtype=float) / q0, -g)
        else:
            def h(t):
                return -(1.0 + q1 ** (-g - 1.0) * _pow1p_ratio(np.asarray(t, dtype=float) / q1, -g))
        return h

    def f(self, u):
        u = np.asarray(u, dtype=float)
        s = self.w_in - u
        t = u - self.w_out
        from0 = -s * self._abs_f_ratio(True)(s)
        from1 = -t * self._abs_f_ratio(False)(t)
        return np.where(s <= t, from0, from1)

    def fprime(self, u):
        g = self.gamma
        return 1.0 - g * np.asarray(u, dtype=float) ** (-g - 1.0)

    def fsecond(self, u):
        g = self.gamma
        return g * (g + 1.0) * np.asarray(u, dtype=float) ** (-g - 2.0)

    def weight(self, u):
        return np.asarray(u, dtype=float) ** -self.delta

    def critical_point(self):
        us = self.gamma ** (1.0 / (1.0 + self.gamma))
        return CriticalPoint(us, float(self.f(us)))

    def scale(self, param):
        return super().scale(param)

    def segments(self, log_shift):
        q0, q1, dl = self.w_in, self.w_out, self.delta
        um = self.split_point()
        one = lambda s: np.ones_like(np.asarray(s, dtype=float))  # noqa: E731
        return [
            Segment(q0, -1, q0 - um, 1, log_shift, self._abs_f_ratio(True), one,
                    lambda s: (q0 - s) ** -dl),
            Segment(q1, +1, um - q1, 1, log_shift, self._abs_f_ratio(False), one,
                    lambda s: (q1 + s) ** -dl),
        ]

    def chord_slope(self) -> float:
        uh = 0.5 * (self.w_in + self.w_out)
        return float(self.f(uh)) / (uh - self.w_in)

    def analytic_alpha_bracket(self, param):
        return (self.alpha_of(self.log_shift_bracket(param)[1]), 0.0)

    def log_shift_bracket(self, param):
        s = self.chord_slope()
        d = self.w_in - self.w_out
        hi = math.log(0.5 * s * d) - log_expm1(s * self.w_out**self.delta / (2.0 * param))
        return (None, hi)

    def lift(self, u, log_shift):
        u = np.asarray(u, dtype=float)
        return {"u": u, "rho": 1.0 / u, "p": u**-self.gamma}


@dataclass(frozen=True)
class VPModel(ReducedModel):
    """Temperature-dependent viscosity, polytropic gas, in the velocity u."""

    # pieces of F = (f1 + alpha g1) / (f2 + alpha g2)**delta
    def f1(self, u):
        g = self.gamma
        u = np.asarray(u, dtype=float)
        return 0.5 * (g + 1.0) * (u - self.w_in) * (u - self.w_out) / u

    def f1_direct(self, u):
        g, P0, Phi0 = self.gamma, self.pair.P0, self.pair.Phi0
        u = np.asarray(u, dtype=float)
        return 0.5 * (g + 1.0) * u - g * P0 + (g - 1.0) * Phi0 / u

    def g1(self, u):
        g = self.gamma
        return g - (g - 1.0) * self.w_in / np.asarray(u, dtype=float)

    def f2(self, u):
        u = np.asarray(u, dtype=float)
        return 0.5 * u * u - self.pair.P0 * u + self.pair.Phi0

    def g2(self, u):
        return np.asarray(u, dtype=float) - self.w_in

    f = f1
    f_direct = f1_direct

    def fprime(self, u):
        g = self.gamma
        return 0.5 * (g + 1.0) - (g - 1.0) * self.pair.Phi0 / np.asarray(u, dtype=float) ** 2

    def fsecond(self, u):
        g = self.gamma
        return 2.0 * (g - 1.0) * self.pair.Phi0 / np.asarray(u, dtype=float) ** 3

    def flux(self, u, alpha):
        self.check_alpha(alpha)
        return (self.f1(u) + alpha * self.g1(u)) / (self.f2(u) + alpha * self.g2(u)) ** self.delta

    def weight(self, u):
        return np.ones_like(np.asarray(u, dtype=float))

    def scale(self, param):
        g, R = self.gamma, self.pair.law.R
        return super().scale(param) * ((g - 1.0) / R) ** self.delta

    def critical_point(self):
        us = math.sqrt(self.w_in * self.w_out)
        return CriticalPoint(us, float(self.f1(us)))

    def segments(self, log_shift):
        g, q0, q1, dl = self.gamma, self.w_in, self.w_out, self.delta
        d = q0 - q1
        beta = math.exp(log_shift)
        um = self.split_point()
        f2, g1 = self.f2, self.g1
        return [
            Segment(q0, -1, q0 - um, 1, log_shift,
                    lambda s: 0.5 * (g + 1.0) * (d - s) / (q0 - s),
                    lambda s: g1(q0 - s),
                    lambda s: (f2(q0 - s) + beta * s) ** dl),
            Segment(q1, +1, um - q1, 1, log_shift,
                    lambda t: 0.5 * (g + 1.0) * (d - t) / (q1 + t),
                    lambda t: g1(q1 + t),
                    lambda t: (f2(q1 + t) + beta * (d - t)) ** dl),
        ]

    def analytic_alpha_bracket(self, param):
        return (-math.inf, 0.0)

    def pressure(self, u, alpha=None, *, log_shift=None, check=True):
        """p = (gamma-1) (f2 + alpha g2) / u, the integrated momentum/energy relation."""
        g = self.gamma
        u = np.asarray(u, dtype=float)
        if log_shift is not None:
            beta_g2 = math.exp(log_shift) * (self.w_in - u)
            p = (g - 1.0) * (self.f2(u) + beta_g2) / u
        else:
            p = (g - 1.0) * (self.f2(u) + alpha * self.g2(u)) / u
        if check and np.any(p <= 0.0):
            raise NonphysicalPressure(f"pressure non-positive (min {np.min(p)})")
        return p

    def lift(self, u, log_shift):
        u = np.asarray(u, dtype=float)
        p = self.pressure(u, log_shift=log_shift)
        return {"u": u, "rho": 1.0 / u, "p": p, "T": p * u / self.pair.law.R}


_CLASSES = {ModelKind.HB: HBModel, ModelKind.HP: HPModel, ModelKind.VB: VBModel,
            ModelKind.VP: VPModel}


def reduce(pair: ShockPair, model, delta: float | None = None) -> ReducedModel:
    """Pose ``pair`` as the scalar profile problem of ``model``.

    Raises
    ------
    InadmissibleState
        The pair lives on the wrong gas law/jump system, or (VP) the
        admissibility report fails.
    DegenerateWeight
        HP with A - 2 p1 <= 0.
    """
    model = ModelKind(model)
    law_kind, jump = MODEL_LAW[model]
    if (pair.law.kind, pair.jump) != (law_kind, jump):
        raise InadmissibleState(f"{model.value} needs a {jump.value} pair on a "
                                f"{law_kind.value} gas")
    g = pair.gamma
    if model in (ModelKind.VB, ModelKind.VP):
        if delta is None or not delta >= 0.0:
            raise ValueError(f"{model.value} needs a viscosity exponent delta >= 0")
        delta = float(delta)
    else:
        delta = 0.0

    if model is ModelKind.HB:
        v0 = pair.q0 ** (1.0 - g)
        v1 = pair.q1 ** (1.0 - g)
        tmp = HBModel(model=model, pair=pair, delta=delta, w_in=v0, w_out=v1,
                      orientation=Orientation.INCREASING, alpha_domain=(0.0, math.inf))
        a0 = -tmp.critical_point().f_star
        return HBModel(model=model, pair=pair, delta=delta, w_in=v0, w_out=v1,
                       orientation=Orientation.INCREASING, alpha_domain=(a0, math.inf),
                       alpha_limit=a0, shift_sign=1)
    if model is ModelKind.HP:
        if not pair.A - 2.0 * pair.p1 > 0.0:
            raise DegenerateWeight(f"A - 2 p1 = {pair.A - 2.0 * pair.p1} <= 0")
        return HPModel(model=model, pair=pair, delta=delta, w_in=pair.p0, w_out=pair.p1,
                       orientation=Orientation.INCREASING, alpha_domain=(0.0, math.inf),
                       alpha_limit=0.0, shift_sign=1)
    if model is ModelKind.VB:
        return VBModel(model=model, pair=pair, delta=delta, w_in=pair.q0, w_out=pair.q1,
                       orientation=Orientation.DECREASING, alpha_domain=(-math.inf, 0.0),
                       alpha_limit=0.0, shift_sign=-1)
    rep = admissibility(pair, model)
    if not rep.admissible:
        raise InadmissibleState("VP inadmissible: " + "; ".join(rep.reasons))
    m = VPModel(model=model, pair=pair, delta=delta, w_in=pair.q0, w_out=pair.q1,
                orientation=Orientation.DECREASING, alpha_domain=(-math.inf, 0.0),
                alpha_limit=0.0, shift_sign=-1)
    uu = np.linspace(pair.q1, pair.q0, 257)
    if not np.all(m.f2(uu) > 0.0):
        raise InadmissibleState("VP denominator f2 not positive on [q1, q0]")
    return m


# module-level aliases mirroring the operation names
def flux(model: ReducedModel, w, alpha):
    return model.flux(w, alpha)


def weight(model: ReducedModel, w):
    return model.weight(w)


def vp_pressure(model: VPModel, u, alpha):
    return model.pressure(u, alpha)


def analytic_alpha_bracket(model: ReducedModel, param: float) -> tuple:
    return model.analytic_alpha_bracket(param)


def critical_point(model: ReducedModel) -> CriticalPoint:
    return model.critical_point()
