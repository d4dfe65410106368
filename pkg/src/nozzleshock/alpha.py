"""The alpha equation H(alpha) = 1 and its roots.

H(alpha) = integral over the w-range of scale * weight / |F|. Every model's
range is cut into two :class:`~nozzleshock.models.Segment` s anchored where
|F| is smallest. On each segment the leading singular behaviour
``C / (k s**power + b)`` is integrated in closed form and the bounded
remainder is integrated adaptively in lambda = log(s), which resolves layers
of any width down to b ~ exp(-10000).

Roots are sought in the log shift ``ell = log|alpha - alpha_limit|`` (see
:mod:`nozzleshock.models`), because for small parameters alpha underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import BracketExpansionExhausted, NoRootInDomain
from .models import ReducedModel, Segment
from .quadrature import adaptive_panels
from .states import ModelKind

# remainder integrand is negligible below s = length * exp(-LAMBDA_SPAN)
LAMBDA_SPAN = 40.0
# search caps in log shift: |alpha| <= 1e12 upwards, exp(-1e6) downwards
LOG_SHIFT_MAX = math.log(1e12)
LOG_SHIFT_MIN = -1e6


class EndpointStrategy(str, Enum):
    LOG_SUBSTITUTION = "LogSubstitution"
    RAW_ADAPTIVE = "RawAdaptive"


class Branch(str, Enum):
    NEAR_ZERO = "NearZero"
    NEAR_FSTAR = "NearFStar"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_depth: int = 50
    endpoint_strategy: EndpointStrategy = EndpointStrategy.LOG_SUBSTITUTION

    def __post_init__(self):
        object.__setattr__(self, "endpoint_strategy", EndpointStrategy(self.endpoint_strategy))
        if not 0.0 < self.rel_tol <= 1e-3:
            raise ValueError(f"rel_tol must lie in (0, 1e-3], got {self.rel_tol}")
        if not self.abs_tol >= 0.0:
            raise ValueError("abs_tol must be non-negative")
        if self.max_depth < 30:
            raise ValueError("max_depth must be at least 30")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class AlphaRoot:
    """A solution of H(alpha) = 1.

    ``alpha`` is the plain float value and may have underflowed to the domain
    boundary (e.g. ``-0.0`` for VB at tiny viscosity); ``log_shift`` always
    carries the full information.
    """

    model: ModelKind
    param: float
    log_shift: float
    alpha: float
    residual: float
    bracket: tuple
    log_bracket: tuple
    branch: Branch
    evaluations: int = 0

    @property
    def shift(self) -> float:
        return math.exp(self.log_shift)

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "log_shift": self.log_shift,
            "residual": self.residual,
            "branch": self.branch.value,
            "bracket": list(self.bracket),
            "evaluations": self.evaluations,
        }


# ---------------------------------------------------------------------------
# segment integrals


def _remainder_fun(seg: Segment):
    def r(lam):
        s = np.exp(lam)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            out = (seg.density(s) - seg.model_density(s)) * s
        return np.where(s > 0.0, out, 0.0)

    return r


def segment_integral(seg: Segment, s_b: float, tol: float, spec: QuadratureSpec,
                     s_a: float = 0.0):
    """Integral of ``seg.density`` over [s_a, s_b]; returns (value, error, evals)."""
    if s_b <= s_a:
        return 0.0, 0.0, 0
    if spec.endpoint_strategy is EndpointStrategy.RAW_ADAPTIVE:
        edges = np.linspace(s_a, s_b, 9)
        v, e, n = adaptive_panels(seg.density, edges, tol, spec.max_depth)
        return float(v.sum()), float(e.sum()), n
    model = float(seg.model_primitive(s_b) - seg.model_primitive(s_a))
    lam_hi = math.log(s_b)
    lam_lo = math.log(seg.length) - LAMBDA_SPAN
    if s_a > 0.0:
        lam_lo = max(lam_lo, math.log(s_a))
    if lam_hi <= lam_lo:
        return model, 0.0, 0
    edges = np.linspace(lam_lo, lam_hi, max(2, int(math.ceil(lam_hi - lam_lo))) + 1)
    v, e, n = adaptive_panels(_remainder_fun(seg), edges, tol, spec.max_depth)
    return model + float(v.sum()), float(e.sum()), n


def _tolerance(model: ReducedModel, segs, spec):
    """Absolute tolerance per segment, from the analytic part of H/scale."""
    est = sum(float(s.model_primitive(s.length)) for s in segs)
    return max(spec.abs_tol, spec.rel_tol * abs(est)) / len(segs)


def H_of_log_shift(model: ReducedModel, param: float, log_shift: float,
                   spec: QuadratureSpec = DEFAULT_SPEC):
    """H at alpha = alpha_of(log_shift); returns (H, error estimate, evals)."""
    scale = model.scale(param)
    segs = model.segments(log_shift)
    tol = _tolerance(model, segs, spec)
    total = err = 0.0
    evals = 0
    for seg in segs:
        v, e, n = segment_integral(seg, seg.length, tol, spec)
        total += v
        err += e
        evals += n
    return scale * total, scale * err, evals


def eval_H(model: ReducedModel, param: float, alpha: float | None = None,
           spec: QuadratureSpec | None = None, *, log_shift: float | None = None) -> float:
    """H(alpha) = integral of scale * weight / F over the w-range (always > 0).

    Give either ``alpha`` or, to reach values that underflow, ``log_shift``.
    """
    spec = spec or DEFAULT_SPEC
    if log_shift is None:
        if alpha is None:
            raise ValueError("give alpha or log_shift")
        log_shift = model.log_shift_of(alpha)
    return H_of_log_shift(model, param, log_shift, spec)[0]


def scan_J(model: ReducedModel, alpha_grid, spec: QuadratureSpec | None = None,
           param: float = 1.0) -> np.ndarray:
    """J(alpha) = H / scale on a grid of negative alphas (VP diagnostics)."""
    spec = spec or DEFAULT_SPEC
    out = []
    for a in np.asarray(alpha_grid, dtype=float):
        ell = model.log_shift_of(float(a))
        out.append(H_of_log_shift(model, param, ell, spec)[0] / model.scale(param))
    return np.array(out)


def scan_J_log(model: ReducedModel, log_shifts, spec: QuadratureSpec | None = None,
               param: float = 1.0) -> np.ndarray:
    """Same as :func:`scan_J` on log shifts."""
    spec = spec or DEFAULT_SPEC
    sc = model.scale(param)
    return np.array([H_of_log_shift(model, param, float(l), spec)[0] / sc for l in log_shifts])


# ---------------------------------------------------------------------------
# root finding


class _Counter:
    def __init__(self, model, param, spec):
        self.model, self.param, self.spec = model, param, spec
        self.n = 0
        self.cache = {}

    def __call__(self, ell):
        ell = float(ell)
        if ell not in self.cache:
            self.n += 1
            self.cache[ell] = H_of_log_shift(self.model, self.param, ell, self.spec)[0] - 1.0
        return self.cache[ell]


def _refine(phi: _Counter, lo: float, hi: float, branch: Branch, model, param) -> AlphaRoot:
    flo, fhi = phi(lo), phi(hi)
    if flo == 0.0:
        root = lo
    elif fhi == 0.0:
        root = hi
    else:
        root = brentq(phi, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    res = abs(phi(root))
    return AlphaRoot(model=model.model, param=param, log_shift=root,
                     alpha=model.alpha_of(root), residual=res,
                     bracket=tuple(sorted((model.alpha_of(lo), model.alpha_of(hi)))),
                     log_bracket=(lo, hi), branch=branch, evaluations=phi.n)


def _expand_down(phi, hi: float) -> float:
    """Smallest-step geometric search below ``hi`` for phi > 0."""
    step = 1.0
    while True:
        lo = hi - step
        if lo < LOG_SHIFT_MIN:
            raise BracketExpansionExhausted("no sign change down to alpha shift exp(-1e6)")
        if phi(lo) > 0.0:
            return lo
        hi = lo
        step *= 2.0


def _expand_up(phi, lo: float) -> float:
    step = 1.0
    while True:
        hi = lo + step
        if hi > LOG_SHIFT_MAX:
            raise BracketExpansionExhausted("no sign change up to |alpha| = 1e12")
        if phi(hi) < 0.0:
            return hi
        lo = hi
        step *= 2.0


def solve_alpha(model: ReducedModel, param: float,
                spec: QuadratureSpec | None = None) -> list:
    """All roots of H(alpha) = 1 for ``model`` at ``param``.

    HB, HP, VB and VP with delta <= 1 have exactly one root. VP with delta > 1
    has either none or two (a near-zero and a divergent one); the divergent
    root is searched only up to |alpha| = 1e12. The solver reports the roots
    it finds and never asserts their number.
    """
    spec = spec or DEFAULT_SPEC
    if not param > 0.0:
        raise ValueError(f"parameter must be positive, got {param}")
    phi = _Counter(model, param, spec)
    if model.model is ModelKind.VP:
        return _solve_vp(model, param, phi)

    lo, hi = model.log_shift_bracket(param)
    if hi is None:
        hi = 0.0
    if phi(hi) > 0.0:
        hi = _expand_up(phi, hi)
    if lo is not None:
        # an analytic bound can be so loose that H overflows there
        while math.isinf(phi(lo)) and hi - lo > 1.0:
            lo = 0.5 * (lo + hi)
    if lo is None or not phi(lo) > 0.0:
        lo = _expand_down(phi, hi)
    branch = Branch.NEAR_FSTAR if model.model is ModelKind.HB else Branch.NEAR_ZERO
    return [_refine(phi, lo, hi, branch, model, param)]


def _solve_vp(model, param, phi) -> list:
    grid = list(np.arange(-10.0, LOG_SHIFT_MAX, 0.5)) + [LOG_SHIFT_MAX]
    # near-zero side: J -> +inf as alpha -> 0-
    if phi(grid[0]) <= 0.0:
        grid.insert(0, _expand_down(phi, grid[0]))
    vals = np.array([phi(l) for l in grid])

    roots = []
    changes = np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))
    if changes.size == 0:
        # the minimum may dip below zero between grid points
        i = int(np.argmin(vals))
        a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        opt = minimize_scalar(phi, bounds=(a, b), method="bounded",
                              options={"xatol": 1e-8})
        if opt.fun < 0.0:
            roots.append(_refine(phi, a, opt.x, Branch.NEAR_ZERO, model, param))
            roots.append(_refine(phi, opt.x, b, Branch.DIVERGENT, model, param))
            return roots
        if model.delta > 1.0 or vals[-1] > 0.0:
            raise NoRootInDomain(
                f"H - 1 stays positive (min {float(opt.fun) + 1.0:.6g} > 1): parameter "
                f"{param} too large for a VP profile with delta={model.delta}")
        raise BracketExpansionExhausted("no sign change of H - 1 for VP")
    for j, i in enumerate(changes):
        branch = Branch.NEAR_ZERO if j == 0 else Branch.DIVERGENT
        roots.append(_refine(phi, grid[i], grid[i + 1], branch, model, param))
    # delta slightly above 1: J grows so slowly that the divergent root can lie
    # beyond the cap; the near-zero root is still returned (see pick_root)
    return roots


def pick_root(roots: list, branch: Branch | str | None = None) -> AlphaRoot:
    """Select a root by branch (default: the first, i.e. near-zero / near-f*)."""
    if branch is None:
        return roots[0]
    branch = Branch(branch)
    for r in roots:
        if r.branch is branch:
            return r
    if branch is Branch.DIVERGENT and roots and roots[0].model is ModelKind.VP:
        raise BracketExpansionExhausted("no sign change of H - 1 for |alpha| up to 1e12")
    raise NoRootInDomain(f"no {branch.value} root among {[r.branch.value for r in roots]}")
