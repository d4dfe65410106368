"""Upstream/downstream gas states and the Rankine-Hugoniot family.

All states use the normalization rho0*q0 = 1, so rho = 1/u everywhere along a
profile. Barotropic gases obey p = rho**gamma; polytropic gases carry the full
energy equation with e = p/((gamma-1)*rho).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import EntropyViolation, JumpRootNotFound, NotSupersonic


class GasKind(str, Enum):
    BAROTROPIC = "BarotropicIsentropic"
    POLYTROPIC = "PolytropicFull"


class Jump(str, Enum):
    FULL_EULER = "FullEuler"
    MASS_BERNOULLI = "MassBernoulli"
    MASS_MOMENTUM = "MassMomentum"


class ModelKind(str, Enum):
    HB = "HB"
    HP = "HP"
    VB = "VB"
    VP = "VP"


# which gas law and jump system each reduced model lives on
MODEL_LAW = {
    ModelKind.HB: (GasKind.BAROTROPIC, Jump.MASS_BERNOULLI),
    ModelKind.HP: (GasKind.POLYTROPIC, Jump.FULL_EULER),
    ModelKind.VB: (GasKind.BAROTROPIC, Jump.MASS_MOMENTUM),
    ModelKind.VP: (GasKind.POLYTROPIC, Jump.FULL_EULER),
}


@dataclass(frozen=True)
class GasLaw:
    kind: GasKind
    gamma: float
    R: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GasKind(self.kind))
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if not self.R > 0.0:
            raise ValueError(f"R must be positive, got {self.R}")

    @property
    def barotropic(self) -> bool:
        return self.kind is GasKind.BAROTROPIC


@dataclass(frozen=True)
class FlowState:
    u: float
    rho: float
    p: float
    gamma: float
    M: float = field(init=False)

    def __post_init__(self):
        if not (self.u > 0 and self.rho > 0 and self.p > 0):
            raise ValueError(f"non-physical state u={self.u}, rho={self.rho}, p={self.p}")
        object.__setattr__(self, "M", self.u * math.sqrt(self.rho / (self.gamma * self.p)))

    @property
    def Msq(self) -> float:
        return self.rho * self.u**2 / (self.gamma * self.p)


@dataclass(frozen=True)
class ShockPair:
    """Upstream state ``U0``, downstream state ``U1`` and integral constants.

    ``A`` and ``P0`` are both the momentum flux rho*u**2 + p (they coincide
    under the normalization); ``Phi0`` is the Bernoulli constant
    u**2/2 + gamma/(gamma-1) * p/rho.
    """

    law: GasLaw
    U0: FlowState
    U1: FlowState
    jump: Jump
    A: float = field(init=False)
    P0: float = field(init=False)
    Phi0: float = field(init=False)

    def __post_init__(self):
        g = self.law.gamma
        U0 = self.U0
        A = U0.rho * U0.u**2 + U0.p
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "P0", A)
        object.__setattr__(self, "Phi0", 0.5 * U0.u**2 + g / (g - 1.0) * U0.p / U0.rho)

    @property
    def gamma(self) -> float:
        return self.law.gamma

    @property
    def q0(self) -> float:
        return self.U0.u

    @property
    def q1(self) -> float:
        return self.U1.u

    @property
    def p0(self) -> float:
        return self.U0.p

    @property
    def p1(self) -> float:
        return self.U1.p

    @property
    def M0(self) -> float:
        return self.U0.M

    @property
    def M1(self) -> float:
        return self.U1.M

    def residuals(self) -> dict:
        """Absolute residuals of the conservation laws this pair must satisfy."""
        U0, U1, g = self.U0, self.U1, self.gamma
        out = {
            "mass": abs(U0.rho * U0.u - U1.rho * U1.u),
            "normalization": abs(U0.rho * U0.u - 1.0),
        }
        if self.jump is Jump.FULL_EULER or self.jump is Jump.MASS_MOMENTUM:
            out["momentum"] = abs(U1.rho * U1.u**2 + U1.p - self.A)
        if self.jump is Jump.FULL_EULER or self.jump is Jump.MASS_BERNOULLI:
            phi1 = 0.5 * U1.u**2 + g / (g - 1.0) * U1.p / U1.rho
            out["energy"] = abs(phi1 - self.Phi0)
        if self.law.barotropic:
            out["eos0"] = abs(U0.p - U0.rho**g)
            out["eos1"] = abs(U1.p - U1.rho**g)
        return out


def make_upstream(law: GasLaw, M0sq: float) -> FlowState:
    """Supersonic upstream state with rho0*q0 = 1 and squared Mach number ``M0sq``.

    Barotropic: q0 = (gamma*M0sq)**(1/(gamma+1)). Polytropic: q0 = rho0 = 1 and
    p0 = 1/(gamma*M0sq).
    """
    if not M0sq > 1.0:
        raise NotSupersonic(f"upstream must be supersonic, got M0^2={M0sq}")
    g = law.gamma
    if law.barotropic:
        return upstream_from_speed(law, (g * M0sq) ** (1.0 / (g + 1.0)))
    return FlowState(u=1.0, rho=1.0, p=1.0 / (g * M0sq), gamma=g)


def upstream_from_speed(law: GasLaw, q0: float) -> FlowState:
    """Barotropic upstream state from its speed (rho0 = 1/q0, p0 = rho0**gamma)."""
    if not law.barotropic:
        raise ValueError("speed parameterization only applies to barotropic gases")
    g = law.gamma
    if not q0 ** (g + 1.0) > g:
        raise NotSupersonic(f"q0={q0} is not supersonic (needs q0 > {g ** (1 / (g + 1)):.6g})")
    rho = 1.0 / q0
    return FlowState(u=q0, rho=rho, p=rho**g, gamma=g)


def _jump_function(U0: FlowState, law: GasLaw, jump: Jump):
    """Return (j, dj, u_crit) for the scalar jump equation j(u) = 0.

    Each j is convex on (0, inf), vanishes at q0 and has its minimum at u_crit.
    """
    g = law.gamma
    q0 = U0.u
    A = U0.rho * q0**2 + U0.p
    Phi0 = 0.5 * q0**2 + g / (g - 1.0) * U0.p / U0.rho
    if jump is Jump.FULL_EULER:
        c1 = (g - 1.0) * Phi0

        def j(u):
            return 0.5 * (g + 1.0) * u - g * A + c1 / u

        def dj(u):
            return 0.5 * (g + 1.0) - c1 / u**2

        return j, dj, math.sqrt(2.0 * c1 / (g + 1.0))
    if jump is Jump.MASS_MOMENTUM:
        ref = q0 + q0**-g

        def j(u):
            return u + u**-g - ref

        def dj(u):
            return 1.0 - g * u ** (-g - 1.0)

        return j, dj, g ** (1.0 / (g + 1.0))
    if jump is Jump.MASS_BERNOULLI:
        k = g / (g - 1.0)

        def j(u):
            return 0.5 * u * u + k * u ** (1.0 - g) - Phi0

        def dj(u):
            return u - g * u**-g

        return j, dj, g ** (1.0 / (g + 1.0))
    raise ValueError(f"unknown jump {jump!r}")


def rh_downstream(U0: FlowState, law: GasLaw, jump: Jump) -> ShockPair:
    """Solve the jump conditions for the subsonic downstream state."""
    jump = Jump(jump)
    if law.barotropic != (jump is not Jump.FULL_EULER):
        raise ValueError(f"jump {jump.value} does not match gas law {law.kind.value}")
    g = law.gamma
    if not U0.M > 1.0:
        raise NotSupersonic(f"upstream Mach number {U0.M} is not supersonic")
    j, dj, uc = _jump_function(U0, law, jump)
    if not uc < U0.u or not j(uc) < 0.0:
        raise JumpRootNotFound("jump function has no subsonic root (shock strength zero)")

    hi = uc
    lo = 0.5 * uc
    for _ in range(200):
        if j(lo) > 0.0:
            break
        hi, lo = lo, 0.5 * lo
    else:
        raise JumpRootNotFound("could not bracket the subsonic root")

    # bisection to 1e-14, then one Newton polish
    while hi - lo > 1e-14 * hi:
        mid = 0.5 * (lo + hi)
        if j(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    q1 = 0.5 * (lo + hi)
    d = dj(q1)
    if d != 0.0:
        step = j(q1) / d
        if abs(step) < (hi - lo) + 1e-15 * q1:
            q1 -= step

    rho1 = 1.0 / q1
    if jump is Jump.FULL_EULER:
        p1 = U0.rho * U0.u**2 + U0.p - q1
    else:
        p1 = rho1**g
    if not p1 > U0.p:
        raise EntropyViolation(f"downstream pressure {p1} does not exceed upstream {U0.p}")
    U1 = FlowState(u=q1, rho=rho1, p=p1, gamma=g)
    return ShockPair(law=law, U0=U0, U1=U1, jump=jump)


def build_pair(model, gamma: float, M0sq: float | None = None, q0: float | None = None,
               R: float = 1.0) -> ShockPair:
    """Convenience: the state pair a given reduced model is posed on.

    Exactly one of ``M0sq`` and ``q0`` must be given; ``q0`` is only meaningful
    for the barotropic models.
    """
    model = ModelKind(model)
    kind, jump = MODEL_LAW[model]
    law = GasLaw(kind, gamma, R)
    if (M0sq is None) == (q0 is None):
        raise ValueError("give exactly one of M0sq and q0")
    if q0 is not None:
        U0 = upstream_from_speed(law, q0)
    else:
        U0 = make_upstream(law, M0sq)
    return rh_downstream(U0, law, jump)


def mach_ratio_downstream(gamma: float, M0sq: float) -> float:
    """Classical normal-shock speed ratio q1/q0 for a polytropic gas."""
    return ((gamma - 1.0) * M0sq + 2.0) / ((gamma + 1.0) * M0sq)


@dataclass(frozen=True)
class AdmissibilityReport:
    model: ModelKind
    supersonic: bool
    hp1: bool = False
    hp2: bool = False
    hp_nondegenerate: bool = False
    vp_mach: bool = False
    vp_g1_positive: bool = False
    law_matches: bool = True
    admissible: bool = False
    reasons: tuple = ()

    def as_dict(self) -> dict:
        return {
            "model": self.model.value,
            "admissible": self.admissible,
            "supersonic": self.supersonic,
            "law_matches": self.law_matches,
            "hp1": self.hp1,
            "hp2": self.hp2,
            "hp_nondegenerate": self.hp_nondegenerate,
            "vp_mach": self.vp_mach,
            "vp_g1_positive": self.vp_g1_positive,
            "reasons": list(self.reasons),
        }


def hp_mach_bound(gamma: float) -> float:
    """Upper bound on M0^2 under condition (HP1); infinite for gamma >= 3."""
    if gamma >= 3.0:
        return math.inf
    return (3.0 * gamma - 1.0) / (gamma * (3.0 - gamma))


def admissibility(pair: ShockPair, model) -> AdmissibilityReport:
    """Report (never raise) whether ``pair`` is admissible for ``model``."""
    model = ModelKind(model)
    g = pair.gamma
    M0sq = pair.U0.Msq
    reasons = []
    supersonic = M0sq > 1.0 and pair.M1 < 1.0
    if not supersonic:
        reasons.append("not a transonic pair")
    law_ok = (pair.law.kind, pair.jump) == MODEL_LAW[model]
    if not law_ok:
        reasons.append(f"{model.value} needs {MODEL_LAW[model][1].value} jump on "
                       f"{MODEL_LAW[model][0].value} gas")
    kw = {}
    ok = supersonic and law_ok
    if model is ModelKind.HP:
        hp1 = 1.0 < g < 3.0 and 1.0 < M0sq <= hp_mach_bound(g)
        hp2 = g >= 3.0 and M0sq > 1.0
        nondeg = pair.A - 2.0 * pair.p1 > 0.0
        kw.update(hp1=hp1, hp2=hp2, hp_nondegenerate=nondeg)
        if not (hp1 or hp2):
            reasons.append("neither (HP1) nor (HP2) holds")
        if not nondeg:
            reasons.append("A - 2 p1 <= 0 (degenerate weight)")
        ok = ok and (hp1 or hp2) and nondeg
    elif model is ModelKind.VP:
        vp_mach = 1.0 < M0sq < 2.0 * g / (g - 1.0)
        g1 = g - (g - 1.0) * pair.q0 / pair.q1
        kw.update(vp_mach=vp_mach, vp_g1_positive=g1 > 0.0)
        if not vp_mach:
            reasons.append("M0^2 outside (1, 2 gamma/(gamma-1))")
        ok = ok and vp_mach and g1 > 0.0
    return AdmissibilityReport(model=model, supersonic=supersonic, law_matches=law_ok,
                               admissible=ok, reasons=tuple(reasons), **kw)
