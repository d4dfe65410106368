"""Steady 1-D shock profiles for heat-conductive and temperature-dependent
viscous gases, the integration constant alpha, and vanishing-parameter limits."""

__version__ = "0.1.0"

from .alpha import (AlphaRoot, Branch, EndpointStrategy, QuadratureSpec, eval_H, scan_J,
                    solve_alpha)
from .asymptotics import LimitShock, SweepResult, limit_alpha, limit_location, run_sweep
from .models import ReducedModel, analytic_alpha_bracket, flux, reduce, vp_pressure, weight
from .profile import Profile, ratio_I, reconstruct, shoot_ivp_oracle
from .states import (FlowState, GasKind, GasLaw, Jump, ModelKind, ShockPair, admissibility,
                     build_pair, make_upstream, rh_downstream)

__all__ = [
    "AlphaRoot", "Branch", "EndpointStrategy", "FlowState", "GasKind", "GasLaw", "Jump",
    "LimitShock", "ModelKind", "Profile", "QuadratureSpec", "ReducedModel", "ShockPair",
    "SweepResult", "admissibility", "analytic_alpha_bracket", "build_pair", "eval_H", "flux",
    "limit_alpha", "limit_location", "make_upstream", "ratio_I", "reconstruct", "reduce",
    "rh_downstream", "run_sweep", "scan_J", "shoot_ivp_oracle", "solve_alpha", "vp_pressure",
    "weight",
]
