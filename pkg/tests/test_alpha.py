import math

import numpy as np
import pytest

import oracles
from nozzleshock import (Branch, EndpointStrategy, QuadratureSpec, build_pair, eval_H, reduce,
                         scan_J, solve_alpha)
from nozzleshock.alpha import pick_root
from nozzleshock.errors import BracketExpansionExhausted, NoRootInDomain, QuadratureFailure


@pytest.fixture(scope="module")
def hb():
    return reduce(build_pair("HB", 1.4, q0=1.5), "HB")


@pytest.fixture(scope="module")
def hp():
    return reduce(build_pair("HP", 1.4, M0sq=1.2), "HP")


def vb(delta):
    return reduce(build_pair("VB", 1.4, q0=1.5), "VB", delta)


def vp(delta):
    return reduce(build_pair("VP", 1.4, M0sq=1.2), "VP", delta)


# golden values pinned from the 10^6-point midpoint oracle
def test_hb_golden(hb):
    alpha = hb.alpha_limit * 1.01
    H = eval_H(hb, 0.1, alpha)
    ref = oracles.H_midpoint(hb, 0.1, alpha)
    assert H == pytest.approx(ref, abs=1e-8)
    assert H == pytest.approx(2.454298179469912, rel=1e-11)


def test_hp_golden(hp):
    H = eval_H(hp, 0.05, 0.01)
    assert H == pytest.approx(oracles.H_midpoint(hp, 0.05, 0.01), abs=1e-8)
    assert H == pytest.approx(0.09987777072669796, rel=1e-11)


def test_hb_large_alpha(hb):
    vals = [eval_H(hb, 0.1, a) for a in (1e2, 1e4, 1e6)]
    width = hb.w_out - hb.w_in
    for a, v in zip((1e2, 1e4, 1e6), vals):
        # f >= -alpha0, so the integrand is at most 1/(alpha - alpha0)
        assert 0 < v <= 0.1 * width / (a - hb.alpha_limit)
    assert vals[0] > vals[1] > vals[2] > 0


def _random_case(rng):
    kind = rng.choice(["HB", "HP", "VB", "VP"])
    param = float(10 ** rng.uniform(-1.7, -0.7))
    shift = float(10 ** rng.uniform(-2.0, 0.0))
    if kind == "HB":
        m = reduce(build_pair("HB", 1.4, q0=1.5), "HB")
        alpha = m.alpha_limit + shift
    elif kind == "HP":
        m = reduce(build_pair("HP", 1.4, M0sq=1.2), "HP")
        alpha = shift
    elif kind == "VB":
        m = vb(float(rng.choice([0.0, 0.5, 1.0, 2.0])))
        alpha = -shift
    else:
        m = vp(float(rng.choice([0.5, 1.0, 2.0])))
        alpha = -shift
    return m, param, alpha


def test_oracle_equivalence_random():
    rng = np.random.default_rng(20240611)
    for _ in range(20):
        m, param, alpha = _random_case(rng)
        H = eval_H(m, param, alpha)
        ref = oracles.H_midpoint(m, param, alpha)
        assert abs(H - ref) <= max(1e-8, 1e-6 * abs(ref)), (m.model, param, alpha, H, ref)


def test_monotone_in_alpha(hb, hp):
    for m, alphas in ((hb, hb.alpha_limit + np.geomspace(1e-6, 10, 15)),
                      (hp, np.geomspace(1e-8, 10, 15))):
        vals = [eval_H(m, 0.05, float(a)) for a in alphas]
        assert np.all(np.diff(vals) < 0)
    m = vb(1.0)
    alphas = -np.geomspace(10, 1e-8, 15)
    vals = [eval_H(m, 0.05, float(a)) for a in alphas]
    assert np.all(np.diff(vals) > 0)


@pytest.mark.parametrize("kappa", [1e-1, 1e-2, 1e-3])
def test_hb_root_in_bracket(hb, kappa):
    (root,) = solve_alpha(hb, kappa)
    lo, hi = hb.analytic_alpha_bracket(kappa)
    assert root.branch is Branch.NEAR_FSTAR
    assert hb.alpha_limit < root.alpha < hi
    assert lo <= root.alpha
    assert root.residual < 1e-10


def test_vb_root_against_mp_oracle():
    m = vb(1.0)
    (root,) = solve_alpha(m, 0.02)
    assert root.alpha < 0 and root.residual < 1e-10
    assert root.branch is Branch.NEAR_ZERO
    # tanh-sinh in 40 digits; bisection on the log shift around the solver's answer
    ell = oracles.vb_root_mp(m.pair, 0.02, 1.0, root.log_shift - 0.5, root.log_shift + 0.5)
    assert abs(math.expm1(root.log_shift - ell)) < 1e-8


def test_vb_residual_by_mp_quadrature():
    m = vb(1.0)
    (root,) = solve_alpha(m, 0.02)
    assert abs(oracles.vb_H_mp(m.pair, 0.02, root.alpha, 1.0) - 1.0) < 1e-10


def test_vp_two_roots():
    m = vp(2.0)
    roots = solve_alpha(m, 1e-3)
    assert [r.branch for r in roots] == [Branch.NEAR_ZERO, Branch.DIVERGENT]
    a1, a2 = roots[0].alpha, roots[1].alpha
    assert a2 < a1 <= 0
    for r in roots:
        assert r.residual < 1e-10
    roots_half = solve_alpha(m, 5e-4)
    assert abs(roots_half[1].alpha) > abs(a2)
    assert roots_half[0].log_shift < roots[0].log_shift
    # the J scan shows one dip below 1/scale between the two roots
    grid = -np.geomspace(1e-4, 1e8, 49)
    J = scan_J(m, grid)
    level = 1.0 / m.scale(1e-3)
    inside = (grid < a1) & (grid > a2)
    assert np.all(J[inside] < level)
    assert np.all(J[grid > a1] > level) and np.all(J[grid < a2] > level)


def test_vp_too_viscous():
    m = vp(2.0)
    # no root once mu * min J exceeds 1; min J comes from a dense scan
    J = scan_J(m, -np.geomspace(1e-4, 1e8, 200))
    mu_max = 1.0 / (J.min() * m.scale(1.0))
    assert len(solve_alpha(m, 0.5 * mu_max)) == 2
    with pytest.raises(NoRootInDomain):
        solve_alpha(m, 2.0 * mu_max)


@pytest.mark.parametrize("delta", [0.5, 1.0])
def test_vp_single_root(delta):
    for mu in (1e-2, 1e-3):
        roots = solve_alpha(vp(delta), mu)
        assert len(roots) == 1 and roots[0].branch is Branch.NEAR_ZERO


def test_scan_J_shapes():
    grid = -np.geomspace(1e2, 1e8, 7)
    J = scan_J(vp(0.5), grid)
    assert np.all(np.diff(J) < 0) and J[-1] < 0.05 * J[0]

    m1 = vp(1.0)
    C0 = oracles.vp_limit_C0(m1.pair)
    J = scan_J(m1, -np.geomspace(1e4, 1e10, 4))
    assert abs(J[-1] - C0) < 1e-5 * C0
    assert abs(J[-1] - C0) < abs(J[0] - C0)

    grid = -np.geomspace(1e-4, 1e4, 33)
    J = scan_J(vp(2.0), grid)
    i = int(np.argmin(J))
    assert 0 < i < grid.size - 1
    assert J[0] > 10 * J[i] and J[-1] > 10 * J[i]


def test_root_stability():
    cases = [(reduce(build_pair("HB", 1.4, q0=1.5), "HB"), 1e-2),
             (reduce(build_pair("HP", 1.4, M0sq=1.2), "HP"), 1e-2),
             (vb(0.5), 1e-2), (vp(2.0), 1e-3)]
    for m, param in cases:
        a = solve_alpha(m, param, QuadratureSpec(rel_tol=1e-12))
        b = solve_alpha(m, param, QuadratureSpec(rel_tol=5e-13))
        for ra, rb in zip(a, b):
            rel = abs(math.expm1(ra.log_shift - rb.log_shift)) * ra.shift / abs(ra.alpha)
            assert rel < 1e-9


def test_underflowing_roots_keep_log_shift(hp):
    (root,) = solve_alpha(hp, 1e-3)
    assert root.log_shift < -700
    assert root.alpha == 0.0 or root.alpha < 1e-300
    assert root.residual < 1e-10


def test_raw_adaptive_fails_on_thin_layers(hp):
    spec = QuadratureSpec(endpoint_strategy=EndpointStrategy.RAW_ADAPTIVE, max_depth=30)
    # a moderate shift is fine without the substitution
    assert eval_H(hp, 0.05, 0.01, spec) == pytest.approx(eval_H(hp, 0.05, 0.01), rel=1e-8)
    with pytest.raises(QuadratureFailure) as info:
        eval_H(hp, 1e-3, spec=spec, log_shift=-300.0)
    lo, hi = info.value.interval
    assert hi > lo and info.value.error > 0


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_depth=0)


def test_pick_root():
    roots = solve_alpha(vp(2.0), 1e-3)
    assert pick_root(roots).branch is Branch.NEAR_ZERO
    assert pick_root(roots, "Divergent").branch is Branch.DIVERGENT
    with pytest.raises(BracketExpansionExhausted):
        pick_root(roots[:1], Branch.DIVERGENT)
    hp = reduce(build_pair("HP", 1.4, M0sq=1.2), "HP")
    with pytest.raises(NoRootInDomain):
        pick_root(solve_alpha(hp, 1e-2), Branch.DIVERGENT)


def test_vp_divergent_root_beyond_cap():
    # delta just above 1: J grows like |alpha|^(delta-1), far too slowly
    roots = solve_alpha(vp(1.1), 1e-3)
    assert [r.branch for r in roots] == [Branch.NEAR_ZERO]
    with pytest.raises(BracketExpansionExhausted):
        pick_root(roots, Branch.DIVERGENT)
