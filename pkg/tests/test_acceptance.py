"""Acceptance criteria 1-10.

Each test records one ``[PASS]``/``[FAIL]`` line; ``conftest.py`` prints the
collected lines at the end of the pytest run, and running this file directly
(``python tests/test_acceptance.py``) prints them as they are produced.
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

from nozzleshock import (Branch, build_pair, limit_location, reconstruct, reduce, run_sweep,
                         solve_alpha)
from nozzleshock.asymptotics import vb_location
from nozzleshock.cli import main as cli_main
from nozzleshock.cli import oracle_compare
from nozzleshock.alpha import DEFAULT_SPEC
from nozzleshock.errors import NoRootInDomain, XOutOfUnitInterval
from nozzleshock.profile import ratio_I
from nozzleshock.states import hp_mach_bound, mach_ratio_downstream

RESULTS = {}
TITLES = {
    1: "Rankine-Hugoniot suite",
    2: "HP convergence to the limiting shock",
    3: "HP boundary case of the location formula",
    4: "HB non-convergence (plateau at v*)",
    5: "VB convergence and location formula",
    6: "VP root structure",
    7: "quadrature vs shooting oracle",
    8: "ratio limits",
    9: "monotonicity over 50 random configs",
    10: "byte determinism of sweeps",
}

HP_PARAMS = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3]


def record(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {TITLES[n]} | {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


# ---------------------------------------------------------------------------


def test_criterion_01_rankine_hugoniot():
    rng = np.random.default_rng(1)
    worst = {"FullEuler": 0.0, "MassBernoulli": 0.0, "MassMomentum": 0.0}
    worst_ratio = 0.0
    entropy_ok = True
    for model, jump in (("HP", "FullEuler"), ("HB", "MassBernoulli"), ("VB", "MassMomentum")):
        for _ in range(100):
            g = float(rng.uniform(1.01, 2.99))
            top = 2 * g / (g - 1) if jump == "FullEuler" else 10.0
            M0sq = 1.0 + float(rng.uniform(1e-3, 0.999)) * (min(top, 10.0) - 1.0)
            pair = build_pair(model, g, M0sq=M0sq)
            worst[jump] = max(worst[jump], max(pair.residuals().values()))
            entropy_ok &= pair.p1 > pair.p0 and pair.M1 < 1.0 < pair.M0
            if jump == "FullEuler":
                worst_ratio = max(worst_ratio, abs(pair.q1 - mach_ratio_downstream(g, M0sq)))
    ok = max(worst.values()) < 1e-12 and worst_ratio < 1e-10 and entropy_ok
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    record(1, ok, f"max residual {detail}; Mach-ratio gap {worst_ratio:.1e}")


def test_criterion_02_hp_convergence():
    m = reduce(build_pair("HP", 1.4, M0sq=1.2), "HP")
    res = run_sweep(m, HP_PARAMS)
    xs = res.limit.x_s
    g, M0sq = 1.4, 1.2
    formula = (g + 1) / (2 * (g - 1)) * (g * M0sq - 1) / (g * M0sq + 1)
    l1 = [p.l1_to_limit for p in res.points]
    mid = res.points[-1].midpoint_x
    ok = (all(p.ok for p in res.points) and abs(xs - formula) < 1e-12
          and abs(mid - xs) < 2e-2 and all(b < a for a, b in zip(l1, l1[1:])))
    record(2, ok, f"X_shp={xs:.6f}, midpoint(1e-3)={mid:.6f}, "
                  f"L1={', '.join(f'{v:.3g}' for v in l1)}")


def test_criterion_03_hp_boundary():
    g = 1.4
    bound = (3 * g - 1) / (g * (3 - g))
    at = limit_location("HP", build_pair("HP", g, M0sq=bound)).x_s
    try:
        limit_location("HP", build_pair("HP", g, M0sq=bound * (1 + 1e-3)))
        flagged = False
    except XOutOfUnitInterval:
        flagged = True
    ok = abs(at - 1.0) < 1e-12 and flagged and bound == hp_mach_bound(g)
    record(3, ok, f"x_s at bound = {at!r}, beyond bound flagged: {flagged}")


def test_criterion_04_hb_nonconvergence():
    m = reduce(build_pair("HB", 1.4, q0=1.5), "HB")
    res = run_sweep(m, HP_PARAMS)
    a0 = m.alpha_limit
    span = m.w_out - m.w_in
    in_bracket = all(a0 < p.alpha.alpha < p.param * span + a0 for p in res.points)
    last = res.points[-1]
    vs = m.critical_point().w_star
    margin = 0.5 * min(vs - m.w_in, m.w_out - vs)
    ok = in_bracket and last.plateau_measure > 0.8 and last.best_step_l1 > margin
    record(4, ok, f"alpha in bracket for all kappa: {in_bracket}; plateau(1e-3)="
                  f"{last.plateau_measure:.4f}; min step L1={last.best_step_l1:.4f} > {margin:.4f}")


def test_criterion_05_vb_convergence():
    pair = build_pair("VB", 1.4, q0=1.5)
    parts, ok = [], True
    for delta in (0.5, 1.0, 2.0):
        m = reduce(pair, "VB", delta)
        res = run_sweep(m, [1e-1, 1e-2, 1e-3, 1e-4])
        mid = res.points[-1].midpoint_x
        prim, mach = vb_location(pair, delta)
        ok &= all(p.ok for p in res.points) and abs(mid - prim) < 1e-2 and abs(prim - mach) < 1e-12
        parts.append(f"d={delta:g}: mid {mid:.5f} vs X {prim:.5f}")
    # delta = 0 drops the power factor exactly
    g, q0, q1 = 1.4, pair.q0, pair.q1
    bare = 1.0 / (1.0 + 1.0 * (q0 / q1) ** (-g - 1.0) * (q0 ** (g + 1.0) - g)
                  / (g - q1 ** (g + 1.0)))
    ok &= vb_location(pair, 0.0)[0] == bare
    record(5, ok, "; ".join(parts) + "; delta=0 exact")


def test_criterion_06_vp_roots():
    pair = build_pair("VP", 1.4, M0sq=1.2)
    ok = True
    single = {}
    for delta in (0.5, 1.0):
        m = reduce(pair, "VP", delta)
        single[delta] = [len(solve_alpha(m, mu)) for mu in (1e-2, 1e-3)]
        ok &= single[delta] == [1, 1]
    m2 = reduce(pair, "VP", 2.0)
    mus = [1e-2, 5e-3, 2.5e-3, 1.25e-3]
    pairs = [solve_alpha(m2, mu) for mu in mus]
    two = all(len(r) == 2 for r in pairs)
    ok &= two
    a1 = [r[0].log_shift for r in pairs]
    a2 = [abs(r[1].alpha) for r in pairs]
    ok &= all(b < a for a, b in zip(a1, a1[1:])) and all(b > a for a, b in zip(a2, a2[1:]))
    mids = []
    for delta in (0.5, 1.0, 2.0):
        m = reduce(pair, "VP", delta)
        res = run_sweep(m, [1e-2, 1e-3, 1e-4], branch=Branch.NEAR_ZERO)
        xs = res.limit.x_s
        mids.append(abs(res.points[-1].midpoint_x - xs))
    ok &= all(d < 2e-2 for d in mids)
    div = run_sweep(m2, [1e-2, 5e-3, 2.5e-3], branch=Branch.DIVERGENT)
    mp = [p.max_pressure for p in div.points]
    ok &= all(p.ok for p in div.points) and all(b > a for a, b in zip(mp, mp[1:]))
    record(6, ok, f"roots d=0.5/1: {single[0.5]}/{single[1.0]}; d=2 two roots: {two}, "
                  f"|a2|={', '.join(f'{v:.3g}' for v in a2)}; "
                  f"max midpoint gap {max(mids):.2e}; max_p={', '.join(f'{v:.3g}' for v in mp)}")


def test_criterion_07_oracle():
    cases = [("HB", dict(q0=1.5), None, None), ("HP", dict(M0sq=1.2), None, None),
             ("VB", dict(q0=1.5), 0.5, None), ("VB", dict(q0=1.5), 2.0, None),
             ("VP", dict(M0sq=1.2), 0.5, Branch.NEAR_ZERO),
             ("VP", dict(M0sq=1.2), 2.0, Branch.NEAR_ZERO)]
    worst_a = worst_l = 0.0
    ok = True
    for name, kw, delta, branch in cases:
        m = reduce(build_pair(name, 1.4, **kw), name, delta)
        for param in (1e-1, 1e-2, 1e-3):
            rep = oracle_compare(m, param, DEFAULT_SPEC, branch)
            worst_a = max(worst_a, rep["alpha_rel_gap"])
            worst_l = max(worst_l, rep["profile_linf_gap"])
            ok &= rep["alpha_rel_gap"] < 1e-6 and rep["profile_linf_gap"] < 1e-5
    record(7, ok, f"{len(cases) * 3} cases; max alpha rel gap {worst_a:.1e}; "
                  f"max profile Linf gap {worst_l:.1e}")


def test_criterion_08_ratio_limits():
    params = [1e-2, 1e-3, 1e-4]
    hp = reduce(build_pair("HP", 1.4, M0sq=1.2), "HP")
    A, p0, p1 = hp.pair.A, hp.pair.p0, hp.pair.p1
    target = (A - 2 * p0) / (A - 2 * p1)
    pm = 0.5 * (p0 + p1)
    I_hp = [ratio_I(hp, k, solve_alpha(hp, k)[0], pm) for k in params]
    rel = {"HP": abs(I_hp[-1] / target - 1)}
    ok = rel["HP"] < 0.02
    pair = build_pair("VB", 1.4, q0=1.5)
    g, q0, q1 = 1.4, pair.q0, pair.q1
    fp = lambda u: 1 - g * u ** (-g - 1)
    for delta in (0.5, 1.0, 2.0):
        m = reduce(pair, "VB", delta)
        tgt = -fp(q1) / fp(q0) * (q1 / q0) ** delta
        um = 0.5 * (q0 + q1)
        I = [ratio_I(m, mu, solve_alpha(m, mu)[0], um) for mu in params]
        rel[f"VB{delta:g}"] = abs(I[-1] / tgt - 1)
        ok &= rel[f"VB{delta:g}"] < 0.02
    record(8, ok, "relative gaps at 1e-4: " + ", ".join(f"{k} {v:.2e}" for k, v in rel.items()))


def _random_config(rng):
    name = str(rng.choice(["HB", "HP", "VB", "VP"]))
    g = float(rng.uniform(1.05, 2.9))
    top = {"HP": hp_mach_bound(g), "VP": 2 * g / (g - 1)}.get(name, 6.0)
    M0sq = 1.0 + float(rng.uniform(0.02, 0.95)) * (min(top, 6.0) - 1.0)
    delta = float(rng.uniform(0.0, 3.0)) if name in ("VB", "VP") else None
    param = float(10 ** rng.uniform(-4.0, -0.5))
    return name, g, M0sq, delta, param


def test_criterion_09_monotonicity():
    rng = np.random.default_rng(2024)
    profiles = violations = skipped = 0
    for _ in range(50):
        name, g, M0sq, delta, param = _random_config(rng)
        m = reduce(build_pair(name, g, M0sq=M0sq), name, delta)
        try:
            roots = solve_alpha(m, param)
        except NoRootInDomain:
            skipped += 1  # no profile exists, so none is emitted
            continue
        for r in roots:
            prof = reconstruct(m, param, r)
            profiles += 1
            good = (np.all(m.direction * np.diff(prof.w) >= 0)
                    and np.all(m.direction * np.diff(prof.knots_w) >= 0)
                    and np.all(np.diff(prof.x) > 0))
            violations += not good
    record(9, violations == 0 and profiles > 0,
           f"{profiles} profiles from 50 configs ({skipped} without a root), "
           f"{violations} violations")


def test_criterion_10_determinism():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        cfg = tmp / "sweep.cfg"
        cfg.write_text("model = HP\ngamma = 1.4\nM0sq = 1.2\n"
                       "params = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3]\n")
        codes = [cli_main(["sweep", "--config", str(cfg), "--out", str(tmp / d)])
                 for d in ("a", "b")]
        files = sorted(p.name for p in (tmp / "a").iterdir() if p.name != "timings.json")
        same = [(tmp / "a" / n).read_bytes() == (tmp / "b" / n).read_bytes() for n in files]
        kinds = {n.rsplit(".", 1)[1] for n in files}
    ok = codes == [0, 0] and all(same) and {"csv", "svg", "json"} <= kinds
    record(10, ok, f"{sum(same)}/{len(files)} files byte-identical (timings.json excluded)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
