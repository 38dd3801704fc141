"""The acceptance suite: eleven numbered checks, each returning a CriterionResult.

Run through ``homfly41 verify`` or ``pytest tests/test_acceptance.py``.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import asymptotic_report
from .descent import fitted_constants, fsa_ratio
from .harness import VOLUME_41, pole_domain_check, volume_evidence
from .invariant import (ModelParams, homfly_exact, homfly_qdilog_form,
                        residue_reconstruction)
from .qdilog import GammaParam, log_qdilog
from .saddle import (diff1_limit, diff1_target, diff2_sequence, phiN, solve_saddle, z2)
from .quadrature import richardson_limit

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    parts: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {mark}  {self.title}: {self.detail} ({self.seconds:.2f} s)"


def _rel(a, b):
    return abs(a - b) / abs(b)


def criterion_1():
    ones = [homfly_exact(ModelParams(1, n, 0.5)).value for n in (2, 4, 6)]
    five = homfly_exact(ModelParams(2, 2, 0.0)).value
    thirteen = homfly_exact(ModelParams(3, 2, 0.0)).value
    ok_ones = all(v == 1 for v in ones)
    e5, e13 = _rel(five, 5), _rel(thirteen, 13)
    return ok_ones and e5 < 1e-10 and e13 < 1e-10, \
        f"J_1 = {[complex(v) for v in ones]}, rel err 5: {e5:.1e}, 13: {e13:.1e}", \
        {"ones": ok_ones, "five": e5 < 1e-10, "thirteen": e13 < 1e-10}


def criterion_2():
    v2 = volume_evidence(2, 2000)
    v4 = volume_evidence(4, 1000)
    e2, e4 = abs(v2 - VOLUME_41) / VOLUME_41, abs(v4 - VOLUME_41) / VOLUME_41
    return e2 < 0.02 and e4 < 0.05, \
        f"n=2,N=2000: {v2:.5f} ({e2:.2%}, need 2%); n=4,N=1000: {v4:.5f} ({e4:.2%}, need 5%)", \
        {"n2": e2 < 0.02, "n4": e4 < 0.05}


def functional_equation_samples(count=100, seed=SEED):
    """Random (z, gamma) with |Re z| < pi - 2 Re gamma, gamma from (M, u) on the model family."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        M = int(rng.integers(4, 61))
        u = float(rng.uniform(0.0, 0.95))
        g = GammaParam((2 * math.pi - 1j * u) / (2 * M))
        bound = math.pi - 2 * g.gamma.real
        z = complex(rng.uniform(-bound, bound), rng.uniform(-1.0, 1.0))
        out.append((z, g))
    return out


def functional_equation_residual(z, g):
    gm = g.gamma
    lp, lm = log_qdilog(np.array([z + gm, z - gm]), g)
    return abs((1 + np.exp(1j * z)) * np.exp(lp - lm) - 1)


def criterion_3():
    worst = max(functional_equation_residual(z, g) for z, g in functional_equation_samples())
    return worst < 1e-7, f"max relative residual {worst:.1e} over 100 samples (need 1e-7)", {}


def criterion_4():
    worst = 0.0
    for n in (2, 4):
        for u in (0.3, 0.5):
            for N in range(1, 17):
                p = ModelParams(N, n, u)
                worst = max(worst, _rel(homfly_qdilog_form(p), homfly_exact(p).value))
    return worst < 1e-6, f"max relative difference {worst:.1e} (need 1e-6)", {}


def criterion_5():
    factors = {}
    for N in (3, 4, 5):
        p = ModelParams(N, 2, 0.5)
        factors[N] = homfly_exact(p).value / residue_reconstruction(p)
    err = abs(factors[4] - 1)
    spread = max(abs(f - factors[4]) for f in factors.values())
    ok = err < 1e-5
    if not ok:
        # a constant correction is acceptable if it does not depend on N
        ok = spread < 1e-5 * abs(factors[4])
    return ok, f"exact/residue factor at N=4: {factors[4]:.12f}, spread over N=3,4,5: {spread:.1e}", \
        {"factor": factors[4]}


def saddle_grid():
    us = [0.1, 0.3, 0.5, 0.7, 0.9]
    return [ModelParams(N, n, u) for n in (2, 4, 6) for u in us for N in (20, 100, 500, 2000)]


def criterion_6():
    resid = max(solve_saddle(p).residual for p in saddle_grid())
    zerr = abs(solve_saddle(ModelParams(100, 2, 0.5)).z - z2(0.5))
    d = [abs(solve_saddle(ModelParams(N, 4, 0.5)).z - z2(0.5)) for N in (100, 200, 400)]
    ratios = [d[1] / d[0], d[2] / d[1]]
    ok = resid < 1e-10 and zerr < 1e-10 and all(0.4 <= r <= 0.6 for r in ratios)
    return ok, (f"max cubic residual {resid:.1e}, |z - z2| = {zerr:.1e}, "
                f"doubling ratios {ratios[0]:.4f}, {ratios[1]:.4f}"), {}


def positivity_grid():
    return list(np.linspace(0.05, 0.96, 22)[1:-1])


def criterion_7():
    vals = []
    for n in (2, 4):
        for u in positivity_grid():
            p = ModelParams(500, n, float(u))
            vals.append(phiN(solve_saddle(p).z, p).real)
    return min(vals) > 0, f"min Re Phi(z_N) = {min(vals):.4g} over 40 points", {}


def diff1_points():
    """Ten interior points of D' (u = 0.5) away from the branch cuts."""
    return [complex(x, y) for x in (0.35, 0.45, 0.55, 0.65, 0.75) for y in (-0.05, 0.05)]


def criterion_8():
    Ns = [200, 400, 800, 1600]
    e1 = max(abs(diff1_limit(z, 4, 0.5, Ns) - diff1_target(z, 4, 0.5)) for z in diff1_points())
    d2 = {}
    for u in (0.3, 0.5):
        ps = [ModelParams(N, 4, u) for N in (100, 200, 400, 800)]
        seq = diff2_sequence(ps)
        lim = abs(richardson_limit([1 / p.M for p in ps], seq))
        d2[u] = (seq, lim)
    dec = all(all(b < a for a, b in zip(s, s[1:])) for s, _ in d2.values())
    lim = max(v for _, v in d2.values())
    ok = e1 < 1e-4 and dec and lim < 1e-3
    return ok, (f"diff1 max error {e1:.1e} (need 1e-4); diff2 decreasing: {dec}, "
                f"extrapolated limit {lim:.1e} (need 1e-3), last raw value "
                f"{d2[0.5][0][-1]:.3g}"), {"diff1": e1 < 1e-4, "diff2": dec and lim < 1e-3}


def criterion_9():
    Ns = (500, 1000, 2000, 4000)
    bounds = {2: 0.05, 4: 0.15}
    ok, worst = True, {}
    for n, bound in bounds.items():
        for u in (0.3, 0.5, 0.9):
            dev = [abs(asymptotic_report(ModelParams(N, n, u)).ratio_mag - 1) for N in Ns]
            mono = all(b < a for a, b in zip(dev, dev[1:]))
            ok &= mono and dev[-1] < bound
            worst[n] = max(worst.get(n, 0.0), dev[-1])
    return ok, f"||ratio|-1| at N=4000: n=2 {worst[2]:.1e} (need 0.05), n=4 {worst[4]:.1e} (need 0.15)", {}


def criterion_10():
    Ns = (50, 100, 200)
    rs = [fsa_ratio(ModelParams(N, 2, 0.5)) for N in Ns]
    errs = [abs(r - 1) for r in rs]
    cs = fitted_constants(Ns, rs, n=2)
    dec = all(b < a for a, b in zip(errs, errs[1:]))
    stable = max(cs) / min(cs) < 2
    return dec and stable, \
        f"|ratio-1| = {', '.join(f'{e:.2e}' for e in errs)}; c = {', '.join(f'{c:.3f}' for c in cs)}", {}


def criterion_11():
    bad = []
    for n in (2, 4, 6):
        for a in range(n - 1):
            for N in (20, 50):
                total, inside = pole_domain_check(N, n, a, 0.5)
                if (inside == total) != (a >= n - 2):
                    bad.append((n, a, N))
    return not bad, f"{'no' if not bad else len(bad)} mismatches on 18 grid points", {}


CRITERIA = {
    1: ("exact-sum anchors", criterion_1),
    2: ("volume-conjecture evidence", criterion_2),
    3: ("quantum dilogarithm functional equation", criterion_3),
    4: ("S_gamma form vs exact sum", criterion_4),
    5: ("residue reconstruction", criterion_5),
    6: ("saddle machinery", criterion_6),
    7: ("positivity at the saddle", criterion_7),
    8: ("finite-N potential limits", criterion_8),
    9: ("leading asymptotics", criterion_9),
    10: ("saddle-point approximation engine", criterion_10),
    11: ("pole-domain criterion", criterion_11),
}


def run_criterion(number):
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    passed, detail, parts = fn()
    return CriterionResult(number, title, bool(passed), detail, parts, time.perf_counter() - t0)


def run_all(numbers=None):
    return [run_criterion(k) for k in (numbers or sorted(CRITERIA))]
