import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from homfly41.errors import DegenerateDegree, NoConvergence, SingularSample, UnstableDifferentiation
from homfly41.polylog import li2
from homfly41.quadrature import (DEFAULT_CONFIG, Arc, ContourPath, Line, QuadratureConfig,
                                 differentiate1, differentiate2, integrate_path,
                                 richardson_limit, solve_cubic)

finite = st.floats(-2, 2, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def test_constant_on_segment():
    assert abs(integrate_path(lambda z: np.ones_like(z), Line(0j, 1 + 1j)) - (1 + 1j)) < 1e-14


def test_square_on_unit_interval():
    assert abs(integrate_path(lambda z: z * z, Line(0j, 1 + 0j)) - 1 / 3) < 1e-14


def test_inverse_on_unit_circle():
    circle = ContourPath((Arc(0j, 1.0, 0.0, 2 * math.pi, panels=4),))
    assert abs(integrate_path(lambda z: 1 / z, circle) - 2j * math.pi) < 1e-12


def test_vector_valued_integrand():
    out = integrate_path(lambda z: np.stack([z, z * z], axis=1), Line(0j, 2 + 0j))
    assert np.allclose(out, [2, 8 / 3], rtol=1e-14)


def test_gaussian():
    N = 100
    val = integrate_path(lambda z: np.exp(-N * (z - 0.5) ** 2), Line(-4.5 + 0j, 5.5 + 0j, panels=20))
    assert abs(val - math.sqrt(math.pi / N)) < 1e-10


def test_singular_sample_reports_location():
    with pytest.raises(SingularSample) as exc:
        integrate_path(lambda z: np.where(abs(z - 0.5) < 0.3, np.nan, 1.0), Line(0j, 1 + 0j))
    assert exc.value.location is not None


def test_no_convergence_carries_estimate():
    cfg = QuadratureConfig(max_depth=2)
    with pytest.raises(NoConvergence) as exc:
        integrate_path(lambda z: np.sin(200 * z), Line(0j, 10 + 0j), cfg)
    assert exc.value.estimate is not None and exc.value.error > 0


def test_full_output():
    res = integrate_path(lambda z: np.exp(-z), Line(0j, 30 + 0j), full_output=True)
    assert abs(res.value - (1 - math.exp(-30))) < 1e-13
    assert res.end_magnitude == pytest.approx(math.exp(-30))
    assert res.panels >= 1 and res.evaluations >= 15


def test_disconnected_path_rejected():
    with pytest.raises(ValueError):
        ContourPath((Line(0j, 1 + 0j), Line(2 + 0j, 3 + 0j)))


@given(cplx, cplx, cplx)
def test_path_additivity(a, b, c):
    assume(abs(a - b) > 1e-3 and abs(b - c) > 1e-3)
    f = lambda z: np.exp(z) * np.cos(2 * z)  # noqa: E731
    whole = integrate_path(f, ContourPath.polygon(a, b, c))
    parts = integrate_path(f, Line(a, b)) + integrate_path(f, Line(b, c))
    tol = 2 * DEFAULT_CONFIG.abs_tol + 1e-10 * abs(whole)
    assert abs(whole - parts) <= max(tol, 1e-10)


@given(cplx, cplx, cplx)
def test_path_reversal(a, b, c):
    assume(abs(a - b) > 1e-3 and abs(b - c) > 1e-3)
    f = lambda z: 1 / (z - 5)  # noqa: E731
    path = ContourPath.polygon(a, b, c)
    fwd, back = integrate_path(f, path), integrate_path(f, path.reversed())
    assert abs(fwd + back) <= DEFAULT_CONFIG.abs_tol + 1e-10 * abs(fwd)


@pytest.mark.parametrize("coeffs, expected", [
    ((1, 0, 0, -1), [1, cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3)]),
    ((1, -6, 11, -6), [1, 2, 3]),
    ((1, -1, 1, -1), [1, 1j, -1j]),
])
def test_cubic_examples(coeffs, expected):
    roots = solve_cubic(*coeffs)
    for e in expected:
        assert min(abs(r - e) for r in roots) < 1e-12


def test_cubic_degenerate():
    with pytest.raises(DegenerateDegree):
        solve_cubic(0, 1, 2, 3)


def test_cubic_full_output_residual():
    for r in solve_cubic(2, 3j, -1, 4 + 1j, full_output=True):
        assert r.residual == pytest.approx(abs(((2 * r.root + 3j) * r.root - 1) * r.root + 4 + 1j))
        assert r.iterations >= 0


@given(st.builds(complex, st.floats(0.1, 3), st.floats(-3, 3)), cplx, cplx, cplx)
def test_cubic_vieta(c3, c2, c1, c0):
    r = solve_cubic(c3, c2, c1, c0)
    for got, want in [(sum(r), -c2 / c3),
                      (r[0] * r[1] + r[0] * r[2] + r[1] * r[2], c1 / c3),
                      (r[0] * r[1] * r[2], -c0 / c3)]:
        assert abs(got - want) <= 1e-9 * max(1.0, abs(want))
    for x in r:
        assert abs(((c3 * x + c2) * x + c1) * x + c0) < 1e-10 * max(1, abs(x) ** 3 * abs(c3))


def test_differentiate2_examples():
    assert abs(differentiate2(np.exp, 0j) - 1) < 1e-8
    assert abs(differentiate2(lambda z: z ** 3, 1 + 0j) - 6) < 1e-8
    # d^2/dz^2 Li2(e^z) = d/dz[-log(1 - e^z)] = e^z / (1 - e^z)
    want = math.exp(-1) / (1 - math.exp(-1))
    assert abs(differentiate2(lambda z: li2(np.exp(z)), -1 + 0j) - want) < 1e-8 * want


@given(st.integers(2, 6), st.lists(st.floats(-2, 2), min_size=7, max_size=7), cplx)
def test_differentiate2_polynomials(deg, coeffs, z0):
    c = np.array(coeffs[:deg + 1], dtype=complex)
    p = np.polynomial.Polynomial(c)
    want = p.deriv(2)(z0)
    got = differentiate2(p, z0, h0=0.5)
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_differentiate1():
    assert abs(differentiate1(np.sin, 0.3 + 0j) - math.cos(0.3)) < 1e-10


def test_unstable_differentiation():
    with pytest.raises(UnstableDifferentiation):
        differentiate2(lambda z: np.sqrt(z), 0j, h0=0.1)


def test_richardson_limit_polynomial_in_h():
    hs = [1 / 100, 1 / 200, 1 / 400, 1 / 800]
    vals = [3 + 2 * h - 5 * h * h for h in hs]
    assert abs(richardson_limit(hs, vals) - 3) < 1e-12
