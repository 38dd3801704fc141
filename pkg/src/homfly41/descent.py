"""Numeric saddle-point integrals of exp(M Phi) and their closed forms."""

import cmath
import math

import numpy as np

from .quadrature import DEFAULT_CONFIG, ContourPath, Line, integrate_path
from .saddle import phiN, phiN_second, solve_saddle


def descent_direction(d2phi):
    """Unit d with d2phi * d^2 real and negative."""
    return cmath.exp(-0.5j * cmath.phase(-d2phi))


def _boundary_distance(z0, d, params):
    """Parameter t > 0 where z0 + t d leaves 0 < Im(z xi) < 2 pi (1 - shift)."""
    xi = params.xi
    a, b = (z0 * xi).imag, (d * xi).imag
    top = 2 * math.pi * (1 - params.shift)
    if b > 0:
        return (top - a) / b
    if b < 0:
        return -a / b
    return math.inf


def descent_path(params, eps=0.05, delta=1e-3, rho=None):
    """eps -> z_M - rho d -> z_M + rho d -> 1 - shift - delta.

    The middle leg is the steepest-descent line through the saddle.  The
    right end sits next to the branch point 1 - shift, which lies well
    below the saddle; the real axis around 0.9 does not (Re Phi there
    exceeds the saddle value), so ending at 1 - eps would let the endpoint
    dominate.  The initial panel count on the middle leg follows the
    Gaussian width 1/sqrt(M |Phi''|).
    """
    sd = solve_saddle(params)
    d2 = phiN_second(sd.z, params)
    d = descent_direction(d2)
    if rho is None:
        reach = min(_boundary_distance(sd.z, d, params), _boundary_distance(sd.z, -d, params))
        rho = min(0.25, 0.5 * reach)
    width = 1 / math.sqrt(params.M * abs(d2))
    panels = max(4, int(math.ceil(2 * rho / width)))
    right = 1 - params.shift - delta
    return ContourPath((
        Line(complex(eps), sd.z - rho * d, panels=4),
        Line(sd.z - rho * d, sd.z + rho * d, panels=panels),
        Line(sd.z + rho * d, complex(right), panels=4),
    )), sd, d2


def steepest_descent_integral(params, cfg=DEFAULT_CONFIG, **path_options):
    """int exp(M (Phi(z) - Phi(z_M))) dz along :func:`descent_path`.

    The saddle value is factored out; multiply by exp(M Phi(z_M)) to get
    the raw integral.  Returns (scaled integral, saddle z, Phi(z_M), Phi'').
    """
    path, sd, d2 = descent_path(params, **path_options)
    p0 = phiN(sd.z, params)
    M = params.M
    val = integrate_path(lambda z: np.exp(M * (phiN(z, params) - p0)), path, cfg)
    return val, sd.z, p0, d2


def gaussian_closed_form(M, d2):
    """sqrt(2 pi / (M (-Phi''))) with the principal root."""
    return cmath.sqrt(2 * math.pi / (M * -d2))


def fsa_ratio(params, cfg=DEFAULT_CONFIG, **path_options):
    """Quadrature over closed form; tends to 1 + O(1/M)."""
    val, _, _, d2 = steepest_descent_integral(params, cfg, **path_options)
    return val / gaussian_closed_form(params.M, d2)


def fitted_constants(Ns, ratios, n=2):
    """c = M |ratio - 1| for each point, which is stable if the error is c/M."""
    return [(N + n - 2) * abs(r - 1) for N, r in zip(Ns, ratios)]


def cauchy_halves(params, eps, cfg=DEFAULT_CONFIG, height=0.1):
    """Integrals of exp(M (Phi - Phi(z_M))) over C_+(eps) and C_-(eps)."""
    u = params.u
    up = -u / (2 * math.pi) * height + 1j * height
    lo, hi = eps, 1 - eps
    c_plus = ContourPath.polygon(hi, hi + up, lo + up, lo, panels=4)
    c_minus = ContourPath.polygon(lo, lo - up, hi - up, hi, panels=4)
    p0 = phiN(solve_saddle(params).z, params)
    M = params.M
    f = lambda z: np.exp(M * (phiN(z, params) - p0))  # noqa: E731
    return integrate_path(f, c_plus, cfg), integrate_path(f, c_minus, cfg)
