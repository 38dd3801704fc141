"""Potential functions, their saddle points and the finite-N limit checks.

With s = (n-2)/M and xi = 2 pi i + u,

    Phi(z) = [Li2(e^{u-(z+s)xi}) + Li2(e^{z xi}) - Li2(e^{u+z xi})
              - Li2(e^{(z+s)xi})] / xi - u z,

and Phi^{(2)} is the s = 0 case.  Critical points solve a cubic in
w = e^{z xi}; for n = 2 the roots are 1 and e^{+-phi(u)}.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import phi_u
from .errors import AmbiguousRoot, OnBranchCut
from .invariant import ModelParams
from .polylog import li2, log1m, on_cut
from .quadrature import richardson_limit, solve_cubic


def _xi(u):
    return complex(u, 2 * math.pi)


def _check_cut(*ws):
    for w in ws:
        if np.any(on_cut(w)):
            raise OnBranchCut("a dilogarithm argument of the potential lies on [1, oo)")


def _potential(z, u, shift):
    xi = _xi(u)
    z = np.asarray(z, dtype=complex)
    a1 = np.exp(u - (z + shift) * xi)
    w = np.exp(z * xi)
    a3 = np.exp(u + z * xi)
    a4 = np.exp((z + shift) * xi)
    _check_cut(a1, w, a3, a4)
    out = (li2(a1) + li2(w) - li2(a3) - li2(a4)) / xi - u * z
    return complex(out) if out.ndim == 0 else out


def phi2(z, u):
    xi = _xi(u)
    z = np.asarray(z, dtype=complex)
    a1, a3 = np.exp(u - xi * z), np.exp(u + xi * z)
    _check_cut(a1, a3)
    out = (li2(a1) - li2(a3)) / xi - u * z
    return complex(out) if out.ndim == 0 else out


def phiN(z, params):
    """Phi^{(n)}_M with the shift (n-2)/M."""
    return _potential(z, params.u, params.shift)


def _derivative(z, u, shift):
    xi = _xi(u)
    z = np.asarray(z, dtype=complex)
    a1 = np.exp(u - (z + shift) * xi)
    w = np.exp(z * xi)
    a3 = np.exp(u + z * xi)
    a4 = np.exp((z + shift) * xi)
    _check_cut(a1, w, a3, a4)
    out = log1m(a1) - log1m(w) + log1m(a3) + log1m(a4) - u
    return complex(out) if out.ndim == 0 else out


def phiN_derivative(z, params):
    """dPhi/dz; the saddle condition is phiN_derivative(z) = 0."""
    return _derivative(z, params.u, params.shift)


def phi2_derivative(z, u):
    return _derivative(z, u, 0.0)


def _second(z, u, shift):
    xi = _xi(u)
    z = np.asarray(z, dtype=complex)
    a1 = np.exp(u - (z + shift) * xi)
    w = np.exp(z * xi)
    a3 = np.exp(u + z * xi)
    a4 = np.exp((z + shift) * xi)
    out = xi * (a1 / (1 - a1) + w / (1 - w) - a3 / (1 - a3) - a4 / (1 - a4))
    return complex(out) if out.ndim == 0 else out


def phiN_second(z, params):
    return _second(z, params.u, params.shift)


def phi2_second(z, u):
    return _second(z, u, 0.0)


@dataclass(frozen=True)
class PotentialEval:
    z: complex
    phi: complex
    dphi: complex
    d2phi: complex


def potential_eval(z, params):
    z = complex(z)
    return PotentialEval(z, phiN(z, params), phiN_derivative(z, params), phiN_second(z, params))


@dataclass(frozen=True)
class SaddleData:
    w: complex
    z: complex
    residual: float
    a: complex
    b: complex


def cubic_coefficients(params):
    a = math.exp(params.u)
    b = cmath.exp(params.shift * params.xi)
    return a * b * b, -(b * b + a * a * b), a * a + b, -a


def z_from_w(w, xi):
    """z with e^{z xi} = w and Im(z xi) in (0, 2 pi]."""
    lw = cmath.log(w)
    if lw.imag <= 0:
        lw += 2j * math.pi
    return lw / xi


def z2(u):
    """The n = 2 saddle (phi(u) + 2 pi i)/xi."""
    return (phi_u(u) + 2j * math.pi) / _xi(u)


def solve_saddle(params):
    """Saddle of Phi^{(n)}_M: the cubic root continuously connected to e^{phi(u)}."""
    coeffs = cubic_coefficients(params)
    roots = solve_cubic(*coeffs, full_output=True)
    ref = cmath.exp(phi_u(params.u))
    dist = sorted((abs(r.root - ref), i) for i, r in enumerate(roots))
    if abs(dist[0][0] - dist[1][0]) < 1e-12:
        raise AmbiguousRoot(f"two cubic roots are equidistant from {ref!r}")
    w = roots[dist[0][1]].root
    c3, c2, c1, c0 = coeffs
    residual = abs(((c3 * w + c2) * w + c1) * w + c0)
    a, b = math.exp(params.u), cmath.exp(params.shift * params.xi)
    return SaddleData(w=w, z=z_from_w(w, params.xi), residual=residual, a=a, b=b)


def phi_second_at_saddle(params):
    return phiN_second(solve_saddle(params).z, params)


def diff1_target(z, n, u):
    """(n-2)(log(1 - e^{u - z xi}) + log(1 - e^{z xi})), principal logs."""
    xi = _xi(u)
    return (n - 2) * complex(log1m(cmath.exp(u - z * xi)) + log1m(cmath.exp(z * xi)))


def diff1_sequence(z, n, u, Ns):
    """M (Phi^{(n)}_M(z) - Phi^{(2)}(z)) for each N."""
    out = []
    base = phi2(z, u)
    for N in Ns:
        p = ModelParams(N, n, u)
        out.append(p.M * (phiN(z, p) - base))
    return out


def diff1_limit(z, n, u, Ns):
    """Richardson extrapolation of :func:`diff1_sequence` in h = 1/M."""
    vals = diff1_sequence(z, n, u, Ns)
    return richardson_limit([1 / (N + n - 2) for N in Ns], vals)


def diff2_sequence(params_sequence):
    """|M (Phi^{(2)}(z_M) - Phi^{(2)}(z^{(2)}))| along the sequence."""
    out = []
    for p in params_sequence:
        zN = solve_saddle(p).z
        out.append(abs(p.M * (phi2(zN, p.u) - phi2(z2(p.u), p.u))))
    return out


def diff2_limit_check(params_sequence):
    """Largest value over the second half of :func:`diff2_sequence`."""
    vals = diff2_sequence(params_sequence)
    return max(vals[len(vals) // 2:])
