"""Principal-branch dilogarithm Li2 on C minus [1, oo).

Strategy: points outside the unit disk are inverted, points in the right
half of the disk are reflected through z -> 1 - z, and whatever remains is
summed with the Bernoulli series in u = -log(1 - z), which converges fast
for |u| well below 2*pi.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgument, OnBranchCut

PI2_6 = math.pi ** 2 / 6
CUT_TOL = 1e-14


def _bernoulli_coefficients(count):
    # B_k / (k+1)! with B_1 = -1/2
    b = [Fraction(1)]
    for m in range(1, count):
        s = sum(Fraction(math.comb(m + 1, k)) * b[k] for k in range(m))
        b.append(-s / (m + 1))
    return np.array([float(b[k] / math.factorial(k + 1)) for k in range(count)])


_BCOEF = _bernoulli_coefficients(40)


def log1m(w):
    """log(1 - w), principal branch, accurate when |w| is tiny."""
    w = np.asarray(w, dtype=complex)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.log(1 - w)
    small = np.abs(w) < 1e-3
    if small.any():
        ws = w[small]
        acc = np.zeros_like(ws)
        p = np.ones_like(ws)
        for k in range(1, 8):
            p = p * ws
            acc = acc - p / k
        out[small] = acc
    return out[0] if scalar else out


def _li2_disk(w):
    # |w| <= 1 and Re w <= 1/2
    u = -log1m(w)
    u2 = u * u
    # odd Bernoulli numbers past B_1 vanish, so Horner runs over even indices
    acc = np.zeros_like(u)
    for k in range(len(_BCOEF) - 2, 1, -2):
        acc = acc * u2 + _BCOEF[k]
    return u + _BCOEF[1] * u2 + acc * u2 * u


def _li2_unit(w):
    # |w| <= 1
    out = np.empty_like(w)
    right = w.real > 0.5
    if (~right).any():
        out[~right] = _li2_disk(w[~right])
    if right.any():
        v = w[right]
        one_minus = 1 - v
        with np.errstate(divide="ignore", invalid="ignore"):
            prod = np.log(v) * np.log(one_minus)
        prod = np.where(one_minus == 0, 0, prod)
        out[right] = PI2_6 - prod - _li2_disk(one_minus)
    return out


def on_cut(z):
    z = np.asarray(z, dtype=complex)
    return (np.abs(z.imag) <= CUT_TOL) & (z.real >= 1)


def li2(z):
    """Vectorized principal Li2; on the cut the limit from above is returned."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if not np.all(np.isfinite(z)):
        raise InvalidArgument("Li2 argument must be finite")
    out = np.empty_like(z)
    cut = on_cut(z)
    inside = (np.abs(z) <= 1) & ~cut
    outside = ~inside & ~cut

    if inside.any():
        out[inside] = _li2_unit(z[inside])
    if outside.any():
        v = z[outside]
        lg = np.log(-v)
        out[outside] = -_li2_unit(1 / v) - PI2_6 - 0.5 * lg * lg
    if cut.any():
        x = z[cut].real
        res = np.empty(x.shape, dtype=complex)
        one = x == 1
        res[one] = PI2_6
        xs = x[~one]
        lx = np.log(xs)
        res[~one] = -_li2_unit((1 / xs).astype(complex)) + 2 * PI2_6 - 0.5 * lx * lx + 1j * math.pi * lx
        out[cut] = res
    return out[0] if scalar else out


@dataclass(frozen=True)
class BranchedValue:
    value: complex
    on_cut: bool


def dilog(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidArgument(f"Li2 argument must be finite, got {z!r}")
    return BranchedValue(complex(li2(z)), bool(on_cut(z)))


def dilog_exp_derivative(mu):
    """-log(1 - e^mu), the derivative of Li2(e^mu) with respect to mu."""
    w = np.exp(complex(mu))
    if abs(w.imag) <= CUT_TOL and w.real >= 1 - CUT_TOL:
        raise OnBranchCut(f"e^mu = {w!r} lies on [1, oo)")
    return complex(-log1m(w))
