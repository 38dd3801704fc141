"""The quantum dilogarithm S_gamma(z) and its companions.

S_gamma(z) = exp( 1/4 * int_{C_R} e^{zt} / (sinh(pi t) sinh(gamma t)) dt/t )

where C_R runs along the real axis from -oo to +oo, detouring above the
origin on a semicircle of radius R.  The integrand is evaluated in the
overflow-free form

    e^{(z - s(pi+gamma)) t} / (t (1 - e^{-2 s pi t}) (1 - e^{-2 s gamma t})),

s = sign(Re t), which is the same function written with decaying
exponentials only.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, OutsideDomain, SingularArgument, SingularRatio
from .polylog import li2
from .quadrature import DEFAULT_CONFIG, Arc, ContourPath, Line, integrate_path

# refuse arguments closer than this to the edge of the strip of definition
EDGE_MARGIN = 0.05
CHUNK = 256


@dataclass(frozen=True)
class GammaParam:
    gamma: complex
    N: int | None = None
    n: int | None = None
    u: float | None = None

    def __post_init__(self):
        g = complex(self.gamma)
        object.__setattr__(self, "gamma", g)
        if not (math.isfinite(g.real) and math.isfinite(g.imag)) or g.real <= 0:
            raise InvalidArgument(f"gamma must have positive real part, got {g!r}")

    @classmethod
    def from_params(cls, N, n, u):
        M = N + n - 2
        if N < 1 or M < 1:
            raise InvalidArgument("N must be a positive integer")
        return cls((2 * math.pi - 1j * u) / (2 * M), N, n, u)


def _as_gamma(g):
    return g if isinstance(g, GammaParam) else GammaParam(g)


@dataclass(frozen=True)
class QDilogDomainCheck:
    z: complex
    admissible: bool


def domain_check(z, g):
    g = _as_gamma(g)
    z = complex(z)
    return QDilogDomainCheck(z, abs(z.real) < math.pi + g.gamma.real)


def default_radius(gamma):
    return 0.5 * min(math.pi / abs(gamma), 1.0)


def _radius(gamma, cfg):
    limit = min(math.pi / abs(gamma), 1.0)
    R = default_radius(gamma) if cfg.radius is None else cfg.radius
    if not 0 < R < limit:
        raise InvalidArgument(f"contour radius {R} must lie in (0, {limit})")
    return R


def _contour(R, left, right):
    return ContourPath((
        Line(complex(-R - left), complex(-R), panels=8),
        Arc(0j, R, math.pi, 0.0, panels=4),
        Line(complex(R), complex(R + right), panels=8),
    ))


def _tail(decay, cfg):
    if cfg.tail_length is not None:
        return cfg.tail_length
    return 40.0 / min(1.0, decay)


def _chunks(z):
    for start in range(0, len(z), CHUNK):
        yield z[start:start + CHUNK]


def log_qdilog(z, g, cfg=DEFAULT_CONFIG):
    """log S_gamma(z), vectorized over ``z``.

    The logarithm returned is the integral itself, so it is a continuous
    function of z rather than a principal value.
    """
    g = _as_gamma(g)
    gamma = g.gamma
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).ravel()
    edge = math.pi + gamma.real - np.abs(z.real)
    if np.any(edge < EDGE_MARGIN):
        bad = z[np.argmin(edge)]
        raise OutsideDomain(f"S_gamma argument {bad!r} violates |Re z| < pi + Re(gamma) "
                            f"with margin {EDGE_MARGIN}")
    R = _radius(gamma, cfg)
    out = np.empty(z.shape, dtype=complex)
    pos = 0
    for zc in _chunks(z):
        right = _tail(math.pi + gamma.real - zc.real.max(), cfg)
        left = _tail(math.pi + gamma.real + zc.real.min(), cfg)
        path = _contour(R, left, right)

        def f(t, zc=zc):
            s = np.where(t.real >= 0, 1.0, -1.0)
            den = t * -np.expm1(-2 * s * math.pi * t) * -np.expm1(-2 * s * gamma * t)
            expo = np.outer(t, zc) - (s * (math.pi + gamma) * t)[:, None]
            return np.exp(expo) / den[:, None]

        out[pos:pos + len(zc)] = integrate_path(f, path, cfg)
        pos += len(zc)
    return out[0] if scalar else out


def qdilog(z, g, cfg=DEFAULT_CONFIG):
    return np.exp(log_qdilog(z, g, cfg))


def _inv_sinh_minus_inv(x):
    # 1/sinh(x) - 1/x, with the Taylor series where cancellation bites
    out = np.empty_like(x)
    small = np.abs(x) < 0.1
    xs = x[small]
    x2 = xs * xs
    out[small] = xs * (-1 / 6 + x2 * (7 / 360 + x2 * (-31 / 15120 + x2 * 127 / 604800)))
    xb = x[~small]
    s = np.where(xb.real >= 0, 1.0, -1.0)
    out[~small] = 2 * s * np.exp(-s * xb) / -np.expm1(-2 * s * xb) - 1 / xb
    return out


def igamma(z, g, cfg=DEFAULT_CONFIG):
    """Correction integral I_gamma(z) with S_gamma = exp(Li2(-e^{iz})/(2 i gamma) + I_gamma)."""
    g = _as_gamma(g)
    gamma = g.gamma
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).ravel()
    edge = math.pi - np.abs(z.real)
    if np.any(edge < EDGE_MARGIN):
        raise OutsideDomain("I_gamma needs |Re z| < pi with margin")
    R = _radius(gamma, cfg)
    out = np.empty(z.shape, dtype=complex)
    pos = 0
    for zc in _chunks(z):
        right = _tail(math.pi - zc.real.max(), cfg)
        left = _tail(math.pi + zc.real.min(), cfg)
        path = _contour(R, left, right)

        def f(t, zc=zc):
            s = np.where(t.real >= 0, 1.0, -1.0)
            corr = _inv_sinh_minus_inv(gamma * t)
            w = 2 * s * corr / (t * -np.expm1(-2 * s * math.pi * t))
            return 0.25 * np.exp(np.outer(t, zc) - (s * math.pi * t)[:, None]) * w[:, None]

        out[pos:pos + len(zc)] = integrate_path(f, path, cfg)
        pos += len(zc)
    return out[0] if scalar else out


def qdilog_via_li2(z, g, cfg=DEFAULT_CONFIG):
    """exp(Li2(-e^{iz})/(2 i gamma) + I_gamma(z)), an independent route to S_gamma."""
    g = _as_gamma(g)
    z = np.asarray(z, dtype=complex)
    return np.exp(li2(-np.exp(1j * z)) / (2j * g.gamma) + igamma(z, g, cfg))


def log_sratio_closed(u, g, n):
    """log of (e^{u pi/gamma} - 1) / prod_{k=0}^{n-2} (e^{u - 2k gamma i} - 1).

    This equals S_gamma(-pi - iu + gamma) / S_gamma(pi - iu - (2n-3) gamma).
    The numerator is handled as X + log(1 - e^{-X}) so large N cannot
    overflow.
    """
    g = _as_gamma(g)
    gamma = g.gamma
    if not u > 0:
        raise InvalidArgument("u must be positive")
    if n < 2 or n % 2:
        raise InvalidArgument("n must be an even integer >= 2")
    X = u * math.pi / gamma
    if X.real > 0:
        num = X + cmath.log(1 - cmath.exp(-X))
    else:
        num = cmath.log(cmath.exp(X) - 1)
    den = 0j
    for k in range(n - 1):
        factor = cmath.exp(u - 2j * k * gamma) - 1
        if abs(factor) < 1e-13:
            raise SingularRatio(f"factor k={k} vanishes")
        den += cmath.log(factor)
    return num - den


def sratio_closed(u, g, n):
    return cmath.exp(log_sratio_closed(u, g, n))


def geom_identities(A, n):
    """Left-hand sides e^{-(n-2)A} sinh((n-1)A)/sinh(A) and the cosh analogue."""
    A = complex(A)
    sh, ch = cmath.sinh(A), cmath.cosh(A)
    if abs(sh) < 1e-14 or abs(ch) < 1e-14:
        raise SingularArgument(f"sinh or cosh vanishes at A={A!r}")
    pre = cmath.exp(-(n - 2) * A)
    return pre * cmath.sinh((n - 1) * A) / sh, pre * cmath.cosh((n - 1) * A) / ch


def geom_sums(A, n):
    """Right-hand sides: sum e^{-2kA} and sum (-1)^k e^{-2kA}, k = 0..n-2."""
    terms = [cmath.exp(-2 * k * complex(A)) for k in range(n - 1)]
    return sum(terms), sum((-1) ** k * t for k, t in enumerate(terms))
