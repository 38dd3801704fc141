"""phi(u), S(u), T(u) and the leading asymptotics of the invariant.

    J ~ ((1 - e^{u-phi})(1 - e^{phi}))^{n-2} / (n-2)! / (e^u - 1)^{n-2}
        * sqrt(-pi) / (2 sinh(u/2)) * T^{1/2} * (M/xi)^{1/2 + n-2} * e^{M S/xi}

Everything is carried as a logarithm; |J| passes e^{3500} in the ranges we
sweep.  Square roots and non-integer powers are principal.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateT, OutsideRange, SingularPrefactor
from .invariant import U_MAX, ModelParams, homfly_exact
from .polylog import li2

CALIBRATION_POINT = (2000, 2, 0.5)


def _check_u(u):
    if not 0 <= u < U_MAX:
        raise OutsideRange(f"u must lie in [0, {U_MAX}), got {u!r}")


def phi_u(u):
    """arccosh(cosh u - 1/2) = -i arccos(cosh u - 1/2).

    cosh u - 1/2 lies in [1/2, 1), so the value is purely imaginary.  The
    sign is the one for which Re(S(u)/xi) > 0.
    """
    _check_u(u)
    return -1j * math.acos(math.cosh(u) - 0.5)


def s_of_u(u):
    phi = phi_u(u)
    return complex(li2(cmath.exp(u - phi)) - li2(cmath.exp(u + phi))) - u * phi


def t_of_u(u):
    """2 / sqrt((e^u + e^-u + 1)(e^u + e^-u - 3)) with the principal root."""
    _check_u(u)
    c = math.exp(u) + math.exp(-u)
    rad = (c + 1) * (c - 3)
    if abs(c - 3) < 1e-14:
        raise DegenerateT("T(u) is singular where e^u + e^-u = 3")
    return 2 / cmath.sqrt(rad)


def growth_rate(u):
    """Re(S(u)/xi), the exponential growth rate of |J| per unit M."""
    return (s_of_u(u) / complex(u, 2 * math.pi)).real


def log_rhs_uncalibrated(params):
    n, u, M = params.n, params.u, params.M
    if not u > 0:
        raise SingularPrefactor("the asymptotic formula needs u > 0")
    xi = params.xi
    phi = phi_u(u)
    S = s_of_u(u)
    T = t_of_u(u)
    k = n - 2
    out = M * S / xi
    out += (0.5 + k) * cmath.log(M / xi)
    out += 0.5 * cmath.log(T)
    out += cmath.log(cmath.sqrt(-math.pi)) - math.log(2 * math.sinh(u / 2))
    if k:
        out += k * cmath.log((1 - cmath.exp(u - phi)) * (1 - cmath.exp(phi)))
        out -= math.lgamma(k + 1) + k * math.log(math.expm1(u))
    return out


@lru_cache(maxsize=1)
def calibrate_phase():
    """Unimodular constant fixing the overall branch, from one exact evaluation.

    Returned as a phase angle theta; the calibrated right-hand side is
    e^{i theta} times the uncalibrated one.
    """
    p = ModelParams(*CALIBRATION_POINT)
    diff = homfly_exact(p).log_value - log_rhs_uncalibrated(p)
    return math.remainder(diff.imag, 2 * math.pi)


def log_rhs_theorem_main(params, calibrated=True):
    out = log_rhs_uncalibrated(params)
    if calibrated:
        out += 1j * calibrate_phase()
    return out


def rhs_theorem_main(params, calibrated=True):
    try:
        return cmath.exp(log_rhs_theorem_main(params, calibrated))
    except OverflowError:
        return complex(math.inf, 0)


def _wrap(x):
    return math.remainder(x, 2 * math.pi)


@dataclass(frozen=True)
class AsymptoticReport:
    """Exact value and asymptotic prediction at one (N, n, u), both as logs."""

    params: ModelParams
    exact_log: complex | None
    rhs_log: complex | None

    @property
    def ratio_log(self):
        if self.exact_log is None or self.rhs_log is None:
            return None
        return self.exact_log - self.rhs_log

    @property
    def ratio(self):
        r = self.ratio_log
        return None if r is None else cmath.exp(r)

    @property
    def ratio_mag(self):
        r = self.ratio_log
        return None if r is None else math.exp(r.real)

    @property
    def ratio_phase(self):
        r = self.ratio_log
        return None if r is None else _wrap(r.imag)

    @property
    def growth_exact(self):
        return None if self.exact_log is None else self.exact_log.real / self.params.N

    @property
    def growth_predicted(self):
        p = self.params
        return growth_rate(p.u) * p.M / p.N


def asymptotic_report(params, exact=True, asymptotic=True):
    ex = homfly_exact(params).log_value if exact else None
    rhs = log_rhs_theorem_main(params) if asymptotic else None
    return AsymptoticReport(params, ex, rhs)
