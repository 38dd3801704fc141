"""
Quantum dilogarithm and the residue picture
===========================================

S_gamma(z) is a contour integral around the origin.  It satisfies a shift
equation, and quotients of it rebuild the whole invariant.
"""

import cmath

from homfly41 import (GammaParam, ModelParams, homfly_exact, homfly_qdilog_form,
                      pole_domain_check, qdilog)
from homfly41.invariant import full_enclosure, invariant_from_contour, residue_reconstruction
from homfly41.quadrature import DEFAULT_CONFIG

g = GammaParam.from_params(50, 2, 0.5)
z = 0.2 + 0.1j
lhs = (1 + cmath.exp(1j * z)) * qdilog(z + g.gamma, g)
print("shift equation residual:", abs(lhs / qdilog(z - g.gamma, g) - 1))

# the invariant three ways
p = ModelParams(4, 4, 0.5)
print("exact sum    ", homfly_exact(p).value)
print("S_gamma form ", homfly_qdilog_form(p))
print("residue sum  ", residue_reconstruction(p))

# and once more as a genuine contour integral of tan(M pi z) g(z)
cfg = DEFAULT_CONFIG.with_(abs_tol=1e-10, rel_tol=1e-8)
print("contour      ", invariant_from_contour(p, full_enclosure(p), cfg))

# the poles of tan sit inside the strip domain only for a >= n - 2
for a in range(3):
    print("a =", a, pole_domain_check(20, 4, a, 0.5))

