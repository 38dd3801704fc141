"""
The invariant from its finite q-sum
===================================

Evaluate J_N^(n)(4_1; q) at q = exp(xi/(N+n-2)), xi = 2 pi i + u, and watch
its growth rate settle towards Re(S(u)/xi).
"""

import math

from homfly41 import ModelParams, growth_rate, homfly_exact, volume_evidence

# small values are integers at the Kashaev point
for N in (1, 2, 3, 4):
    print(N, homfly_exact(ModelParams(N, 2, 0.0)).value)

# J is stored as a logarithm; at u = 0.9 the summands cancel over ~100 digits
v = homfly_exact(ModelParams(4000, 2, 0.9))
print("log|J| =", v.log_abs, " working digits:", v.dps)

# growth rate per unit N
u = 0.5
for N in (250, 500, 1000, 2000):
    print(N, homfly_exact(ModelParams(N, 4, u)).log_abs / N)
print("Re(S/xi) =", growth_rate(u))

# u = 0: 2 pi log|J| / N creeps down to the hyperbolic volume 2.02988...
for N in (100, 500, 2000):
    print(N, volume_evidence(2, N), volume_evidence(4, N))
print("volume:", 2.029883212819307, " (n = 4 carries an extra log N / N term)")
print("2 pi (n-2) log N / N at N=2000:", 2 * math.pi * 2 * math.log(2000) / 2000)
