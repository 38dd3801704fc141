"""
Saddle point and leading asymptotics
====================================

The potential Phi has a saddle z_N solving a cubic.  A Gaussian integral
around it gives the leading term, which we compare with the exact sum.
"""

from homfly41 import ModelParams, asymptotic_report, solve_saddle
from homfly41.descent import fsa_ratio
from homfly41.saddle import phi_second_at_saddle, z2

u = 0.5
print("n = 2 saddle:", z2(u))
for N in (100, 200, 400):
    sd = solve_saddle(ModelParams(N, 4, u))
    print(N, sd.z, abs(sd.z - z2(u)), "cubic residual", sd.residual)

print("Phi'' at saddle:", phi_second_at_saddle(ModelParams(400, 4, u)))

# quadrature along a steepest-descent path vs the Gaussian closed form
for N in (50, 100, 200):
    r = fsa_ratio(ModelParams(N, 2, u))
    print(N, r, "M|r-1| =", N * abs(r - 1))

# exact sum over the full right-hand side: |ratio| -> 1 like 1/N
for n in (2, 4):
    for N in (500, 1000, 2000, 4000):
        rep = asymptotic_report(ModelParams(N, n, u))
        print(n, N, rep.ratio_mag, rep.ratio_phase)
