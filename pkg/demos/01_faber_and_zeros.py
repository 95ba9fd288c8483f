# %% [markdown]
# Faber polynomials and the zeros of Miller forms.
#
# g_{k,m} = q^m + O(q^{l+1}) factors as Delta^l E_k' P(j) with a monic integer
# polynomial P of degree D = l - m.  Zeros of g on the arc |tau| = 1 correspond
# to roots of P in (0, 1728).

# %%
import math

from millerzeros.miller import faber_poly, miller_form
from millerzeros.qseries import series_basic
from millerzeros.roots import equidistribution_discrepancy, zeros_of_miller

print(series_basic("j", 4))
print(miller_form(12, 0, 4).expansion)   # E4^3 - 720 Delta
print(faber_poly(12, 0), "|", faber_poly(24, 0))

# %% the all-on-arc case: m = 0
zs = zeros_of_miller(1200, 0)
print("k=1200 m=0 (on, off, elliptic):", zs.counts)
print("discrepancy of the arc angles:", round(equidistribution_discrepancy(zs, math.pi / 2, 2 * math.pi / 3), 4))

# %% past the threshold some zeros leave the arc
for m in (60, 66, 74, 90, 96):
    on, off, ell = zeros_of_miller(1200, m).counts
    print(f"m={m:3d}  m/l={m / 100:.2f}  on arc {on:2d}  off arc {off:2d}")

# %% off-arc zeros for m/l = 0.74
for z in zeros_of_miller(1200, 74).zeros:
    if z.kind == "off_arc":
        print(complex(z.tau))
