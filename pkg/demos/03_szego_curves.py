# %% [markdown]
# The Szegő curve and its logarithmic pull-backs.
#
# Zeros of Miller forms with m/l close to delta cluster on S_delta, the
# pull-back of S = {|z e^{1-z}| = 1} through tau -> 24/((1 - delta) j(tau)).
# Curves are written as CSV for plotting elsewhere.

# %%
import os

from millerzeros import szego

out = os.environ.get("DEMO_OUT", "demo_out")
os.makedirs(out, exist_ok=True)

S = szego.szego_curve()
S.write_csv(os.path.join(out, "S.csv"))
print(szego.cutoffs(80).as_dict())

# %% truncated exponentials approach S
for D in (10, 20, 40, 80):
    print(D, round(szego.szego_distance(D, S), 4))

# %% the zero locus for delta = 0.98 against actual zeros
curve = szego.s_delta_curve(0.98)
curve.write_csv(os.path.join(out, "S_0.98.csv"))
for k in (2400, 4800, 9600):
    m = round(0.98 * k / 12)
    print(k, m, round(szego.miller_szego_distance(k, m, curve), 4))

# %% where the upper hull leaves the arc
for d in (0.6, 0.7, 0.8, 0.9, 0.95):
    print(d, szego.conj_transition_angle(d))
szego.c_delta_hull(0.8).write_csv(os.path.join(out, "C_0.8.csv"))
