# %% [markdown]
# Grid search for the fraction of zeros guaranteed on the arc.
#
# The arc [pi/2, 2pi/3] is cut into N pieces; on each piece an auxiliary
# height B is optimised and yields delta_r.  Below min delta_r every zero is on
# the arc; P(delta) is the guaranteed fraction above it.

# %%
import numpy as np

from millerzeros import arcbound

holo = arcbound.grid_search("holomorphic", 1000, 0.0005)
print("all on arc below", round(holo.delta_cutoff_all, 6))
print("P vanishes from", round(holo.delta_cutoff_none, 6))

# %% the guaranteed fraction and the transition angle
for d in np.linspace(0.6, 0.96, 10):
    d = float(d)
    print(f"delta={d:.3f}  P={holo.P(d):.4f}  T={holo.T(d):.4f}  chord={1 - 2.9832 * (d - 0.6194):.4f}")

# %% weakly holomorphic forms (m/l > 1)
weak = arcbound.grid_search("weak", 1000, 0.0005)
print("weak: all roots", round(weak.delta_cutoff_all, 6), " some roots", round(weak.delta_cutoff_none, 6))

# %% the stated B range with residue terms, for comparison
strict = arcbound.grid_search("holomorphic", 1000, 0.0005, b_lower="tan", residue_terms=True)
print("strict variant: delta_0 =", round(strict.records[0].delta, 4), " min =", round(min(strict.deltas), 2))

# %% predicted counts from the cosine approximation
print(arcbound.predicted_arc_count(12000, 500, np.pi / 2, 2 * np.pi / 3))
