# %% [markdown]
# Algebraic zeros.
#
# A zero at a CM point tau forces the class polynomial of its order to divide
# the Faber polynomial.  For D = 1 this is a linear condition on l.

# %%
from millerzeros import cm

for d in (3, 4, 19, 23):
    print(d, cm.hilbert_class_poly(d).coeffs)

# %% weights with a CM zero when m = l - 1
for row in cm.d1_classification():
    if not row["weak"]:
        print(row["zero"], row["kprime"], row["k"])

# %% exact divisibility and the mod-p screen for larger D
print(cm.check_cm_zero(442740, 36894, 19))
for D in (2, 3, 5, 10):
    print(cm.modp_screen(0, D))
