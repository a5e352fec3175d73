# %% [markdown]
# # Rank invariants over k(t^(1/d))
#
# c2(d) is computed from multiplicities alone.  When f has one zero and one
# pole the other two terms vanish and the Mordell-Weil rank equals c2(d).

# %%
import numpy as np

from tfg import enumerate_genus_one, geometric_genus
from tfg.rank import c2_general, c2_onepole, c2_period, c2_sweep, mw_rank

classes = enumerate_genus_one(6, 12)
cfg = next(c.config() for c in classes if len(c.zerosF) == len(c.polesF) == 1)
print(cfg, "genus", geometric_genus(cfg))
print(mw_rank(cfg, 12).to_dict())

# %% [markdown]
# For the one-zero-one-pole case both expressions for c2 agree.

# %%
d = np.arange(1, 61)
general = np.array([c2_general(cfg, int(x)) for x in d])
onepole = np.array([c2_onepole(cfg, int(x)) for x in d])
print(np.array_equal(general, onepole), np.unique(general))

# %% [markdown]
# With several zeros and poles on both sides c2 grows with the common
# divisors of d and the multiplicities, and the rank is reported as unknown.

# %%
family = next(c.config() for c in enumerate_genus_one(3, 3) if len(c.polesF) == len(c.polesG) == 3)
print(family, "genus", geometric_genus(family))
for report in c2_sweep(family, 1, 12):
    print(report.d, report.c2, report.mw_rank)
print("period", c2_period(family))
