# %% [markdown]
# # Genus and genus-one classification of t*f(x) = g(y)
#
# A configuration records only the multiplicities of the zeros and poles of
# f and g.  The geometric genus follows from the arithmetic genus of the
# bidegree minus the singularity corrections over t = 0 and t = infinity.

# %%
from collections import Counter

import numpy as np

from tfg import SurfaceConfig, delta_max, enumerate_genus_one, genus_report, validate_config
from tfg.classifier import exceptional_bidegrees
from tfg.families import match_family

cfg = validate_config(SurfaceConfig.of([2], [1, 1], [3], [2, 1]))
print(cfg)
print(genus_report(cfg).to_dict())

# %% [markdown]
# The largest correction a single side can carry has a closed form.

# %%
print([delta_max(r, 2, 3) for r in range(1, 6)])

# %% [markdown]
# ## Counting genus-one classes per bidegree
#
# Classes are taken up to swapping zeros with poles and f with g.

# %%
N = 12
counts = np.zeros((N, N), dtype=int)
for rn in range(1, N + 1):
    for rm in range(1, rn + 1):
        counts[rm - 1, rn - 1] = len(enumerate_genus_one(rm, rn))
print(counts)

# %% [markdown]
# Every class carries a family tag.  Most belong to residue families where f
# has one zero and one pole; the remainder are the exceptional rows.

# %%
tags = Counter(match_family(c).source for rn in range(1, N + 1) for rm in range(1, rn + 1)
               for c in enumerate_genus_one(rm, rn))
for source, n in tags.most_common():
    print(f"{n:6d}  {source}")

# %% [markdown]
# ## Exceptional bidegrees
#
# The search also finds (5,5) and (7,7), carried by configurations that fit
# none of the nine catalog rows.

# %%
print(sorted(exceptional_bidegrees(16)))
for rm in (5, 7):
    for c in enumerate_genus_one(rm, rm):
        if match_family(c).source == "Unmatched":
            print(c)
