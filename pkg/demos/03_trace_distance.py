# %% [markdown]
# # Trace distance and a numerical search for better state pairs
#
# The pair `|+><+| x 1/2` versus `1/2 x 1/2` tracks Alice's coherence
# exactly: its trace distance is half the decoherence magnitude. That gives a
# certified lower bound on the trace-distance measure. A random-restart search
# over orthogonal pure pairs can only improve on it.

# %%
import numpy as np

from dephasing_sdc.config import TABLE1, table1_pair
from dephasing_sdc.measures import blp_product_bound, blp_search, trace_distance_dynamics
from dephasing_sdc.spectra import default_grid, magnitude

# %%
pair = table1_pair(TABLE1[1])
grid = default_grid(pair.spec_a, pair.spec_b, n_points=4097)
plus, mixed = np.full((2, 2), 0.5), 0.5 * np.eye(2)
d = trace_distance_dynamics(np.kron(plus, mixed), np.kron(mixed, mixed), pair, grid)
print("max |D - |kappa_A|/2| =", np.max(np.abs(d - 0.5 * magnitude(pair.spec_a, grid.samples))))

# %%
coarse = grid.decimated(513)
bound = blp_product_bound(pair, coarse)
best, probe = blp_search(pair, coarse, n_restarts=3, seed=0)
print(f"product bounds {bound[0]:.4f} / {bound[1]:.4f}")
print(f"search best    {best:.4f} from {probe.label}")
