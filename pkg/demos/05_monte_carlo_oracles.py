# %% [markdown]
# # Checking closed forms by sampling
#
# The decoherence function is the Fourier transform of the frequency
# distribution, so it can be estimated by sampling frequencies and averaging
# phases. The same samples drive an explicit simulation of the photon pair,
# which checks the echo formula for the encoded states.

# %%
import numpy as np

from dephasing_sdc.config import RunConfig
from dephasing_sdc.sdc import PRESETS, dilation_oracle, effective_coherences, encoded_states
from dephasing_sdc.spectra import characteristic_fn, monte_carlo_characteristic

cfg = RunConfig()
spec_a, spec_b = cfg.spectrum("a"), cfg.spectrum("b")
times = np.linspace(0, 3 / spec_a.sigma, 6)
n = 200_000

# %%
est = monte_carlo_characteristic(spec_a, times, n, seed=0)
for t, e, c in zip(times, est, characteristic_fn(spec_a, times)):
    print(f"t = {t * 1e15:6.2f} fs  |estimate - exact| = {abs(e - c):.2e}")
print(f"budget 5/sqrt(n) = {5 / np.sqrt(n):.2e}")

# %%
for preset in "abc":
    sched = PRESETS[preset]
    worst = 0.0
    for t in times:
        h, k = effective_coherences(spec_a, spec_b, sched, t)
        expected = encoded_states(h, k)
        for msg in range(4):
            rho = dilation_oracle(spec_a, spec_b, sched, msg, t, 20_000, seed=1)
            worst = max(worst, np.max(np.abs(rho - expected[msg])))
    print(f"preset {preset}: worst entry deviation {worst:.2e}")
