"""
Three ways to get the expected NDC
==================================

The chance baseline averages the NDC over shuffles of one partition's pair
equivalences. It has a closed form; enumeration and Monte Carlo serve as
checks and alternatives.
"""

import time

import numpy as np

from concord import expected_ndc_closed_form, expected_ndc_enumeration, expected_ndc_monte_carlo

rng = np.random.default_rng(0)

# %%
# On seven pairs enumeration visits all 5040 orderings.
p, q = rng.random(7), rng.random(7)
print("closed form ", expected_ndc_closed_form(p, q))
print("enumeration ", expected_ndc_enumeration(p, q))

# %%
# Monte Carlo converges at the usual 1/sqrt(h) rate.
p, q = rng.random(5000), rng.beta(0.5, 2, size=5000)
exact = expected_ndc_closed_form(p, q)
for h in (10, 100, 1000):
    est, se = expected_ndc_monte_carlo(p, q, h=h, seed=1)
    print(f"h={h:5d}  estimate={est:.6f}  se={se:.1e}  error={est - exact:+.1e}")

# %%
# The closed form costs a sort, so it scales to all pairs of 500 objects.
n = 500
p, q = rng.random(n * (n - 1) // 2), rng.random(n * (n - 1) // 2)
t = time.perf_counter()
expected_ndc_closed_form(p, q)
print(f"m={p.size}: {time.perf_counter() - t:.3f}s")
