# Survival probabilities for a surplus process that collects 2 units of
# premium per period and pays claims drawn from two alternating
# distributions: X in odd periods, Y in even ones.  The walkthrough
# builds the finite-horizon table phi(u, T) for one model and appends
# the infinite-horizon row underneath, the same layout the CLI emits.
#
# Model here: X ~ Poisson(1), Y ~ Poisson(2).  Combined mean claim per
# two periods is 3 against 4 units of income, so survival probabilities
# tend to 1 as initial capital grows.

import numpy as np

from ruinwalk import ModelSpec, make_displaced_poisson, survival_finite, survival_ultimate

model = ModelSpec(
    x=make_displaced_poisson(1.0, 0),
    y=make_displaced_poisson(2.0, 0),
)

u_values = list(range(6)) + [10, 15]
horizons = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50]

grid = survival_finite(model, u_max=max(u_values), t_max=max(horizons))
ultimate = survival_ultimate(model, u_max=max(u_values))

header = "T\\u  " + "".join(f"{u:>8d}" for u in u_values)
print(header)
print("-" * len(header))
for t in horizons:
    row = "".join(f"{grid.value(u, t):8.3f}" for u in u_values)
    print(f"{t:<5d}{row}")
row = "".join(f"{ultimate.phi[u]:8.3f}" for u in u_values)
print(f"{'inf':<5s}{row}")

print()
print(f"truncation error bound on finite rows: {grid.error_bound:.2e}")
print(f"ultimate row solved at n = {ultimate.n_solve} with {ultimate.precision_bits} bits")

# The finite rows decrease down each column (more time, more ways to be
# ruined) and the ultimate row is their limit.
finite_floor = grid.values[np.array(u_values), -1]
gap = finite_floor - ultimate.phi[np.array(u_values)]
print(f"largest gap between T = {max(horizons)} and the limit: {gap.max():.4f}")
