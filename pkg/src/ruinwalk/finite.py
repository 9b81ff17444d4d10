"""Finite-horizon survival probabilities.

The closed recursion steps the horizon down by a full period pair:

    phi(u, 1) = X(u + 1)
    phi(u, 2) = sum_{k=0}^{u+1} x_k Y(u + 3 - k)
    phi(u, T) = sum_{k=0}^{u+3} s_k phi(u + 4 - k, T - 2)
                - x_{u+2} y_0 phi(2, T - 2)
                - (x_{u+2} y_1 + x_{u+3} y_0) phi(1, T - 2)      for T >= 3

where capital letters are cdfs and s is the period-pair claim sum. Layer
T reads layer T - 2 four indices higher, so the internal u range widens
by 2 per horizon step; only the requested window is materialized.

Two independent validators live here as well: a forward dynamic program
over the surplus (shares nothing with the recursion above) and a
counter-based Monte Carlo estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidModelError
from .model import ModelSpec
from .pmf import Pmf

_MC_CHUNK = 65536  # trials per block; multiple of 4 keeps Philox counters aligned


@dataclass(frozen=True)
class SurvivalGrid:
    """phi(u, T) for u = 0..u_max, T = 1..t_max, plus the truncation bound.

    ``error_bound`` dominates the probability that any claim in a horizon
    falls beyond the retained supports: t_max * (defect_x + defect_y).
    """

    values: np.ndarray  # shape (u_max + 1, t_max); column T-1 is horizon T
    u_max: int
    t_max: int
    error_bound: float

    def value(self, u: int, t: int) -> float:
        if not (0 <= u <= self.u_max and 1 <= t <= self.t_max):
            raise InvalidModelError(f"(u={u}, t={t}) outside computed grid")
        return float(self.values[u, t - 1])


def _capped_cdf(p: Pmf, upto: int) -> np.ndarray:
    """cdf array F(0..upto) with F frozen at the retained total beyond support."""
    cs = np.cumsum(p.probs)
    idx = np.minimum(np.arange(upto + 1), p.support_max)
    return cs[idx]


def _layer_one(model: ModelSpec, width: int) -> np.ndarray:
    xc = _capped_cdf(model.x, width + 1)
    return xc[1 : width + 2].copy()


def _layer_two(model: ModelSpec, width: int) -> np.ndarray:
    out = np.zeros(width + 1)
    yc = _capped_cdf(model.y, width + 3)
    xp = model.x.probs
    for k in range(min(model.x.support_max, width + 1) + 1):
        xk = xp[k]
        if xk == 0.0:
            continue
        u_lo = max(0, k - 1)
        # phi(u,2) collects x_k * Y(u + 3 - k) for k <= u + 1
        out[u_lo : width + 1] += xk * yc[u_lo + 3 - k : width + 4 - k]
    return out


def _layer_step(prev: np.ndarray, width: int, model: ModelSpec) -> np.ndarray:
    """One horizon pair step; ``prev`` must cover indices 0..width+4."""
    sp = model.s.probs
    new = np.zeros(width + 1)
    for k in range(min(model.s.support_max, width + 3) + 1):
        sk = sp[k]
        if sk == 0.0:
            continue
        u_lo = max(0, k - 3)
        new[u_lo : width + 1] += sk * prev[u_lo + 4 - k : width + 5 - k]
    xpad = np.zeros(width + 4)
    hi = min(model.x.support_max, width + 3)
    xpad[: hi + 1] = model.x.probs[: hi + 1]
    y0 = model.y.p(0)
    y1 = model.y.p(1)
    new -= xpad[2 : width + 3] * (y0 * prev[2] + y1 * prev[1])
    new -= xpad[3 : width + 4] * (y0 * prev[1])
    return new


def survival_finite(model: ModelSpec, u_max: int, t_max: int) -> SurvivalGrid:
    """Survival probability grid over u = 0..u_max, horizons 1..t_max."""
    if u_max < 0 or t_max < 1:
        raise InvalidModelError("need u_max >= 0 and t_max >= 1")

    def width(t):
        return u_max + 2 * (t_max - t)

    grid = np.empty((u_max + 1, t_max))
    older = _layer_one(model, width(1))  # horizon T - 2 while sweeping
    grid[:, 0] = older[: u_max + 1]
    newer = None
    if t_max >= 2:
        newer = _layer_two(model, width(2))
        grid[:, 1] = newer[: u_max + 1]
    for t in range(3, t_max + 1):
        layer = _layer_step(older, width(t), model)
        grid[:, t - 1] = layer[: u_max + 1]
        older, newer = newer, layer

    bound = t_max * (model.x.mass_defect + model.y.mass_defect)
    return SurvivalGrid(values=grid, u_max=u_max, t_max=t_max, error_bound=bound)


# ---- independent validators ----


def dp_survival_curve(model: ModelSpec, u: int, t_max: int) -> np.ndarray:
    """Survival for horizons 1..t_max by plain forward DP on the surplus.

    State: sub-probability vector over the surviving surplus after each
    period; ruin (w <= 0) is absorbing and simply dropped. Claims alternate
    x (odd periods) and y (even periods). No shared code with
    survival_finite beyond Pmf access, by design.
    """
    if u < 0 or t_max < 1:
        raise InvalidModelError("need u >= 0 and t_max >= 1")
    zmax = max(model.x.support_max, model.y.support_max)
    wmax = u + 2 * t_max
    p = np.zeros(wmax + zmax + 3)
    p[u] = 1.0
    out = np.empty(t_max)
    for step in range(1, t_max + 1):
        claims = model.x.probs if step % 2 == 1 else model.y.probs
        q = np.zeros_like(p)
        for z in range(len(claims)):
            pz = claims[z]
            if pz == 0.0:
                continue
            w_new_lo = max(1, 2 - z)  # surplus moves w -> w + 2 - z, must stay >= 1
            q[w_new_lo : wmax + 1] += pz * p[w_new_lo - 2 + z : wmax - 1 + z]
        p = q
        out[step - 1] = math.fsum(p[: wmax + 1])
    return out


def dp_oracle(model: ModelSpec, u: int, t: int) -> float:
    """Survival probability at one grid point via the forward DP."""
    return float(dp_survival_curve(model, u, t)[t - 1])


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    trials: int
    seed: int


def mc_estimate(model: ModelSpec, u: int, t: int, trials: int, seed: int) -> McEstimate:
    """Monte Carlo survival estimate with counter-based, chunk-independent RNG.

    Trial i consumes uniforms at Philox stream positions [i*t, (i+1)*t),
    so results depend only on (seed, trial index), not on chunking. Draws
    landing beyond the retained mass count as non-survival, matching the
    truncated-model semantics of survival_finite.
    """
    if trials < 1:
        raise InvalidModelError("trials must be >= 1")
    if u < 0 or t < 1:
        raise InvalidModelError("need u >= 0 and t >= 1")
    if seed < 0 or seed != int(seed):
        raise InvalidModelError("seed must be a nonnegative integer")

    cdfs = []
    sizes = []
    for step in range(1, t + 1):
        p = model.x if step % 2 == 1 else model.y
        cdfs.append(np.cumsum(p.probs))
        sizes.append(len(p.probs))

    survived = 0
    for start in range(0, trials, _MC_CHUNK):
        rows = min(_MC_CHUNK, trials - start)
        bit_gen = np.random.Philox(key=seed)
        # one Philox counter block is 4 doubles; start*t is a multiple of 4
        bit_gen.advance((start * t) // 4)
        unif = np.random.Generator(bit_gen).random((rows, t))
        surplus = np.full(rows, u, dtype=np.int64)
        alive = np.ones(rows, dtype=bool)
        for j in range(t):
            idx = np.searchsorted(cdfs[j], unif[:, j], side="right")
            beyond = idx >= sizes[j]
            claims = np.where(beyond, 0, idx)
            surplus += 2 - claims
            alive &= ~beyond
            alive &= surplus >= 1
        survived += int(np.count_nonzero(alive))

    p_hat = survived / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return McEstimate(estimate=p_hat, stderr=stderr, trials=trials, seed=int(seed))
