"""Multi-start Nelder-Mead that advances every restart in lockstep.

The objective receives a ``(B, n)`` batch of points and returns ``(B,)``
values, so each iteration costs a handful of vectorised evaluations
instead of one Python call per restart.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

RESTARTS = 16
STALL_WINDOW = 200
STALL_TOL = 1e-9


@dataclass
class OptimResult:
    x: np.ndarray
    fun: float
    converged: bool
    iterations: int


def nelder_mead_batch(
    fun: Callable[[np.ndarray], np.ndarray],
    starts: np.ndarray,
    step: float = 0.1,
    max_iter: int = 4000,
    xatol: float = 1e-10,
    fatol: float = 1e-14,
) -> OptimResult:
    """Minimise ``fun`` from every row of ``starts``; return the overall best.

    A run stops once its best value has improved by less than ``STALL_TOL``
    over the last ``STALL_WINDOW`` iterations, or its simplex has collapsed
    below ``xatol``/``fatol``.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    b, n = starts.shape
    # adaptive coefficients (Gao & Han) behave better beyond a few dimensions
    alpha, gamma = 1.0, 1.0 + 2.0 / n
    rho, sigma = 0.75 - 0.5 / n, 1.0 - 1.0 / n

    simplex = np.repeat(starts[:, None, :], n + 1, axis=1)
    simplex[:, 1:, :] += step * np.eye(n)[None]
    values = fun(simplex.reshape(-1, n)).reshape(b, n + 1)

    active = np.ones(b, dtype=bool)
    history = np.full((b, STALL_WINDOW), np.inf)
    it = 0
    while it < max_iter and active.any():
        idx = np.flatnonzero(active)
        order = np.argsort(values[idx], axis=1)
        s = np.take_along_axis(simplex[idx], order[:, :, None], axis=1)
        f = np.take_along_axis(values[idx], order, axis=1)

        best = f[:, 0]
        prev = history[idx, it % STALL_WINDOW]
        history[idx, it % STALL_WINDOW] = best
        spread = np.max(np.abs(s[:, 1:] - s[:, :1]), axis=(1, 2))
        fspread = f[:, -1] - f[:, 0]
        # prev is +inf until the stall window has filled
        done = ((prev - best) < STALL_TOL) | ((spread <= xatol) & (fspread <= fatol))

        centroid = s[:, :-1].mean(axis=1)
        worst = s[:, -1]
        xr = centroid + alpha * (centroid - worst)
        xe = centroid + gamma * (xr - centroid)
        fr = fun(xr)
        outside = fr < f[:, -1]
        xc = np.where(
            outside[:, None],
            centroid + rho * (xr - centroid),
            centroid - rho * (centroid - worst),
        )
        fe, fc = np.split(fun(np.concatenate([xe, xc])), 2)

        new_s, new_f = s.copy(), f.copy()
        expand = (fr < f[:, 0]) & (fe < fr)
        reflect = ((fr < f[:, 0]) & ~expand) | ((fr >= f[:, 0]) & (fr < f[:, -2]))
        contract_ok = ~(expand | reflect) & np.where(outside, fc <= fr, fc < f[:, -1])
        shrink = ~(expand | reflect | contract_ok)

        new_s[expand, -1], new_f[expand, -1] = xe[expand], fe[expand]
        new_s[reflect, -1], new_f[reflect, -1] = xr[reflect], fr[reflect]
        new_s[contract_ok, -1], new_f[contract_ok, -1] = xc[contract_ok], fc[contract_ok]
        if shrink.any():
            sh = new_s[shrink]
            sh[:, 1:] = sh[:, :1] + sigma * (sh[:, 1:] - sh[:, :1])
            new_s[shrink] = sh
            new_f[shrink, 1:] = fun(sh[:, 1:].reshape(-1, n)).reshape(-1, n)

        simplex[idx], values[idx] = new_s, new_f
        active[idx[done]] = False
        it += 1

    flat = np.argmin(values.reshape(-1))
    i, j = divmod(int(flat), n + 1)
    return OptimResult(
        x=simplex[i, j].copy(),
        fun=float(values[i, j]),
        converged=not active.any(),
        iterations=it,
    )


def minimize_multistart(
    fun: Callable[[np.ndarray], np.ndarray],
    guesses: list[np.ndarray],
    dim: int,
    seed: int = 0,
    restarts: int = RESTARTS,
    polish_rounds: int = 3,
) -> OptimResult:
    """Run ``restarts`` starts (the given guesses topped up with Gaussian
    draws), then re-seed small simplices around the winner until a round
    gains less than ``STALL_TOL``."""
    rng = np.random.default_rng(seed)
    starts = [np.asarray(g, dtype=float) for g in guesses][:restarts]
    while len(starts) < restarts:
        starts.append(rng.normal(size=dim))
    res = nelder_mead_batch(fun, np.array(starts))
    for k in range(polish_rounds):
        again = nelder_mead_batch(fun, res.x[None], step=0.01 * 0.1**k)
        gain = res.fun - again.fun
        if gain > 0:
            res = OptimResult(again.x, again.fun, res.converged, res.iterations + again.iterations)
        if gain < STALL_TOL:
            break
    return res


def simplex_weights(y: np.ndarray) -> np.ndarray:
    """Map unconstrained rows onto the probability simplex via ``y**2 / sum(y**2)``.

    Squares reach the simplex boundary exactly, where many optima here sit.
    """
    y2 = np.square(y)
    total = y2.sum(axis=-1, keepdims=True)
    total = np.where(total == 0, 1.0, total)
    out = y2 / total
    return np.where(y2.sum(axis=-1, keepdims=True) == 0, 1.0 / y.shape[-1], out)
