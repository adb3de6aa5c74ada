"""Numpy fallback for the classical sphere-map kernels.

Same interface as the compiled ``_sphere_map`` extension: trajectories are
vectorized over samples instead of looped in C.
"""

import numpy as np

KERNEL = "numpy"

_CHUNK = 8192  # trajectories per block; bounds the (chunk, t) value buffer


def map_step(x, y, z, alpha, gamma):
    """Advance every (x, y, z) point one step of the sphere map, in place."""
    cz = np.cos(alpha * z)
    sz = np.sin(alpha * z)
    xr = x * cz - y * sz
    y[...] = y * cz + x * sz
    x[...] = np.cos(gamma) * xr + np.sin(gamma) * z
    z[...] = np.cos(gamma) * z - np.sin(gamma) * xr


def correlation_sums(x, y, z, alpha, gamma, t_max, n_origins, spacing):
    """Accumulate lagged sums of v = z^2/2; see the compiled kernel docstring."""
    n = x.shape[0]
    total = (n_origins - 1) * spacing + t_max
    sum_prod = np.zeros(t_max + 1)
    sum_lag = np.zeros(t_max + 1)
    sum_v0 = 0.0
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        xs = x[lo:hi].copy()
        ys = y[lo:hi].copy()
        zs = z[lo:hi].copy()
        v = np.empty((hi - lo, total + 1))
        v[:, 0] = 0.5 * zs * zs
        for t in range(total):
            map_step(xs, ys, zs, alpha, gamma)
            v[:, t + 1] = 0.5 * zs * zs
        for k in range(n_origins):
            s = k * spacing
            block = v[:, s : s + t_max + 1]
            sum_prod += v[:, s] @ block
            sum_lag += block.sum(axis=0)
            sum_v0 += v[:, s].sum()
    return sum_prod, sum_lag, sum_v0
