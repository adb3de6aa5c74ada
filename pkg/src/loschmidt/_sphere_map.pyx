# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the classical sphere map Monte Carlo.

Hot loop of the classical correlation estimator: iterate the area-preserving
sphere map for many trajectories and accumulate lagged products of the
observable v = z^2/2.  A numpy implementation with the same interface lives
in ``_sphere_map_np``; ``_kernel`` picks one at import time.
"""

from libc.math cimport cos, sin

import numpy as np

KERNEL = "compiled"


def map_step(double[::1] x, double[::1] y, double[::1] z,
             double alpha, double gamma):
    """Advance every (x, y, z) point one step of the sphere map, in place."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double cg = cos(gamma), sg = sin(gamma)
    cdef double cz, sz, xr
    for i in range(n):
        cz = cos(alpha * z[i])
        sz = sin(alpha * z[i])
        xr = x[i] * cz - y[i] * sz
        y[i] = y[i] * cz + x[i] * sz
        x[i] = cg * xr + sg * z[i]
        z[i] = cg * z[i] - sg * xr


def correlation_sums(double[::1] x, double[::1] y, double[::1] z,
                     double alpha, double gamma, Py_ssize_t t_max,
                     Py_ssize_t n_origins, Py_ssize_t spacing):
    """Accumulate lagged sums of v = z^2/2 over trajectories and time origins.

    Returns (sum_prod, sum_lag, sum_v0) where, summed over trajectories i and
    origins s = 0, spacing, ..., (n_origins-1)*spacing:

        sum_prod[t] = sum v_i(s) * v_i(s + t)
        sum_lag[t]  = sum v_i(s + t)
        sum_v0      = sum v_i(s)
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t total = (n_origins - 1) * spacing + t_max
    v_arr = np.empty(total + 1, dtype=np.float64)
    sp_arr = np.zeros(t_max + 1, dtype=np.float64)
    sl_arr = np.zeros(t_max + 1, dtype=np.float64)
    cdef double[::1] v = v_arr
    cdef double[::1] sum_prod = sp_arr
    cdef double[::1] sum_lag = sl_arr
    cdef double sum_v0 = 0.0
    cdef double cg = cos(gamma), sg = sin(gamma)
    cdef double xi, yi, zi, cz, sz, xr, v0
    cdef Py_ssize_t i, t, k, s

    for i in range(n):
        xi = x[i]
        yi = y[i]
        zi = z[i]
        v[0] = 0.5 * zi * zi
        for t in range(total):
            cz = cos(alpha * zi)
            sz = sin(alpha * zi)
            xr = xi * cz - yi * sz
            yi = yi * cz + xi * sz
            xi = cg * xr + sg * zi
            zi = cg * zi - sg * xr
            v[t + 1] = 0.5 * zi * zi
        for k in range(n_origins):
            s = k * spacing
            v0 = v[s]
            sum_v0 += v0
            for t in range(t_max + 1):
                sum_prod[t] += v0 * v[s + t]
                sum_lag[t] += v[s + t]

    return sp_arr, sl_arr, sum_v0
