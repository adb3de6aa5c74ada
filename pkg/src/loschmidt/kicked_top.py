"""Kicked-top propagators, perturbation generators, and the classical map.

The quantum map is rotation times torsion, U(alpha, gamma) =
exp(-i gamma Jy) exp(-i alpha Jz^2 / 2J), with effective hbar = 1/J.  The
perturbation shifts the torsion strength, U_delta = U(alpha + delta, gamma),
generated by V = (Jz/J)^2 / 2.  Production runs use the J-dimensional sector
odd under a pi rotation about y; it is invariant for every (alpha, gamma).

The classical limit is an area-preserving map of the unit sphere; its
correlation statistics are estimated by Monte Carlo over uniformly sampled
initial conditions (hot loop in ``_kernel``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as la

from . import _kernel
from .core import InvalidParameterError, OperatorMatrix
from .spin import _angular_momentum_raw, _check_spin, odd_parity_subspace

SUBSPACES = ("full", "odd")


@dataclass(frozen=True)
class KickedTopParams:
    """Torsion strength, rotation angle, spin size, perturbation, sector."""

    alpha: float
    gamma: float
    J: float
    delta: float = 0.0
    subspace: str = "full"

    def __post_init__(self):
        _check_spin(self.J)
        if self.subspace not in SUBSPACES:
            raise InvalidParameterError(f"subspace must be one of {SUBSPACES}")
        if self.subspace == "odd" and (round(self.J) != self.J or int(self.J) % 2 != 0):
            raise InvalidParameterError("odd-parity sector needs even integer J")
        if self.delta < 0:
            raise InvalidParameterError("delta must be >= 0")

    @property
    def hbar(self) -> float:
        return 1.0 / self.J

    @property
    def dim(self) -> int:
        return int(self.J) if self.subspace == "odd" else round(2 * self.J) + 1

    def perturbed(self) -> "KickedTopParams":
        """Same parameters with the torsion shifted by delta."""
        return KickedTopParams(self.alpha + self.delta, self.gamma, self.J,
                               self.delta, self.subspace)


@lru_cache(maxsize=32)
def _odd_sector_y_eigensystem(J: int):
    """Eigensystem of Jy restricted to the odd-parity sector.

    In the k = 1..J sector basis, Jy has the same ladder structure as in the
    full space: <k+1|Jy|k> = -i sqrt(J(J+1) - k(k+1))/2.  A diagonal gauge
    i^k maps it to a real symmetric tridiagonal matrix, so the eigensystem
    costs O(J^2) instead of a dense complex solve.
    """
    k = np.arange(1, J + 1)
    off = np.sqrt(J * (J + 1.0) - k[:-1] * (k[:-1] + 1.0)) / 2.0
    vals, vecs = la.eigh_tridiagonal(np.zeros(J), -off)
    gauge = 1j ** k
    vecs = gauge[:, np.newaxis] * vecs
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return vals, vecs


@lru_cache(maxsize=32)
def _odd_sector_rotation(J: int, gamma: float) -> np.ndarray:
    vals, vecs = _odd_sector_y_eigensystem(J)
    u = (vecs * np.exp(-1j * gamma * vals)) @ vecs.conj().T
    u.setflags(write=False)
    return u


def _torsion_phases(labels: np.ndarray, alpha: float, J: float) -> np.ndarray:
    return np.exp(-1j * alpha * labels.astype(float) ** 2 / (2.0 * J))


def kt_propagator(params: KickedTopParams) -> OperatorMatrix:
    """One-kick unitary U(alpha, gamma) on the chosen (sub)space."""
    J = params.J
    if params.subspace == "odd":
        jint = int(J)
        rot = _odd_sector_rotation(jint, params.gamma)
        u = rot * _torsion_phases(np.arange(1, jint + 1), params.alpha, J)
    else:
        from .spin import rotation_unitary

        m = -J + np.arange(round(2 * J) + 1)
        rot = rotation_unitary("y", params.gamma, J).entries
        u = rot * _torsion_phases(m, params.alpha, J)
    return OperatorMatrix.unitary(u)


def kt_perturbed_propagator(params: KickedTopParams) -> OperatorMatrix:
    """U(alpha + delta, gamma); equals U exp(-i V delta / hbar) with hbar = 1/J."""
    return kt_propagator(params.perturbed())


def _projected_propagator(params: KickedTopParams) -> OperatorMatrix:
    """Reference path: build U in the full space and project to the odd sector."""
    full = KickedTopParams(params.alpha, params.gamma, params.J, params.delta, "full")
    u = kt_propagator(full).entries
    p = odd_parity_subspace(params.J)
    return OperatorMatrix.unitary(p.project_operator(u))


def _sector_labels(J: float, subspace: str) -> np.ndarray:
    if subspace == "odd":
        return np.arange(1, int(J) + 1).astype(float)
    return -J + np.arange(round(2 * J) + 1)


def kt_perturbation(J, subspace: str = "full") -> OperatorMatrix:
    """Perturbation generator V = (Jz/J)^2 / 2, diagonal in both sectors."""
    J = _check_spin(J)
    labels = _sector_labels(J, subspace)
    return OperatorMatrix.hermitian(np.diag(labels**2 / (2.0 * J**2)).astype(complex))


def traceless_shift(J: float) -> float:
    """Constant subtracted to detrend V; equals the odd-sector mean of V."""
    return (2 * J + 1) * (J + 1) / (12.0 * J**2)


def kt_traceless_perturbation(J, subspace: str = "full", exact: bool = False) -> OperatorMatrix:
    """V minus a constant: the standard shift (2J+1)(J+1)/12J^2, or the exact
    sector mean when ``exact`` is set.

    The standard shift makes V traceless exactly on the odd-parity sector;
    on the full space a residual mean of order 1/J^2 remains, which the
    ``exact`` option removes.
    """
    J = _check_spin(J)
    v = kt_perturbation(J, subspace).entries.copy()
    dim = v.shape[0]
    shift = np.trace(v).real / dim if exact else traceless_shift(J)
    return OperatorMatrix.hermitian(v - shift * np.eye(dim))


# --- classical limit ---------------------------------------------------------


@dataclass(frozen=True)
class SphereState:
    """Point on the unit sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        r2 = self.x**2 + self.y**2 + self.z**2
        if abs(r2 - 1.0) > 1e-12:
            raise InvalidParameterError(f"|r|^2 - 1 = {r2 - 1:.3e}, not a unit vector")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def kt_classical_map(r: SphereState, alpha: float, gamma: float) -> SphereState:
    """One step of the classical sphere map (rotation about y after torsion)."""
    x = np.array([r.x])
    y = np.array([r.y])
    z = np.array([r.z])
    _kernel.map_step(x, y, z, alpha, gamma)
    drift = abs(x[0] ** 2 + y[0] ** 2 + z[0] ** 2 - 1.0)
    if drift > 1e-12:
        n = np.sqrt(x[0] ** 2 + y[0] ** 2 + z[0] ** 2)
        return SphereState(x[0] / n, y[0] / n, z[0] / n)
    return SphereState(float(x[0]), float(y[0]), float(z[0]))


def uniform_sphere(n: int, rng) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact uniform sampling: z ~ U(-1,1), azimuth ~ U(0,2pi)."""
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2 * np.pi, n)
    rho = np.sqrt(1.0 - z * z)
    return rho * np.cos(phi), rho * np.sin(phi), z


@dataclass(frozen=True)
class ClassicalCorrelation:
    """Correlation of v = z^2/2 along the classical map, with running sums.

    series[t] is the connected correlation C_cl(t); sigma_partial[t] the
    running transport sum C(0)/2 + sum_{1..t} C; sigma the value at the
    adaptive cutoff t_cut, with a standard error from disjoint sample blocks.
    """

    series: np.ndarray
    series_se: np.ndarray
    sigma_partial: np.ndarray
    n_samples: int
    sigma: float
    sigma_se: float
    t_cut: int
    n_origins: int
    kernel: str

    @property
    def t_max(self) -> int:
        return len(self.series) - 1

    def mean_correlation(self, t_lo: int = 0) -> float:
        """Average of C_cl(t) over t >= t_lo; the long-time correlation level."""
        return float(np.mean(self.series[t_lo:]))


def _choose_t_cut(series, series_se, sigma_partial, window: int = 30) -> int:
    """Cutoff for the transport sum.

    Primary rule: first t where |C| stays below 3x its Monte-Carlo standard
    error over the next ``window`` steps, i.e. where the remaining tail is
    statistically zero and integrating further only accumulates noise.
    Falls back to the first t whose forward running-sum drift stays below 1%
    of the accumulated value, then to min(t_max, 1000).
    """
    t_max = len(series) - 1
    hi = t_max + 1 - window
    for t in range(1, hi):
        seg = slice(t, t + window)
        if np.all(np.abs(series[seg]) < 3.0 * series_se[seg]):
            return t
    for t in range(1, hi):
        drift = np.max(np.abs(sigma_partial[t : t + window + 1] - sigma_partial[t]))
        if drift <= 0.01 * abs(sigma_partial[t]):
            return t
    return min(t_max, 1000)


def kt_classical_correlation(
    alpha: float,
    gamma: float,
    n_samples: int,
    t_max: int,
    seed: int,
    n_origins: int = 64,
    origin_spacing: int = 4,
    n_blocks: int = 16,
) -> ClassicalCorrelation:
    """Monte-Carlo estimate of C_cl(t) and the transport sum sigma_cl.

    Averages over ``n_samples`` uniform initial conditions; each trajectory
    additionally contributes ``n_origins`` time origins (the uniform measure
    is invariant, so every origin is an unbiased sample).  Block statistics
    over disjoint sample groups give the quoted standard errors.
    """
    if n_samples < 1:
        raise InvalidParameterError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    x, y, z = uniform_sphere(n_samples, rng)

    n_blocks = max(1, min(n_blocks, n_samples))
    bounds = np.linspace(0, n_samples, n_blocks + 1).astype(int)
    sum_prod = np.zeros(t_max + 1)
    sum_lag = np.zeros(t_max + 1)
    sum_v0 = 0.0
    block_series = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi == lo:
            continue
        sp, sl, s0 = _kernel.correlation_sums(
            x[lo:hi], y[lo:hi], z[lo:hi], alpha, gamma, t_max, n_origins, origin_spacing
        )
        cnt = (hi - lo) * n_origins
        block_series.append(sp / cnt - (s0 / cnt) * (sl / cnt))
        sum_prod += sp
        sum_lag += sl
        sum_v0 += s0

    count = n_samples * n_origins
    series = sum_prod / count - (sum_v0 / count) * (sum_lag / count)
    sigma_partial = 0.5 * series[0] + np.concatenate(([0.0], np.cumsum(series[1:])))

    if len(block_series) > 1:
        blocks = np.array(block_series)
        series_se = blocks.std(axis=0, ddof=1) / np.sqrt(len(block_series))
    else:
        series_se = np.full(t_max + 1, np.nan)

    t_cut = _choose_t_cut(series, series_se, sigma_partial)
    sigma = float(sigma_partial[t_cut])

    if len(block_series) > 1:
        block_sigma = [0.5 * s[0] + np.sum(s[1 : t_cut + 1]) for s in block_series]
        sigma_se = float(np.std(block_sigma, ddof=1) / np.sqrt(len(block_sigma)))
    else:
        sigma_se = float("nan")

    return ClassicalCorrelation(
        series=series,
        series_se=series_se,
        sigma_partial=sigma_partial,
        n_samples=n_samples,
        sigma=sigma,
        sigma_se=sigma_se,
        t_cut=t_cut,
        n_origins=n_origins,
        kernel=_kernel.KERNEL,
    )


def suggest_mixing_time(corr: ClassicalCorrelation, rel: float = 0.05) -> int:
    """First t after which |C(t)| stays below ``rel`` * C(0); advisory only."""
    c0 = corr.series[0]
    below = np.abs(corr.series) < rel * c0
    for t in range(len(below)):
        if below[t:].all():
            return t
    return corr.t_max


def classical_sigma_of_time(series: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Finite-time transport sum sigma(t) = sum_{t',t''<t} C(t'-t'') / 2t."""
    out = np.empty(len(times))
    tau = np.arange(len(series))
    for i, t in enumerate(times):
        t = int(t)
        if t < 1:
            out[i] = np.nan
            continue
        upto = min(t - 1, len(series) - 1)
        weights = (t - tau[: upto + 1]).astype(float)
        total = t * series[0] + 2.0 * np.dot(weights[1:], series[1 : upto + 1])
        out[i] = total / (2.0 * t)
    return out
