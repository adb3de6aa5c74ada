"""SU(2) representation machinery: spin matrices, rotations, coherent states.

Conventions: basis ordered m = -J..J ascending everywhere; hbar = 1 for the
algebra (the models attach their own effective hbar = 1/J).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .core import (
    InvalidParameterError,
    OperatorMatrix,
    QuantumState,
    SpinBasis,
    SubspaceMap,
)

_AXES = ("x", "y", "z")


def _check_spin(J) -> float:
    SpinBasis(J)  # validates
    return float(J)


@lru_cache(maxsize=64)
def _angular_momentum_raw(J: float):
    """(Jx, Jy, Jz) as plain arrays in the ascending m basis."""
    dim = round(2 * J) + 1
    m = -J + np.arange(dim)
    jz = np.diag(m.astype(complex))
    # <m+1| J+ |m> = sqrt(J(J+1) - m(m+1))
    cplus = np.sqrt(J * (J + 1) - m[:-1] * (m[:-1] + 1))
    jplus = np.zeros((dim, dim), dtype=complex)
    jplus[np.arange(1, dim), np.arange(dim - 1)] = cplus
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    for a in (jx, jy, jz):
        a.setflags(write=False)
    return jx, jy, jz


def angular_momentum(J) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """Spin-J angular momentum matrices (Jx, Jy, Jz), [Jk, Jl] = i eps_klr Jr."""
    J = _check_spin(J)
    jx, jy, jz = _angular_momentum_raw(J)
    return (
        OperatorMatrix.hermitian(jx),
        OperatorMatrix.hermitian(jy),
        OperatorMatrix.hermitian(jz),
    )


@lru_cache(maxsize=64)
def _axis_eigensystem(J: float, axis: str):
    jx, jy, jz = _angular_momentum_raw(J)
    mat = {"x": jx, "y": jy, "z": jz}[axis]
    import scipy.linalg as la

    vals, vecs = la.eigh(mat)
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return vals, vecs


def rotation_unitary(axis: str, angle: float, J) -> OperatorMatrix:
    """exp(-i * angle * J_axis), computed from a cached eigendecomposition."""
    if axis not in _AXES:
        raise InvalidParameterError(f"axis must be one of {_AXES}, got {axis!r}")
    if not np.isfinite(angle):
        raise InvalidParameterError("rotation angle must be finite")
    J = _check_spin(J)
    vals, vecs = _axis_eigensystem(J, axis)
    u = (vecs * np.exp(-1j * angle * vals)) @ vecs.conj().T
    return OperatorMatrix.unitary(u)


def su2_coherent(J, theta: float, phi: float) -> QuantumState:
    """Spin coherent state centered at polar angles (theta, phi).

    Amplitudes follow the binomial form
    c_m = binom(2J, J+m)^(1/2) cos(theta/2)^(J+m) sin(theta/2)^(J-m) e^(-i m phi),
    evaluated in log space so large J does not overflow.
    """
    J = _check_spin(J)
    if not 0 <= theta <= np.pi:
        raise InvalidParameterError(f"theta must lie in [0, pi], got {theta}")
    dim = round(2 * J) + 1
    m = -J + np.arange(dim)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    log_binom = 0.5 * (
        gammaln(2 * J + 1) - gammaln(J + m + 1) - gammaln(J - m + 1)
    )
    with np.errstate(divide="ignore"):
        log_c = np.where(J + m > 0, (J + m) * np.log(np.maximum(c, 1e-300)), 0.0)
        log_s = np.where(J - m > 0, (J - m) * np.log(np.maximum(s, 1e-300)), 0.0)
    log_mag = log_binom + log_c + log_s
    # exact zeros at the poles
    if c == 0.0:
        log_mag = np.where(J + m > 0, -np.inf, log_mag)
    if s == 0.0:
        log_mag = np.where(J - m > 0, -np.inf, log_mag)
    mag = np.exp(log_mag - np.max(log_mag))
    amps = mag * np.exp(-1j * m * phi)
    amps = amps / np.linalg.norm(amps)
    return QuantumState(amps, basis_tag=f"spin-m:{J}")


def odd_parity_subspace(J) -> SubspaceMap:
    """Sector of spin J odd under a pi rotation about the y axis.

    Requires even integer J.  The J basis vectors, labeled by k = 1..J in the
    ascending-m convention, are (|k> + |-k>)/sqrt(2) for odd k and
    (|k> - |-k>)/sqrt(2) for even k.  This sector is invariant under any
    rotation about y and under any function of Jz^2, which is what the
    kicked-top propagator is built from.
    """
    J = _check_spin(J)
    if J <= 0 or round(J) != J or round(J) % 2 != 0:
        raise InvalidParameterError(f"odd-parity sector needs even integer J, got {J}")
    J = int(round(J))
    dim = 2 * J + 1
    cols = np.zeros((dim, J), dtype=complex)
    k = np.arange(1, J + 1)
    root = 1 / np.sqrt(2)
    for j, kj in enumerate(k):
        sign = 1.0 if kj % 2 == 1 else -1.0
        cols[J + kj, j] = root
        cols[J - kj, j] = sign * root
    return SubspaceMap(cols, labels=k)


def random_state(dim: int, seed: int) -> QuantumState:
    """Normalized vector of iid complex Gaussian amplitudes; seed-deterministic."""
    if dim < 1:
        raise InvalidParameterError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return QuantumState(v / np.linalg.norm(v))
