"""Shared value types: states, operators, subspaces, spectral decompositions.

All containers are frozen dataclasses holding read-only numpy arrays, so they
can be shared freely across threads.  Validation happens at construction and
enforces the algebraic role an object claims (hermitian, unitary, unit norm).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORM_TOL = 1e-10
ORTHO_TOL = 1e-12


class InvalidParameterError(ValueError):
    """Raised when arguments violate a documented precondition."""


class DimensionMismatchError(ValueError):
    """Raised when operators or states live on different spaces."""


class CutoffTooSmallError(ValueError):
    """Raised when a truncated basis cannot hold the requested state."""


def _readonly(a, dtype=None):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinBasis:
    """Magnetic-quantum-number basis of a single spin J, ordered m = -J..J."""

    J: float

    def __post_init__(self):
        two_j = 2 * self.J
        if self.J < 0 or abs(two_j - round(two_j)) > 1e-12:
            raise InvalidParameterError(f"J must be a nonnegative (half-)integer, got {self.J}")

    @property
    def dimension(self) -> int:
        return round(2 * self.J) + 1

    @property
    def labels(self) -> np.ndarray:
        """m values, ascending."""
        return -self.J + np.arange(self.dimension)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex square matrix with a declared algebraic role."""

    entries: np.ndarray
    role: str = "general"  # "hermitian" | "unitary" | "general"

    def __post_init__(self):
        entries = _readonly(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidParameterError(f"operator must be square, got shape {entries.shape}")
        if self.role == "hermitian":
            scale = max(np.max(np.abs(entries)), 1.0)
            dev = np.max(np.abs(entries - entries.conj().T))
            if dev > HERMITIAN_TOL * scale:
                raise InvalidParameterError(f"matrix not hermitian: max|A-A^+| = {dev:.3e}")
        elif self.role == "unitary":
            gram = entries.conj().T @ entries
            dev = np.max(np.abs(gram - np.eye(self.dim)))
            if dev > UNITARY_TOL:
                raise InvalidParameterError(f"matrix not unitary: max|A^+A-1| = {dev:.3e}")
        elif self.role != "general":
            raise InvalidParameterError(f"unknown role {self.role!r}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    @classmethod
    def hermitian(cls, entries) -> "OperatorMatrix":
        return cls(entries, role="hermitian")

    @classmethod
    def unitary(cls, entries) -> "OperatorMatrix":
        return cls(entries, role="unitary")


@dataclass(frozen=True)
class QuantumState:
    """Normalized complex amplitude vector over a labeled basis."""

    amplitudes: np.ndarray
    basis_tag: str = ""

    def __post_init__(self):
        amps = _readonly(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1:
            raise InvalidParameterError("state amplitudes must be a vector")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidParameterError(f"state not normalized: |psi| = {norm!r}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True)
class SubspaceMap:
    """Orthonormal columns spanning a symmetry subspace of a larger basis."""

    columns: np.ndarray
    labels: np.ndarray | None = None  # optional per-column quantum numbers

    def __post_init__(self):
        cols = _readonly(self.columns, dtype=complex)
        object.__setattr__(self, "columns", cols)
        if self.labels is not None:
            object.__setattr__(self, "labels", _readonly(self.labels))
        gram = cols.conj().T @ cols
        dev = np.max(np.abs(gram - np.eye(self.subdim)))
        if dev > ORTHO_TOL:
            raise InvalidParameterError(f"subspace columns not orthonormal: {dev:.3e}")

    @property
    def full_dim(self) -> int:
        return self.columns.shape[0]

    @property
    def subdim(self) -> int:
        return self.columns.shape[1]

    def project_operator(self, op) -> np.ndarray:
        """P^+ A P restricted to the subspace."""
        a = np.asarray(op, dtype=complex)
        return self.columns.conj().T @ a @ self.columns

    def project_state(self, psi, normalize=False) -> np.ndarray:
        v = self.columns.conj().T @ np.asarray(psi, dtype=complex)
        if normalize:
            n = np.linalg.norm(v)
            if n == 0:
                raise InvalidParameterError("state has no component in the subspace")
            v = v / n
        return v


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues and eigenvectors of a hermitian operator or unitary map.

    For kind="hermitian" the eigenvalues are energies E_n with
    H = V diag(E) V^+.  For kind="unitary" they are eigenphases phi_n with
    U = V diag(exp(-i phi)) V^+.  ``hbar`` travels with the decomposition so
    evolution phases exp(-i E t / hbar) can be formed without extra context.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    kind: str = "hermitian"  # "hermitian" | "unitary"
    hbar: float = 1.0

    def __post_init__(self):
        vals = _readonly(self.eigenvalues, dtype=float)
        vecs = _readonly(self.vectors, dtype=complex)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "vectors", vecs)
        if self.kind not in ("hermitian", "unitary"):
            raise InvalidParameterError(f"unknown decomposition kind {self.kind!r}")
        dev = np.max(np.abs(vecs.conj().T @ vecs - np.eye(self.dim)))
        if dev > UNITARY_TOL:
            raise InvalidParameterError(f"eigenvector matrix not unitary: {dev:.3e}")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def to_basis(self, psi) -> np.ndarray:
        """Components of psi in the eigenbasis."""
        return self.vectors.conj().T @ np.asarray(psi, dtype=complex)

    def from_basis(self, c) -> np.ndarray:
        return self.vectors @ np.asarray(c, dtype=complex)

    def unitary_phases(self, t) -> np.ndarray:
        """exp(-i phi t) (unitary) or exp(-i E t / hbar) (hermitian)."""
        if self.kind == "unitary":
            return np.exp(-1j * self.eigenvalues * t)
        return np.exp(-1j * self.eigenvalues * t / self.hbar)


def _phase_fix(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    phases = lead / np.abs(lead)
    return vectors / phases[np.newaxis, :]


def decompose_hermitian(op, hbar: float = 1.0) -> SpectralDecomposition:
    """Eigendecomposition of a hermitian operator, eigenvalues ascending."""
    h = np.asarray(op, dtype=complex)
    vals, vecs = la.eigh(h)
    vecs = _phase_fix(vecs)
    scale = max(np.max(np.abs(vals)), 1.0)
    resid = np.max(np.abs(h @ vecs - vecs * vals))
    if resid > 1e-9 * scale:
        raise InvalidParameterError(f"eigendecomposition residual too large: {resid:.3e}")
    return SpectralDecomposition(vals, vecs, kind="hermitian", hbar=hbar)


def decompose_unitary(op, hbar: float = 1.0) -> SpectralDecomposition:
    """Schur-based eigendecomposition of a unitary map.

    Returns eigenphases phi in (-pi, pi], sorted ascending, such that
    U v_n = exp(-i phi_n) v_n, with each eigenvector phase-fixed so that its
    largest component is real positive.
    """
    u = np.asarray(op, dtype=complex)
    t, z = la.schur(u, output="complex")
    phases = -np.angle(np.diag(t))
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vecs = _phase_fix(z[:, order])
    resid = np.max(np.abs(u @ vecs - vecs * np.exp(-1j * phases)))
    if resid > 1e-9:
        raise InvalidParameterError(f"unitary eigendecomposition residual: {resid:.3e}")
    return SpectralDecomposition(phases, vecs, kind="unitary", hbar=hbar)


def phase_gap(decomp: SpectralDecomposition) -> float:
    """Smallest gap between neighbouring eigenvalues (phases wrap around)."""
    vals = np.sort(decomp.eigenvalues)
    gaps = np.diff(vals)
    if decomp.kind == "unitary" and len(vals) > 1:
        wrap = vals[0] + 2 * np.pi - vals[-1]
        return float(min(gaps.min(), wrap))
    return float(gaps.min()) if len(vals) > 1 else np.inf
