"""Small dense complex linear algebra helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every
function validates its inputs (shape, finiteness) and raises
:class:`~lupullback.errors.ShapeError` or
:class:`~lupullback.errors.ContractViolation` instead of silently
broadcasting.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, ShapeError

DEFAULT_ATOL = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Absolute comparison threshold."""

    atol: float = DEFAULT_ATOL

    def __post_init__(self):
        if not (self.atol > 0 and np.isfinite(self.atol)):
            raise ValueError(f"atol must be a positive finite number, got {self.atol!r}")


DEFAULT_TOL = Tolerance()


def as_tolerance(tol) -> Tolerance:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix has non-finite entries")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; the left factor indexes the coarse blocks."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Reduced matrix of a bipartite operator.

    ``dims = (d1, d2)`` and ``keep`` is 1 or 2 (the subsystem that survives).
    The traced slot is contracted explicitly, one diagonal block at a time.
    """
    rho = _square(rho)
    d1, d2 = (int(d) for d in dims)
    if d1 < 1 or d2 < 1 or rho.shape[0] != d1 * d2:
        raise ShapeError(f"matrix of size {rho.shape[0]} does not match dims {dims}")
    if keep == 1:
        out = np.zeros((d1, d1), dtype=np.complex128)
        for k in range(d2):
            idx = np.arange(d1) * d2 + k
            out += rho[np.ix_(idx, idx)]
        return out
    if keep == 2:
        out = np.zeros((d2, d2), dtype=np.complex128)
        for k in range(d1):
            idx = k * d2 + np.arange(d2)
            out += rho[np.ix_(idx, idx)]
        return out
    raise ValueError(f"keep must be 1 or 2, got {keep!r}")


def hermiticity_residual(a) -> float:
    a = _square(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(a, tol=None) -> bool:
    return hermiticity_residual(a) <= as_tolerance(tol).atol


def eigh(a, tol=None):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues real and sorted in
    descending order (ties keep the order LAPACK produced) and eigenvectors as
    the columns of a unitary matrix.
    """
    tol = as_tolerance(tol)
    a = _square(a)
    if not is_hermitian(a, tol):
        raise ContractViolation(
            f"matrix is not Hermitian (residual {hermiticity_residual(a):.3g} > {tol.atol:g})"
        )
    h = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(h)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    recon = (v * w) @ v.conj().T
    if a.size and np.max(np.abs(recon - a)) > 10 * tol.atol:
        raise ContractViolation("eigendecomposition failed to reproduce its input")
    return w, v


def svd(a):
    """Singular value decomposition ``a = U @ diag(s) @ V^dagger``.

    Returns ``(s, U, V)`` with ``s`` descending; note ``V`` (not ``V^dagger``).
    """
    a = as_matrix(a)
    u, s, vh = np.linalg.svd(a)
    return s, u, vh.conj().T


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0
