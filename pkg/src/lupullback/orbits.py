"""Haar sampling, local-unitary orbit samples and orbit dimensions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError
from .pullback import gram_matrix, pullback_tensor
from .states import DensityMatrix, PureState, pure_state
from .subasis import LocalGeneratorFamily

RANK_ATOL = 1e-8


def rng_from(seed) -> np.random.Generator:
    """A generator from a 64-bit seed, or pass an existing generator through."""
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.default_rng(seed)


def haar_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary (QR of a Ginibre matrix, phases fixed)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = rng_from(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_state(dims, seed) -> PureState:
    """Haar-random pure state on ``C^d1 x C^d2``."""
    rng = rng_from(seed)
    d = int(dims[0]) * int(dims[1])
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return pure_state(v, dims)


def random_local_unitary(dims, seed) -> np.ndarray:
    rng = rng_from(seed)
    return np.kron(haar_unitary(dims[0], rng), haar_unitary(dims[1], rng))


@dataclass(frozen=True, eq=False)
class OrbitSample:
    base: DensityMatrix
    images: tuple
    unitaries: tuple


def transport(rho: DensityMatrix, u) -> DensityMatrix:
    m = u @ rho.matrix @ u.conj().T
    m = 0.5 * (m + m.conj().T)
    m.setflags(write=False)
    return DensityMatrix(dims=rho.dims, matrix=m)


def local_orbit_samples(rho0: DensityMatrix, count: int, seed) -> OrbitSample:
    """``count`` images ``(U1 x U2) rho0 (U1 x U2)^dagger`` with independent Haar factors."""
    rng = rng_from(seed)
    us, images = [], []
    for _ in range(int(count)):
        u = random_local_unitary(rho0.dims, rng)
        us.append(u)
        images.append(transport(rho0, u))
    return OrbitSample(base=rho0, images=tuple(images), unitaries=tuple(us))


def _require_pure(rho0: DensityMatrix):
    if not rho0.is_pure():
        raise DomainError(f"orbit dimension needs a pure state (purity {rho0.purity():.12g})")


def orbit_dimension(rho0: DensityMatrix, family: LocalGeneratorFamily, tol=None) -> int:
    """Rank of the Gram matrix ``Re K`` (eigenvalues above ``tol.atol``)."""
    tol = linalg.as_tolerance(tol if tol is not None else RANK_ATOL)
    _require_pure(rho0)
    w, _ = linalg.eigh(gram_matrix(pullback_tensor(rho0, family)))
    return int(np.sum(w > tol.atol))


def tangent_rank(rho0: DensityMatrix, family: LocalGeneratorFamily, tol=None) -> int:
    """Real rank of the tangent vectors ``[i R_j, rho0]`` (independent of ``K``)."""
    tol = linalg.as_tolerance(tol if tol is not None else RANK_ATOL)
    r = rho0.matrix
    rows = []
    for j, g in enumerate(family.generators):
        if family.local_index_of[j] == 0:
            continue
        v = 1j * (g @ r - r @ g)
        rows.append(np.concatenate([v.real.ravel(), v.imag.ravel()]))
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(s > tol.atol))
