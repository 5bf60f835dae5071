"""Pull-back of the Hilbert-space Hermitian tensor onto local-unitary orbits.

For a fiducial state ``rho0`` and local generators ``R_j`` the coefficients

    K_jk = Tr(rho0 R_j R_k) - Tr(rho0 R_j) Tr(rho0 R_k)

form a Hermitian matrix. Its real part is the Riemannian (metric) part and
its imaginary part the pre-symplectic part. On the su(N) + su(N) basis the
real part splits into blocks ``[[A, C], [C^T, B]]`` where ``C`` carries the
entanglement correlations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConsistencyError, DomainError, ShapeError
from .states import DensityMatrix, FanoForm
from .subasis import LocalGeneratorFamily, StructureConstants


@dataclass(frozen=True, eq=False)
class PullbackTensor:
    k: np.ndarray
    labels: tuple
    fiducial: DensityMatrix
    family: LocalGeneratorFamily

    @property
    def symmetric(self) -> np.ndarray:
        return self.k.real.copy()

    @property
    def antisymmetric(self) -> np.ndarray:
        return self.k.imag.copy()


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def assemble(self) -> np.ndarray:
        return np.block([[self.a, self.c], [self.c.T, self.b]])


def _check_dims(rho0: DensityMatrix, family: LocalGeneratorFamily):
    if tuple(rho0.dims) != family.dims:
        raise ShapeError(f"state dims {rho0.dims} do not match generator family {family.dims}")


def pullback_tensor(rho0: DensityMatrix, family: LocalGeneratorFamily) -> PullbackTensor:
    """Coefficients ``K_jk`` by direct trace evaluation."""
    _check_dims(rho0, family)
    r = rho0.matrix
    gens = family.stack
    # Tr(rho R_j R_k) = sum rho_pq (R_j)_qs (R_k)_sp
    second = np.einsum("pq,jqs,ksp->jk", r, gens, gens)
    first = np.einsum("pq,jqp->j", r, gens)
    k = second - np.outer(first, first)
    k.setflags(write=False)
    return PullbackTensor(k=k, labels=family.labels, fiducial=rho0, family=family)


def split(t: PullbackTensor):
    """``(Re K, Im K)``: the symmetric and antisymmetric parts."""
    return t.symmetric, t.antisymmetric


def blocks(symmetric, family: LocalGeneratorFamily) -> BlockDecomposition:
    """Cut the symmetric part into the subsystem blocks ``A``, ``B`` and mixed ``C``."""
    if family.include_identity:
        raise DomainError("blocks are defined on the su(N) basis; drop the identity directions")
    sym = np.asarray(symmetric, dtype=float)
    h = family.n**2 - 1
    if sym.shape != (2 * h, 2 * h):
        raise ShapeError(f"expected a {2 * h}x{2 * h} matrix, got {sym.shape}")
    a, b = sym[:h, :h], sym[h:, h:]
    c, c_low = sym[:h, h:], sym[h:, :h]
    if np.max(np.abs(c - c_low.T)) > 1e-12:
        raise ConsistencyError("off-diagonal blocks are not transposes of each other")
    return BlockDecomposition(a=a.copy(), b=b.copy(), c=c.copy())


def fano_block_coefficients(f: FanoForm, sc: StructureConstants) -> BlockDecomposition:
    """Closed-form ``A``, ``B``, ``C`` from Fano data.

    ``A_ab = (2/N) delta_ab + d_abc n_c - n_a n_b`` (likewise ``B`` with ``m``)
    and ``C_ab = t_ab - n_a m_b``. The ``d`` term enters with unit weight in the
    halved-anticommutator convention; this was fixed by matching against
    :func:`pullback_tensor` on random qutrit states.
    """
    h = f.n_local**2 - 1
    if sc.d.shape != (h, h, h) or np.shape(f.n) != (h,) or np.shape(f.m) != (h,):
        raise ShapeError("Fano data and structure constants disagree on N")
    eye = np.eye(h)
    a = sc.delta_coeff * eye + np.einsum("abc,c->ab", sc.d, f.n) - np.outer(f.n, f.n)
    b = sc.delta_coeff * eye + np.einsum("abc,c->ab", sc.d, f.m) - np.outer(f.m, f.m)
    return BlockDecomposition(a=a, b=b, c=f.t - np.outer(f.n, f.m))


def coadjoint_tensor(rho0: DensityMatrix, family: LocalGeneratorFamily) -> np.ndarray:
    """``M_jk = -Tr(rho0 [R_j, rho0][R_k, rho0])`` with raw commutators.

    Evaluated directly and through the expansion
    ``Tr(rho^3 R_j R_k) - 2 Tr(rho^2 R_j rho R_k) + Tr(rho^2 R_k rho R_j)``;
    the two must agree.
    """
    _check_dims(rho0, family)
    r = rho0.matrix
    gens = family.stack
    comms = np.einsum("jab,bc->jac", gens, r) - np.einsum("ab,jbc->jac", r, gens)
    direct = -np.einsum("pq,jqs,ksp->jk", r, comms, comms)

    r2 = r @ r
    r3 = r2 @ r
    t1 = np.einsum("pq,jqs,ksp->jk", r3, gens, gens)
    r2g = np.einsum("ab,jbc->jac", r2, gens)
    rg = np.einsum("ab,jbc->jac", r, gens)
    # Tr(rho^2 R_j rho R_k) = Tr((rho^2 R_j)(rho R_k))
    t2 = np.einsum("jab,kba->jk", r2g, rg)
    expanded = t1 - 2 * t2 + t2.T
    resid = linalg.max_abs(direct - expanded)
    if resid > 1e-9:
        raise ConsistencyError(f"coadjoint tensor evaluations disagree ({resid:.3g})")
    return direct


def commutator_norms(rho0: DensityMatrix, family: LocalGeneratorFamily) -> np.ndarray:
    """Max-entry norm of ``[R_j, rho0]`` for every generator."""
    _check_dims(rho0, family)
    r = rho0.matrix
    gens = family.stack
    comms = np.einsum("jab,bc->jac", gens, r) - np.einsum("ab,jbc->jac", r, gens)
    return np.abs(comms).reshape(len(gens), -1).max(axis=1)


def degeneracy_directions(rho0: DensityMatrix, family: LocalGeneratorFamily, tol=None) -> list:
    """Generators commuting with ``rho0``; the coadjoint tensor vanishes along them."""
    tol = linalg.as_tolerance(tol)
    return [j for j, c in enumerate(commutator_norms(rho0, family)) if c <= tol.atol]


def single_subsystem_tensor(rho, basis) -> np.ndarray:
    """``K_ab = Tr(rho s_a s_b) - Tr(rho s_a) Tr(rho s_b)`` on one factor."""
    rho = linalg.as_matrix(rho)
    s = np.array(basis.traceless)
    if rho.shape != s.shape[1:]:
        raise ShapeError(f"state of shape {rho.shape} does not match basis N = {basis.n}")
    second = np.einsum("pq,aqs,bsp->ab", rho, s, s)
    first = np.einsum("pq,aqp->a", rho, s)
    return second - np.outer(first, first)


def mixed_block(t: PullbackTensor) -> np.ndarray:
    """Complex block of ``K`` coupling subsystem 1 rows to subsystem 2 columns."""
    fam = t.family
    return t.k[np.ix_(fam.indices(1, identity=True), fam.indices(2, identity=True))]


def gram_matrix(t: PullbackTensor) -> np.ndarray:
    """Real part of ``K`` restricted to the traceless generator directions."""
    idx = [j for j, a in enumerate(t.family.local_index_of) if a != 0]
    return t.symmetric[np.ix_(idx, idx)]


def symmetric_spectrum(t: PullbackTensor, tol=None) -> np.ndarray:
    """Descending eigenvalues of the Gram matrix."""
    w, _ = linalg.eigh(gram_matrix(t), tol)
    return w
