"""Pure and mixed bipartite states, Schmidt data and the Fano form.

Fano coefficients are expectation values::

    n_a = Tr(rho s_a x 1),  m_b = Tr(rho 1 x s_b),  t_ab = Tr(rho s_a x s_b)

so that ``t_ab - n_a m_b`` is exactly the mixed block of the symmetric
pull-back tensor for every local dimension N.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ContractViolation, DomainError, ShapeError
from .subasis import GeneratorBasis, gell_mann_basis

PURITY_GATE = 1e-8


def _dims(dims) -> tuple:
    try:
        d1, d2 = (int(d) for d in dims)
    except (TypeError, ValueError):
        raise ShapeError(f"dims must be a pair of positive integers, got {dims!r}") from None
    if d1 < 1 or d2 < 1:
        raise ShapeError(f"dims must be positive, got {dims!r}")
    return d1, d2


@dataclass(frozen=True, eq=False)
class PureState:
    dims: tuple
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix on ``C^d1 x C^d2``.

    Construction checks Hermiticity and trace only; positivity is reported by
    :meth:`is_valid` / :meth:`validate` because the Fano map may produce
    non-positive matrices on purpose.
    """

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise ShapeError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))[::-1]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self) -> bool:
        return self.purity() >= 1 - PURITY_GATE

    def reduced(self, keep: int) -> np.ndarray:
        return linalg.partial_trace(self.matrix, self.dims, keep)

    def problems(self, atol: float = 1e-10) -> list:
        out = []
        herm = linalg.hermiticity_residual(self.matrix)
        if herm > atol:
            out.append(f"not Hermitian (residual {herm:.3g})")
        tr = np.trace(self.matrix)
        if abs(tr - 1) > atol:
            out.append(f"trace {tr.real:.12g} != 1")
        lo = self.eigenvalues().min()
        if lo < -1e-9:
            out.append(f"negative eigenvalue {lo:.3g}")
        return out

    def is_valid(self, atol: float = 1e-10) -> bool:
        return not self.problems(atol)

    def validate(self, atol: float = 1e-10) -> "DensityMatrix":
        probs = self.problems(atol)
        if probs:
            raise ContractViolation("invalid density matrix: " + "; ".join(probs))
        return self


@dataclass(frozen=True, eq=False)
class SchmidtData:
    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray
    alpha0: float | None = None

    @property
    def rank(self) -> int:
        return int(np.sum(self.coefficients > 1e-9))


@dataclass(frozen=True, eq=False)
class FanoForm:
    n_local: int
    lambda0: float
    n: np.ndarray
    m: np.ndarray
    t: np.ndarray = field(repr=False)

    @property
    def correlation(self) -> np.ndarray:
        """``t_ab - n_a m_b``."""
        return self.t - np.outer(self.n, self.m)


def pure_state(amplitudes, dims) -> PureState:
    """Normalize ``amplitudes`` into a :class:`PureState` on ``dims``."""
    dims = _dims(dims)
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.size != dims[0] * dims[1]:
        raise ShapeError(f"{psi.size} amplitudes do not match dims {dims}")
    if not np.all(np.isfinite(psi)):
        raise ContractViolation("amplitudes contain non-finite values")
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise DomainError("the zero vector does not define a state")
    psi = psi / norm
    psi.setflags(write=False)
    return PureState(dims=dims, amplitudes=psi)


def density_matrix(matrix, dims, atol: float = 1e-10) -> DensityMatrix:
    dims = _dims(dims)
    m = linalg.as_matrix(matrix).copy()
    if m.shape != (dims[0] * dims[1],) * 2:
        raise ShapeError(f"matrix shape {m.shape} does not match dims {dims}")
    herm = linalg.hermiticity_residual(m)
    if herm > atol:
        raise ContractViolation(f"density matrix is not Hermitian (residual {herm:.3g})")
    if abs(np.trace(m) - 1) > atol:
        raise ContractViolation(f"density matrix trace {np.trace(m).real:.12g} != 1")
    m.setflags(write=False)
    return DensityMatrix(dims=dims, matrix=m)


def schmidt_state(alpha0: float) -> PureState:
    """``cos(alpha0)|00> + sin(alpha0)|11>`` for ``0 <= alpha0 <= pi/4``."""
    alpha0 = float(alpha0)
    if not (0.0 <= alpha0 <= np.pi / 4):
        raise DomainError(f"alpha0 must lie in [0, pi/4], got {alpha0!r}")
    return pure_state([np.cos(alpha0), 0.0, 0.0, np.sin(alpha0)], (2, 2))


def maximally_entangled(n: int) -> PureState:
    psi = np.zeros(n * n)
    psi[:: n + 1] = 1.0
    return pure_state(psi, (n, n))


def product_pure(a, b) -> PureState:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return pure_state(np.kron(a, b), (a.size, b.size))


def density_from_pure(psi) -> DensityMatrix:
    """Projector ``|psi><psi| / <psi|psi>``; accepts unnormalized input."""
    if not isinstance(psi, PureState):
        raise TypeError("density_from_pure expects a PureState (see pure_state)")
    v = psi.amplitudes
    norm2 = np.vdot(v, v).real
    if norm2 == 0:
        raise DomainError("the zero vector does not define a state")
    rho = np.outer(v, v.conj()) / norm2
    rho.setflags(write=False)
    return DensityMatrix(dims=psi.dims, matrix=rho)


def product_density(rho1, rho2) -> DensityMatrix:
    rho1, rho2 = linalg.as_matrix(rho1), linalg.as_matrix(rho2)
    return density_matrix(linalg.kron(rho1, rho2), (rho1.shape[0], rho2.shape[0]))


def coefficient_matrix(psi: PureState) -> np.ndarray:
    """Amplitudes reshaped to ``d1 x d2`` (left slot indexes rows)."""
    return psi.amplitudes.reshape(psi.dims)


def schmidt_decompose(psi: PureState, dims=None) -> SchmidtData:
    if dims is not None:
        dims = _dims(dims)
        if dims[0] * dims[1] != psi.dim:
            raise ShapeError(f"dims {dims} do not match a state of dimension {psi.dim}")
    else:
        dims = psi.dims
    s, u, v = linalg.svd(psi.amplitudes.reshape(dims))
    k = len(s)
    # right Schmidt vectors: psi = sum_i s_i u_i x conj(v_i)
    left, right = u[:, :k], v[:, :k].conj()
    alpha0 = None
    if dims == (2, 2):
        alpha0 = float(np.arctan2(s[1], s[0]))
    return SchmidtData(coefficients=s, left=left, right=right, alpha0=alpha0)


def _local_ops(basis: GeneratorBasis):
    s = np.array(basis.traceless)
    eye = np.eye(basis.n)
    left = np.array([np.kron(a, eye) for a in s])
    right = np.array([np.kron(eye, a) for a in s])
    return s, left, right


def to_fano(rho: DensityMatrix, basis: GeneratorBasis | None = None,
            atol: float = 1e-9) -> FanoForm:
    """Expectation-value Fano coefficients of a bipartite ``N x N`` matrix."""
    n_local = rho.dims[0]
    if rho.dims[0] != rho.dims[1]:
        raise ShapeError(f"Fano form needs equal local dimensions, got {rho.dims}")
    basis = basis if basis is not None else gell_mann_basis(n_local)
    if basis.n != n_local:
        raise ShapeError(f"basis dimension {basis.n} does not match state dims {rho.dims}")
    s, left, right = _local_ops(basis)
    r = rho.matrix
    lam = np.trace(r)
    n = np.einsum("ij,aji->a", r, left)
    m = np.einsum("ij,aji->a", r, right)
    prods = np.array([[np.kron(a, b) for b in s] for a in s])
    t = np.einsum("ij,abji->ab", r, prods)
    resid = max(abs(lam.imag), np.abs(n.imag).max(), np.abs(m.imag).max(), np.abs(t.imag).max())
    if resid > atol:
        raise ContractViolation(f"Fano coefficients have imaginary residue {resid:.3g}")
    return FanoForm(n_local=n_local, lambda0=float(lam.real), n=n.real, m=m.real, t=t.real)


def from_fano(f: FanoForm, basis: GeneratorBasis | None = None) -> DensityMatrix:
    """Inverse of :func:`to_fano`; positivity is not enforced."""
    N = f.n_local
    basis = basis if basis is not None else gell_mann_basis(N)
    k = N * N - 1
    if basis.n != N:
        raise ShapeError(f"basis dimension {basis.n} does not match N = {N}")
    if np.shape(f.n) != (k,) or np.shape(f.m) != (k,) or np.shape(f.t) != (k, k):
        raise ShapeError(f"Fano arrays do not have the shapes required for N = {N}")
    s, left, right = _local_ops(basis)
    rho = f.lambda0 * np.eye(N * N, dtype=np.complex128)
    rho = rho + (N / 2) * (np.einsum("a,aij->ij", f.n, left) + np.einsum("a,aij->ij", f.m, right))
    prods = np.array([[np.kron(a, b) for b in s] for a in s])
    rho = rho + (N * N / 4) * np.einsum("ab,abij->ij", f.t, prods)
    rho = rho / (N * N)
    rho.setflags(write=False)
    return DensityMatrix(dims=(N, N), matrix=rho)


def is_separable_pure(rho: DensityMatrix, basis: GeneratorBasis | None = None,
                      tol=None) -> bool:
    """Pure-state separability test ``max |t_ab - n_a m_b| <= atol``."""
    tol = linalg.as_tolerance(tol)
    if abs(rho.purity() - 1) > max(tol.atol, PURITY_GATE):
        raise DomainError(f"separability criterion needs a pure state (purity {rho.purity():.12g})")
    f = to_fano(rho, basis)
    return linalg.max_abs(f.correlation) <= tol.atol


# JSON wire format shared with the CLI:
#   {"dims": [d1, d2], "amplitudes": [[re, im], ...]}
#   {"dims": [d1, d2], "matrix": [[[re, im], ...], ...]}

def _complex_array(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ShapeError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _pairs(a) -> list:
    a = np.asarray(a)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def state_from_json(doc: dict):
    """Parse a state document into a :class:`PureState` or :class:`DensityMatrix`."""
    if not isinstance(doc, dict) or "dims" not in doc:
        raise ShapeError('state document must be an object with a "dims" field')
    dims = _dims(doc["dims"])
    if "amplitudes" in doc:
        return pure_state(_complex_array(doc["amplitudes"]), dims)
    if "matrix" in doc:
        return density_matrix(_complex_array(doc["matrix"]), dims).validate()
    raise ShapeError('state document needs "amplitudes" or "matrix"')


def state_to_json(state) -> dict:
    if isinstance(state, PureState):
        return {"dims": list(state.dims), "amplitudes": _pairs(state.amplitudes)}
    if isinstance(state, DensityMatrix):
        return {"dims": list(state.dims), "matrix": _pairs(state.matrix)}
    raise TypeError(f"cannot serialize {type(state).__name__}")
