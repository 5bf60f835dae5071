"""Entanglement quantifiers built on the pull-back tensor.

Conventions worth knowing:

* ``concurrence`` is ``sqrt(tangle)`` with ``tangle = det Tr_1 rho``; for
  ``cos a|00> + sin a|11>`` this is ``sin(2a) / 2``, half the Wootters value.
* ``segre_quantity`` is ``Z0 Z3 - Z1 Z2``. It equals ``cos a sin a`` on the
  Schmidt family and ``|Z0 Z3 - Z1 Z2| = sqrt(tangle)`` for every two-qubit
  pure state (it is the determinant of the coefficient matrix).
* With expectation-value Fano coefficients, ``Tr(R R^dagger) = tr(C^T C) / 4``
  for every N.
* Entropies are in nats.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, ShapeError
from .pullback import blocks, pullback_tensor, split
from .states import DensityMatrix, PureState, coefficient_matrix, density_from_pure
from .subasis import local_family

RR_PER_CTC = 0.25


def schlienz_mahler(c, n_local: int) -> float:
    """``N^2 / (4 (N^2 - 1)) * sum_ab c_ab^2``."""
    c = np.asarray(c, dtype=float)
    h = n_local**2 - 1
    if c.shape != (h, h):
        raise ShapeError(f"C must be {h}x{h} for N = {n_local}, got {c.shape}")
    return float(n_local**2 / (4 * h) * np.sum(c * c))


def trace_rr(rho: DensityMatrix, atol: float = 1e-10) -> float:
    """``Tr(R R^dagger)`` for ``R = rho - rho_1 x rho_2``; mixed states allowed."""
    r = rho.matrix
    r1, r2 = rho.reduced(1), rho.reduced(2)
    prod = np.kron(r1, r2)
    diff = r - prod
    direct = float(np.real(np.trace(diff @ diff.conj().T)))
    expanded = float(np.real(
        np.trace(r @ r)
        + np.trace(r1 @ r1) * np.trace(r2 @ r2)
        - 2 * np.trace(r @ prod)
    ))
    if abs(direct - expanded) > atol:
        raise ConsistencyError(f"Tr(RR^dagger) evaluations disagree: {direct!r} vs {expanded!r}")
    return direct


def _two_qubit(psi: PureState):
    if tuple(psi.dims) != (2, 2):
        raise ShapeError(f"two-qubit quantity needs dims (2, 2), got {psi.dims}")


def tangle(psi: PureState) -> float:
    """``det Tr_1 |psi><psi|`` (equal to ``det Tr_2``), clamped at zero."""
    _two_qubit(psi)
    rho = density_from_pure(psi)
    tau = float(np.real(np.linalg.det(rho.reduced(2))))
    return 0.0 if tau < 1e-14 else tau


def concurrence(psi: PureState) -> float:
    return float(np.sqrt(tangle(psi)))


def segre_quantity(psi: PureState) -> complex:
    _two_qubit(psi)
    z0, z1, z2, z3 = psi.amplitudes
    return complex(z0 * z3 - z1 * z2)


def entanglement_entropy(psi: PureState, dims=None) -> float:
    """Von Neumann entropy (nats) of the reduced state, ``0 ln 0 := 0``."""
    if dims is not None and tuple(int(d) for d in dims) != tuple(psi.dims):
        if int(dims[0]) * int(dims[1]) != psi.dim:
            raise ShapeError(f"dims {dims} do not match a state of dimension {psi.dim}")
        psi = PureState(dims=(int(dims[0]), int(dims[1])), amplitudes=psi.amplitudes)
    # reduced spectrum = squared singular values of the coefficient matrix
    p = np.linalg.svd(coefficient_matrix(psi), compute_uv=False) ** 2
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log(p))))


@dataclass(frozen=True)
class MeasureReport:
    schlienz_mahler: float | None
    trace_rr: float
    entropy: float
    tangle: float | None = None
    concurrence: float | None = None
    segre: complex | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def correlation_block(rho: DensityMatrix) -> np.ndarray:
    """``C`` block of the symmetric pull-back tensor at ``rho``."""
    n = rho.dims[0]
    if rho.dims[0] != rho.dims[1]:
        raise DomainError(f"local-unitary tensor needs equal local dimensions, got {rho.dims}")
    fam = local_family(n)
    sym, _ = split(pullback_tensor(rho, fam))
    return blocks(sym, fam).c


def measure_report(psi: PureState, dims=None) -> MeasureReport:
    if dims is not None and psi.dims != tuple(int(d) for d in dims):
        raise ShapeError(f"state dims {psi.dims} differ from requested {tuple(dims)}")
    rho = density_from_pure(psi)
    sm = None
    if psi.dims[0] == psi.dims[1]:
        sm = schlienz_mahler(correlation_block(rho), psi.dims[0])
    kw = {}
    if tuple(psi.dims) == (2, 2):
        tau = tangle(psi)
        kw = dict(tangle=tau, concurrence=float(np.sqrt(tau)), segre=segre_quantity(psi))
    return MeasureReport(schlienz_mahler=sm, trace_rr=trace_rr(rho),
                         entropy=entanglement_entropy(psi), **kw)
