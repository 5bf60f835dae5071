"""Generalized Gell-Mann generators of su(N) and the bipartite local family.

Normalization is ``Tr(sigma_a sigma_b) = 2 delta_ab`` for every N, so the
N = 2 basis is exactly (sigma_x, sigma_y, sigma_z). Commutators follow the
halved conventions used throughout the package::

    [A, B]_+ = (AB + BA) / 2        [A, B]_- = (AB - BA) / (2i)

so that ``[s_a, s_b]_- = eps_abc s_c`` and
``[s_a, s_b]_+ = (2/N) delta_ab 1 + d_abc s_c``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

_PAULI_LABELS = ("x", "y", "z")


def anticommutator(a, b):
    """Halved anticommutator ``(ab + ba) / 2``."""
    return 0.5 * (a @ b + b @ a)


def commutator(a, b):
    """Normalized commutator ``(ab - ba) / (2i)``."""
    return (a @ b - b @ a) / 2j


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    n: int
    locals: tuple
    labels: tuple
    include_identity: bool = False

    @property
    def size(self) -> int:
        return len(self.locals)

    @property
    def stack(self) -> np.ndarray:
        """Generators as one ``(size, n, n)`` array."""
        return np.array(self.locals)

    @property
    def traceless(self) -> tuple:
        """The N^2 - 1 traceless members, identity dropped if present."""
        return self.locals[: self.n**2 - 1]


@dataclass(frozen=True, eq=False)
class StructureConstants:
    eps: np.ndarray
    d: np.ndarray
    delta_coeff: float


@dataclass(frozen=True, eq=False)
class LocalGeneratorFamily:
    """Ordered generators ``s_a x 1`` followed by ``1 x s_a``.

    Indices are 0-based. ``local_index_of[j]`` gives the 1-based su(N) label
    ``a`` of generator ``j`` (0 for an identity member) and ``subsystem_of[j]``
    is 1 or 2.
    """

    n: int
    generators: tuple
    subsystem_of: tuple
    local_index_of: tuple
    labels: tuple
    include_identity: bool = False

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def stack(self) -> np.ndarray:
        return np.array(self.generators)

    @property
    def dims(self) -> tuple:
        return (self.n, self.n)

    def indices(self, subsystem: int, identity: bool = False) -> list:
        return [
            j
            for j, (s, a) in enumerate(zip(self.subsystem_of, self.local_index_of))
            if s == subsystem and (identity or a != 0)
        ]


def _check_n(n) -> int:
    if int(n) != n or n < 2:
        raise DomainError(f"local dimension must be an integer >= 2, got {n!r}")
    return int(n)


def gell_mann_basis(n: int, include_identity: bool = False) -> GeneratorBasis:
    """Generalized Gell-Mann matrices, ``Tr(s_a s_b) = 2 delta_ab``.

    Order: symmetric off-diagonals, antisymmetric off-diagonals (both
    lexicographic in the index pair), then the diagonal members. With
    ``include_identity`` the identity is appended last.
    """
    n = _check_n(n)
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    mats, labels = [], []
    for j, k in pairs:
        m = np.zeros((n, n), dtype=np.complex128)
        m[j, k] = m[k, j] = 1
        mats.append(m)
        labels.append(f"s{j + 1}{k + 1}")
    for j, k in pairs:
        m = np.zeros((n, n), dtype=np.complex128)
        m[j, k] = -1j
        m[k, j] = 1j
        mats.append(m)
        labels.append(f"a{j + 1}{k + 1}")
    for l in range(1, n):
        diag = np.zeros(n)
        diag[:l] = 1
        diag[l] = -l
        mats.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * diag).astype(np.complex128))
        labels.append(f"d{l}")
    if n == 2:
        labels = list(_PAULI_LABELS)
    if include_identity:
        mats.append(np.eye(n, dtype=np.complex128))
        labels.append("0")
    for m in mats:
        m.setflags(write=False)
    return GeneratorBasis(n=n, locals=tuple(mats), labels=tuple(labels),
                          include_identity=include_identity)


def structure_constants(basis: GeneratorBasis, atol: float = 1e-10) -> StructureConstants:
    """``eps_abc`` and ``d_abc`` of the traceless part of ``basis``.

    Both tensors are read off with the trace formulas
    ``eps_abc = Tr([s_a, s_b] s_c) / (4i)`` and
    ``d_abc = Tr({s_a, s_b} s_c) / 4`` (raw brackets), then the bracket
    expansions are rebuilt and compared entrywise against the generators.
    """
    s = np.array(basis.traceless)
    n = basis.n
    prod = np.einsum("aij,bjk->abik", s, s)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    eps_c = np.einsum("abij,cji->abc", comm, s) / 4j
    d_c = np.einsum("abij,cji->abc", anti, s) / 4
    if max(np.abs(eps_c.imag).max(), np.abs(d_c.imag).max()) > atol:
        raise ConsistencyError("structure constants are not real")
    eps, d = eps_c.real, d_c.real
    delta_coeff = 2.0 / n

    eye = np.eye(n)
    rebuilt_comm = np.einsum("abc,cij->abij", eps, s)
    rebuilt_anti = (delta_coeff * np.einsum("ab,ij->abij", np.eye(len(s)), eye)
                    + np.einsum("abc,cij->abij", d, s))
    residual = max(np.abs(comm / 2j - rebuilt_comm).max(),
                   np.abs(anti / 2 - rebuilt_anti).max())
    if residual > 1e-9:
        raise ConsistencyError(f"structure constants fail reconstruction ({residual:.3g})")
    return StructureConstants(eps=eps, d=d, delta_coeff=delta_coeff)


def local_family(n: int, include_identity: bool = False) -> LocalGeneratorFamily:
    """Bipartite generators ``R(e_j)``: ``s_a x 1`` for the first half, ``1 x s_a`` after.

    With ``include_identity`` each half ends with its identity member.
    """
    basis = gell_mann_basis(n, include_identity=include_identity)
    eye = np.eye(basis.n, dtype=np.complex128)
    gens, sub, loc, labels = [], [], [], []
    for subsystem in (1, 2):
        for a, (sig, lab) in enumerate(zip(basis.locals, basis.labels), start=1):
            g = np.kron(sig, eye) if subsystem == 1 else np.kron(eye, sig)
            g.setflags(write=False)
            gens.append(g)
            sub.append(subsystem)
            loc.append(0 if lab == "0" else a)
            labels.append(f"{lab}({subsystem})")
    return LocalGeneratorFamily(n=basis.n, generators=tuple(gens), subsystem_of=tuple(sub),
                                local_index_of=tuple(loc), labels=tuple(labels),
                                include_identity=include_identity)
