"""Dense complex matrix kernel for small multiqubit systems.

Everything here works on plain ``numpy`` arrays; :class:`DensityMatrix` and
:class:`PureState` are thin validated carriers that keep the subsystem
dimension list next to the data.  All entropies are in bits (base-2 logs).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# PSD / hermiticity checks tolerate eigensolver noise on 16x16 matrices.
HERM_TOL = 1e-10
PSD_TOL = 1e-10
# Eigenvalues at or below this contribute 0 to entropies (0 log 0 := 0).
LOG_EPS = 1e-12

MAX_DIM = 64


def _as_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds supported maximum {MAX_DIM}")
    return m


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def eig_hermitian(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the unitary of column
    eigenvectors, so that ``m == V @ diag(w) @ V.conj().T``.

    Raises
    ------
    ValueError
        If ``m`` is not Hermitian within ``HERM_TOL``.
    """
    m = _as_square(m)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w, v


def tensor_product(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more operators, left to right."""
    if not ops:
        raise ValueError("tensor_product needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(mat: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` is the ordered list of subsystem dimensions; subsystem order in
    the result follows the order of ``dims`` restricted to ``keep``.
    """
    dims = list(dims)
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    n = len(dims)
    t = np.asarray(mat, dtype=complex).reshape(dims + dims)
    # Trace the dropped axes pairwise; axis bookkeeping shrinks as we go.
    dropped = [i for i in range(n) if i not in keep]
    for count, i in enumerate(sorted(dropped)):
        ax = i - count
        t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def partial_transpose(mat: np.ndarray, dims, side) -> np.ndarray:
    """Transpose the subsystems listed in ``side``, leaving the rest alone."""
    dims = list(dims)
    side = sorted(set(side))
    if any(k < 0 or k >= len(dims) for k in side):
        raise ValueError(f"side indices {side} out of range for {len(dims)} subsystems")
    n = len(dims)
    t = np.asarray(mat, dtype=complex).reshape(dims + dims)
    perm = list(range(2 * n))
    for i in side:
        perm[i], perm[n + i] = perm[n + i], perm[i]
    d = int(np.prod(dims))
    return t.transpose(perm).reshape(d, d)


def matrix_sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything below
    ``-1e-8`` is rejected as genuinely non-PSD.
    """
    w, v = eig_hermitian(m)
    if w[0] < -1e-8:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def spectrum_entropy(eigenvalues: np.ndarray) -> float:
    """Entropy in bits of a nonnegative spectrum, skipping near-zero weights."""
    w = np.asarray(eigenvalues, dtype=float)
    w = w[w > LOG_EPS]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(rho) -> float:
    """S(rho) = -tr(rho log2 rho) in bits."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else _as_square(rho)
    return spectrum_entropy(np.linalg.eigvalsh(mat))


def shannon_entropy(p) -> float:
    """Shannon entropy in bits of a probability vector.

    Entries may dip to -1e-12 from roundoff (clamped); the sum must be within
    1e-6 of one.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < -LOG_EPS):
        raise ValueError("probability vector has a negative entry")
    if abs(p.sum() - 1.0) > 1e-6:
        raise ValueError(f"probabilities sum to {p.sum():.8f}, not 1")
    return spectrum_entropy(np.clip(p, 0.0, None))


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits of {p, 1-p}."""
    out = 0.0
    for x in (p, 1.0 - p):
        if x > LOG_EPS:
            out -= x * np.log2(x)
    return out


@dataclass
class PureState:
    """Normalized state vector with its subsystem dimension list."""

    vec: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        self.vec = np.asarray(self.vec, dtype=complex).ravel()
        self.dims = tuple(int(d) for d in self.dims)
        if int(np.prod(self.dims)) != self.vec.size:
            raise ValueError(f"dims {self.dims} do not match vector length {self.vec.size}")
        norm = np.linalg.norm(self.vec)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state vector norm {norm} is not 1 within 1e-12")

    def to_density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.vec, self.vec.conj()), self.dims)


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix with its subsystem dimension list."""

    mat: np.ndarray
    dims: tuple[int, ...]
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        self.mat = _as_square(self.mat)
        self.dims = tuple(int(d) for d in self.dims)
        if int(np.prod(self.dims)) != self.mat.shape[0]:
            raise ValueError(f"dims {self.dims} do not match matrix dimension {self.mat.shape[0]}")
        if not self._validated:
            self.validate()
            self._validated = True

    def validate(self):
        if not is_hermitian(self.mat):
            raise ValueError("density matrix is not Hermitian within 1e-10")
        tr = np.trace(self.mat)
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {tr} differs from 1 beyond 1e-10")
        wmin = float(np.linalg.eigvalsh(self.mat)[0])
        if wmin < -PSD_TOL:
            raise ValueError(f"density matrix has eigenvalue {wmin:.3e} below -1e-10")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def partial_trace(self, keep) -> "DensityMatrix":
        keep = sorted(set(keep))
        sub = partial_trace(self.mat, self.dims, keep)
        return DensityMatrix(sub, tuple(self.dims[i] for i in keep), _validated=True)

    def partial_transpose(self, side) -> np.ndarray:
        return partial_transpose(self.mat, self.dims, side)

    def entropy(self) -> float:
        return von_neumann_entropy(self.mat)

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.mat)

    def numerical_rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.spectrum() > tol))
