"""
Dense complex linear algebra over tensor-product register layouts.

Operators and states are plain :class:`numpy.ndarray` objects of dtype
``complex128``. A :class:`RegisterLayout` fixes the global basis order:
row-major over the registers in layout order, the leftmost register being
the most significant digit. Every function here is pure.

Randomness (basis completion) uses ``numpy.random.default_rng(seed)``,
i.e. the PCG64 bit generator seeded through ``SeedSequence``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NotHermitianError, ScopeError

__all__ = [
    "HERMITIAN_TOL",
    "UNITARY_TOL",
    "RegisterLayout",
    "as_matrix",
    "state_vector",
    "basis_state",
    "tensor",
    "embed",
    "apply",
    "commutator",
    "frobenius",
    "is_hermitian",
    "is_unitary",
    "hermitian_eigendecomposition",
    "basis_completion",
    "expectation",
]

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12
ORTHO_TOL = 1e-10
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered named registers; ``registers`` is a tuple of ``(name, dim)``.

    >>> lay = RegisterLayout((("s", 2), ("a", 3)))
    >>> lay.total_dim
    6
    >>> lay.to_digits(4)
    (1, 1)
    >>> lay.to_index((1, 1))
    4
    """

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        regs = tuple((str(n), int(d)) for n, d in self.registers)
        object.__setattr__(self, "registers", regs)
        if not regs:
            raise DimensionError("layout needs at least one register")
        names = [n for n, _ in regs]
        if len(set(names)) != len(names):
            raise ScopeError(f"duplicate register names in {names}")
        for name, dim in regs:
            if dim < 1:
                raise DimensionError(f"register {name!r} has dimension {dim}")

    @classmethod
    def of(cls, **dims: int) -> "RegisterLayout":
        """Build from keyword arguments, e.g. ``RegisterLayout.of(s=2, a1=2)``."""
        return cls(tuple(dims.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.registers)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.registers)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def dim(self, name: str) -> int:
        return self.dims[self.position(name)]

    def position(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ScopeError(f"unknown register {name!r}; layout has {self.names}") from None

    def scope_dim(self, scope: Iterable[str]) -> int:
        return prod(self.dim(n) for n in scope)

    def append(self, name: str, dim: int) -> "RegisterLayout":
        return RegisterLayout(self.registers + ((name, dim),))

    def sub(self, names: Iterable[str]) -> "RegisterLayout":
        """Sub-layout of the given registers, kept in *this* layout's order."""
        wanted = set(names)
        for n in wanted:
            self.position(n)
        return RegisterLayout(tuple(r for r in self.registers if r[0] in wanted))

    def to_digits(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dim:
            raise DimensionError(f"index {index} outside [0, {self.total_dim})")
        return tuple(int(i) for i in np.unravel_index(index, self.dims))

    def to_index(self, digits: Sequence[int]) -> int:
        if len(digits) != len(self.dims):
            raise DimensionError(f"expected {len(self.dims)} digits, got {len(digits)}")
        for d, n in zip(digits, self.dims):
            if not 0 <= d < n:
                raise DimensionError(f"digit {d} out of range for dimension {n}")
        return int(np.ravel_multi_index(tuple(digits), self.dims))

    def describe(self) -> str:
        return " x ".join(f"{n}:{d}" for n, d in self.registers)


def as_matrix(m, *, square: bool = True) -> np.ndarray:
    """Validate and convert to a finite complex 2-d array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("matrix has non-finite entries")
    return a


def state_vector(amplitudes, *, normalize: bool = False) -> np.ndarray:
    """Return a unit complex vector; with ``normalize=False`` the norm must already be 1."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.size == 0 or not np.all(np.isfinite(v)):
        raise DimensionError("state needs finite amplitudes")
    n = np.linalg.norm(v)
    if n == 0:
        raise DimensionError("zero vector is not a state")
    if normalize:
        return v / n
    if abs(n - 1) > NORM_TOL:
        raise DimensionError(f"state norm {n!r} differs from 1")
    return v


def basis_state(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1
    return v


def tensor(a, b) -> np.ndarray:
    """Kronecker product, left factor most significant.

    Works for vectors and matrices alike.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _check_scope(op: np.ndarray, scope: Sequence[str], layout: RegisterLayout) -> list[int]:
    scope = list(scope)
    if len(set(scope)) != len(scope):
        raise ScopeError(f"repeated register in scope {scope}")
    axes = [layout.position(n) for n in scope]
    want = layout.scope_dim(scope)
    if op.shape != (want, want):
        raise DimensionError(
            f"operator of shape {op.shape} does not act on {scope} (dimension {want})"
        )
    return axes


def apply(op, scope: Sequence[str], layout: RegisterLayout, vectors) -> np.ndarray:
    """Apply ``op`` (acting on ``scope``, in scope order) to state(s) in ``layout``.

    ``vectors`` is either one state of length ``total_dim`` or a matrix whose
    columns are states. No full-size operator is ever formed.
    """
    op = as_matrix(op)
    axes = _check_scope(op, scope, layout)
    v = np.asarray(vectors, dtype=complex)
    single = v.ndim == 1
    if single:
        v = v[:, None]
    if v.shape[0] != layout.total_dim:
        raise DimensionError(f"state length {v.shape[0]} != layout dimension {layout.total_dim}")
    batch = v.shape[1]
    nreg = len(layout.dims)
    t = v.reshape(layout.dims + (batch,))
    rest = [i for i in range(nreg + 1) if i not in axes]
    t = np.transpose(t, axes + rest)
    front = t.shape
    t = (op @ t.reshape(op.shape[1], -1)).reshape(front)
    t = np.transpose(t, np.argsort(axes + rest))
    out = t.reshape(layout.total_dim, batch)
    return out[:, 0] if single else out


def embed(op, scope: Sequence[str], layout: RegisterLayout) -> np.ndarray:
    """Global matrix acting as ``op`` on ``scope`` and as the identity elsewhere.

    The scoped registers need not be adjacent nor in layout order; ``op``'s
    own basis is ordered as ``scope`` lists them.
    """
    return apply(op, scope, layout, np.eye(layout.total_dim, dtype=complex))


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot commute shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def frobenius(m) -> float:
    return float(np.linalg.norm(m))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    return frobenius(m - m.conj().T) <= tol


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    m = as_matrix(m)
    return frobenius(m.conj().T @ m - np.eye(m.shape[0])) <= tol


def hermitian_eigendecomposition(m) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and orthonormal eigenvector columns."""
    m = as_matrix(m)
    dev = frobenius(m - m.conj().T)
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"||m - m^dagger||_F = {dev:.3e}")
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    return vals, vecs


def basis_completion(vectors: Sequence, dim: int, seed=0) -> np.ndarray:
    """Extend orthonormal ``vectors`` to a full orthonormal basis of ``C^dim``.

    Returns a ``dim x dim`` unitary whose first columns are the inputs,
    unchanged. The remaining columns come from Gram-Schmidt (two passes)
    applied to complex Gaussian draws of ``default_rng(seed)``, so the
    result is deterministic per seed.
    """
    cols = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    for v in cols:
        if v.shape != (dim,):
            raise DimensionError(f"vector of length {v.size} in dimension {dim}")
    if len(cols) > dim:
        raise DimensionError(f"{len(cols)} vectors cannot be independent in dimension {dim}")
    if cols:
        q = np.column_stack(cols)
        gram_dev = frobenius(q.conj().T @ q - np.eye(len(cols)))
        if gram_dev > ORTHO_TOL:
            raise DimensionError(f"inputs are not orthonormal (Gram deviation {gram_dev:.3e})")
    rng = np.random.default_rng(seed)
    basis = list(cols)
    while len(basis) < dim:
        x = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        for _ in range(2):
            for b in basis:
                x = x - np.vdot(b, x) * b
        n = np.linalg.norm(x)
        # A draw (numerically) inside the current span is simply discarded.
        if n < 1e-8:
            continue
        basis.append(x / n)
    return np.column_stack(basis) if basis else np.zeros((dim, 0), dtype=complex)


def expectation(state, op) -> float:
    """``<state|op|state>`` as a real number.

    An imaginary part above 1e-10 means ``op`` was not Hermitian and raises.
    """
    v = np.asarray(state, dtype=complex).reshape(-1)
    op = as_matrix(op)
    if op.shape[0] != v.size:
        raise DimensionError(f"operator dimension {op.shape[0]} != state length {v.size}")
    val = np.vdot(v, op @ v)
    if abs(val.imag) > IMAG_TOL:
        raise NotHermitianError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)
