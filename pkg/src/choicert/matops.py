"""Dense complex linear algebra on states and Choi matrices.

Everything here is pure and operates on small dense matrices (dimension at
most a few hundred).  Hermitian inputs are validated and symmetrized once at
construction; all derived operations preserve Hermiticity exactly where the
underlying index permutation does.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_ATOL = 1e-12
# eigenvalues below this (relative to the spectral norm) count as zero
EIG_ZERO_RTOL = 1e-10


class ShapeError(ValueError):
    """Subsystem bookkeeping does not match the matrix it is paired with."""


def _as_array(m) -> np.ndarray:
    a = np.asarray(getattr(m, "mat", m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class HermitianMatrix:
    """A dense complex square matrix with the Hermiticity invariant.

    Small anti-Hermitian parts (below ``HERMITICITY_ATOL`` in max norm) are
    absorbed by symmetrization; anything larger is rejected as a bug in the
    caller.
    """

    mat: np.ndarray

    def __post_init__(self):
        a = _as_array(self.mat)
        asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
        if asym > HERMITICITY_ATOL * max(1.0, np.max(np.abs(a))):
            raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
        a = 0.5 * (a + a.conj().T)
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


@dataclass(frozen=True)
class SubsystemShape:
    """Ordered local Hilbert-space dimensions of a tensor-product factorization."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d <= 0 for d in dims):
            raise ShapeError(f"invalid subsystem dims {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return prod(self.dims)

    def check(self, m) -> np.ndarray:
        a = _as_array(m)
        if a.shape[0] != self.total:
            raise ShapeError(f"matrix dim {a.shape[0]} != product of dims {self.dims}")
        return a


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two square matrices."""
    return np.kron(_as_array(a), _as_array(b))


def tensor(*ops) -> np.ndarray:
    """Kronecker product of any number of square factors, left to right."""
    out = _as_array(ops[0])
    for op in ops[1:]:
        out = np.kron(out, _as_array(op))
    return out


def _validate_subsystems(shape: SubsystemShape, subsystems: Iterable[int]) -> tuple[int, ...]:
    subs = tuple(int(s) for s in subsystems)
    p = len(shape.dims)
    for s in subs:
        if not 0 <= s < p:
            raise ShapeError(f"subsystem index {s} out of range for {p} factors")
    if len(set(subs)) != len(subs):
        raise ShapeError(f"repeated subsystem index in {subs}")
    return subs


def partial_transpose(m, shape: SubsystemShape, subsystems: Iterable[int]):
    """Transpose the selected tensor factors only.

    Exact index permutation (bit-for-bit on rational inputs) and an
    involution on its subsystem set.
    """
    a = shape.check(m)
    subs = _validate_subsystems(shape, subsystems)
    p = len(shape.dims)
    t = a.reshape(shape.dims + shape.dims)
    axes = list(range(2 * p))
    for s in subs:
        axes[s], axes[p + s] = axes[p + s], axes[s]
    out = t.transpose(axes).reshape(shape.total, shape.total)
    return HermitianMatrix(out) if isinstance(m, HermitianMatrix) else out


def partial_trace(m, shape: SubsystemShape, subsystems: Iterable[int]) -> np.ndarray:
    """Trace out the selected tensor factors, keeping the rest in order."""
    a = shape.check(m)
    subs = set(_validate_subsystems(shape, subsystems))
    p = len(shape.dims)
    t = a.reshape(shape.dims + shape.dims)
    for s in sorted(subs, reverse=True):
        t = np.trace(t, axis1=s, axis2=len(t.shape) // 2 + s)
    keep = [d for i, d in enumerate(shape.dims) if i not in subs]
    nk = prod(keep) if keep else 1
    return t.reshape(nk, nk)


def permute_subsystems(m, shape: SubsystemShape, perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: output factor i is input factor perm[i]."""
    a = shape.check(m)
    p = len(shape.dims)
    if sorted(perm) != list(range(p)):
        raise ShapeError(f"invalid permutation {perm} for {p} factors")
    t = a.reshape(shape.dims + shape.dims)
    axes = list(perm) + [p + q for q in perm]
    return t.transpose(axes).reshape(shape.total, shape.total)


def reshuffle(m, dim: int | None = None) -> np.ndarray:
    """Swap row/column pairing of a superoperator: out[(i,j),(k,l)] = in[(i,k),(j,l)].

    Maps a superoperator to the matrix of the corresponding bilinear form on
    the doubled space (and back: the operation is an involution).
    """
    a = _as_array(m)
    if dim is None:
        dim = round(a.shape[0] ** 0.5)
    if dim * dim != a.shape[0]:
        raise ShapeError(f"matrix of size {a.shape[0]} is not a square of squares")
    return a.reshape(dim, dim, dim, dim).transpose(0, 2, 1, 3).reshape(dim * dim, dim * dim)


def eigvals_hermitian(m) -> np.ndarray:
    return np.linalg.eigvalsh(_as_array(m))


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues (matrix is assumed Hermitian)."""
    return float(np.sum(np.abs(eigvals_hermitian(m))))


def is_psd(m, tol: float | None = None) -> bool:
    """True iff the minimal eigenvalue is >= -tol.

    With ``tol=None`` the threshold is ``EIG_ZERO_RTOL * max(1, ||m||_2)``.
    """
    w = eigvals_hermitian(m)
    if tol is None:
        scale = float(np.max(np.abs(w))) if w.size else 0.0
        tol = EIG_ZERO_RTOL * max(1.0, scale)
    return bool(w.min() >= -tol) if w.size else True


def negativity(rho, shape: SubsystemShape, cut: Iterable[int]) -> float:
    """(||rho^PT||_1 - 1)/2 for the partial transpose over ``cut``.

    Requires unit trace; tiny negative values from roundoff are clipped to 0.
    """
    a = shape.check(rho)
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"negativity requires a unit-trace state (trace {tr:.12g})")
    pt = partial_transpose(a, shape, cut)
    val = 0.5 * (trace_norm(pt) - 1.0)
    return max(0.0, float(val))


def hermitian_part(m) -> np.ndarray:
    a = _as_array(m)
    return 0.5 * (a + a.conj().T)
