"""Hermitian operator bases and real-coordinate expansions of matrices.

A basis holds orthogonal Hermitian elements ``S_0, ..., S_kappa`` with
``S_0`` proportional to the identity, together with per-element dual scales
``dual_mu`` fixing the coordinate convention

    x_mu = dual_mu * tr(rho S_mu),

chosen so that every unit-trace state has ``x_0 = 1``.  Reconstruction uses
the effective elements ``R_mu = S_mu / (dual_mu * tr(S_mu^2))``, which always
satisfy ``R_0 = I/dim``; a local density matrix is ``W(x) = R_0 + sum_a x_a R_a``.

Element ordering is fixed and part of the file-format contract:

* ``pauli``:     1, sigma_x, sigma_y, sigma_z          (coordinates = Bloch vector)
* ``pauli_planar``: 1, sigma_x, sigma_z                (restricted, 3 elements)
* ``gellmann``:  sqrt(2/3)*1, lambda_1..lambda_8       (coordinates zeta_i = 3/2 tr(rho lambda_i))
* ``canonical_hermitian``: 1, then for each i<j the symmetric and antisymmetric
  unit pair, then the d-1 traceless diagonal generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod, sqrt
from typing import Sequence

import numpy as np

from .matops import HermitianMatrix, _as_array

ORTHOGONALITY_ATOL = 1e-12

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def gellmann_matrices() -> list[np.ndarray]:
    """The eight standard 3x3 traceless generators, in the usual 1..8 order."""
    e = [np.zeros((3, 3), dtype=complex) for _ in range(8)]
    pairs = [(0, 1), (0, 2), (1, 2)]
    for k, (i, j) in enumerate(pairs):
        sym = np.zeros((3, 3), dtype=complex)
        sym[i, j] = sym[j, i] = 1
        asym = np.zeros((3, 3), dtype=complex)
        asym[i, j] = -1j
        asym[j, i] = 1j
        e[2 * k if k < 2 else 5] = sym
        e[2 * k + 1 if k < 2 else 6] = asym
    e[2] = np.diag([1, -1, 0]).astype(complex)
    e[7] = np.diag([1, 1, -2]).astype(complex) / sqrt(3)
    return e


class BasisError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorBasis:
    """Orthogonal Hermitian basis with a fixed coordinate convention."""

    kind: str
    dim: int
    elements: tuple[np.ndarray, ...]
    duals: tuple[float, ...]
    complete: bool = True

    def __post_init__(self):
        elems = tuple(np.ascontiguousarray(_as_array(e)) for e in self.elements)
        for e in elems:
            e.setflags(write=False)
        object.__setattr__(self, "elements", elems)
        e0 = elems[0]
        alpha = e0[0, 0].real
        if alpha <= 0 or np.max(np.abs(e0 - alpha * np.eye(self.dim))) > 1e-12:
            raise BasisError("element 0 must be a positive multiple of the identity")
        gram = np.array([[np.trace(a @ b) for b in elems] for a in elems])
        off = gram - np.diag(np.diag(gram))
        if np.max(np.abs(off)) > ORTHOGONALITY_ATOL * max(1.0, np.max(np.abs(gram))):
            raise BasisError("basis elements are not pairwise orthogonal")

    @property
    def num_vars(self) -> int:
        return len(self.elements) - 1

    @property
    def norms(self) -> np.ndarray:
        return np.array([np.trace(e @ e).real for e in self.elements])

    @property
    def recon_elements(self) -> tuple[np.ndarray, ...]:
        """Effective elements R_mu = S_mu/(dual_mu tr S_mu^2); R_0 = I/dim."""
        n = self.norms
        return tuple(e / (d * nv) for e, d, nv in zip(self.elements, self.duals, n))


def make_basis(kind: str, dim: int) -> OperatorBasis:
    """Construct one of the named bases; ``kind`` must be compatible with ``dim``."""
    if kind == "pauli":
        if dim != 2:
            raise BasisError("pauli basis requires dim 2")
        elems = (PAULI["i"], PAULI["x"], PAULI["y"], PAULI["z"])
        return OperatorBasis(kind, 2, elems, (1.0, 1.0, 1.0, 1.0))
    if kind == "pauli_planar":
        if dim != 2:
            raise BasisError("pauli_planar basis requires dim 2")
        elems = (PAULI["i"], PAULI["x"], PAULI["z"])
        return OperatorBasis(kind, 2, elems, (1.0, 1.0, 1.0), complete=False)
    if kind == "gellmann":
        if dim != 3:
            raise BasisError("gellmann basis requires dim 3")
        lam0 = sqrt(2.0 / 3.0) * np.eye(3, dtype=complex)
        elems = (lam0, *gellmann_matrices())
        duals = (sqrt(3.0 / 2.0),) + (1.5,) * 8
        return OperatorBasis(kind, 3, elems, duals)
    if kind == "canonical_hermitian":
        elems = [np.eye(dim, dtype=complex)]
        for i in range(dim):
            for j in range(i + 1, dim):
                sym = np.zeros((dim, dim), dtype=complex)
                sym[i, j] = sym[j, i] = 1
                asym = np.zeros((dim, dim), dtype=complex)
                asym[i, j] = -1j
                asym[j, i] = 1j
                elems += [sym, asym]
        for k in range(1, dim):
            h = np.zeros((dim, dim), dtype=complex)
            h[:k, :k] = np.eye(k)
            h[k, k] = -k
            elems.append(h)
        return OperatorBasis(kind, dim, tuple(elems), (1.0,) * len(elems))
    raise BasisError(f"unknown basis kind {kind!r}")


def product_basis(factors: Sequence[OperatorBasis]) -> OperatorBasis:
    """Tensor-product basis; element order is row-major over factor indices."""
    if len(factors) == 1:
        return factors[0]
    elems = []
    duals = []
    for combo in product(*(range(len(b.elements)) for b in factors)):
        e = factors[0].elements[combo[0]]
        for f, idx in zip(factors[1:], combo[1:]):
            e = np.kron(e, f.elements[idx])
        elems.append(e)
        duals.append(prod(b.duals[i] for b, i in zip(factors, combo)))
    kind = "*".join(b.kind for b in factors)
    dim = prod(b.dim for b in factors)
    complete = all(b.complete for b in factors)
    return OperatorBasis(kind, dim, tuple(elems), tuple(duals), complete=complete)


@dataclass(frozen=True)
class CoordinateTensor:
    """Real coordinates X with one index per factor basis."""

    values: np.ndarray

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape


def expand(rho, factors: Sequence[OperatorBasis]) -> CoordinateTensor:
    """Coordinates X[mu_1,...,mu_p] = (prod duals) * tr(rho S_{mu_1} x ... x S_{mu_p})."""
    a = _as_array(rho)
    dims = [b.dim for b in factors]
    if prod(dims) != a.shape[0]:
        raise BasisError(f"factor dims {dims} do not match matrix dim {a.shape[0]}")
    shape = tuple(len(b.elements) for b in factors)
    vals = np.empty(shape)
    for combo in np.ndindex(shape):
        e = factors[0].elements[combo[0]]
        for f, idx in zip(factors[1:], combo[1:]):
            e = np.kron(e, f.elements[idx])
        scale = prod(b.duals[i] for b, i in zip(factors, combo))
        v = np.trace(a @ e) * scale
        if abs(v.imag) > 1e-9 * max(1.0, abs(v.real)):
            raise BasisError(f"non-real coordinate {v} at index {combo}; input not Hermitian?")
        vals[combo] = v.real
    return CoordinateTensor(vals)


def reconstruct(x: CoordinateTensor, factors: Sequence[OperatorBasis]) -> HermitianMatrix:
    """Inverse of :func:`expand`: rho = sum_mu X_mu R_mu (effective elements)."""
    shape = tuple(len(b.elements) for b in factors)
    if x.values.shape != shape:
        raise BasisError(f"coordinate shape {x.values.shape} != basis shape {shape}")
    recon = [b.recon_elements for b in factors]
    total = prod(b.dim for b in factors)
    out = np.zeros((total, total), dtype=complex)
    for combo in np.ndindex(shape):
        e = recon[0][combo[0]]
        for r, idx in zip(recon[1:], combo[1:]):
            e = np.kron(e, r[idx])
        out += x.values[combo] * e
    return HermitianMatrix(out)


def local_state(basis: OperatorBasis, coords: np.ndarray) -> np.ndarray:
    """W(x) = R_0 + sum_a x_a R_a, the unit-trace matrix with coordinates x."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (basis.num_vars,):
        raise BasisError(f"expected {basis.num_vars} coordinates, got {coords.shape}")
    recon = basis.recon_elements
    out = recon[0].astype(complex).copy()
    for a, c in enumerate(coords):
        out = out + c * recon[a + 1]
    return out
