"""Pauli matrices, tensor-product Pauli strings, and the Bloch operator basis.

Conventions used throughout the package:

* A Pauli index is an integer in ``{0, 1, 2, 3}`` where 0 is the identity
  and 1, 2, 3 are the usual Pauli matrices in the computational basis.
* A Pauli string is a tuple ``y = (y_1, ..., y_m)`` of Pauli indices.  The
  associated operator is the Kronecker product ``sigma_{y_1} (x) ... (x)
  sigma_{y_m}`` with index 1 the *leftmost* factor, i.e. the most
  significant bit of the computational-basis index.
* Dense operators are ``2^m x 2^m`` complex numpy arrays.  Dense work is
  capped at ``DENSE_QUBIT_CAP`` qubits; ``apply_pauli_string`` provides a
  matrix-free kernel for larger ``m``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

DENSE_QUBIT_CAP = 8

# Tolerance for exact algebraic identities (sums, products, traces).
ALGEBRAIC_TOL = 1e-10
# Tolerance for quantities that pass through an eigensolver.
EIGEN_TOL = 1e-9

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class DimensionCapError(ValueError):
    """Raised when a dense operation would exceed the qubit cap."""


class InvariantViolation(RuntimeError):
    """A numerical identity that must hold was violated beyond tolerance."""


def _check_cap(m: int, cap: int = DENSE_QUBIT_CAP) -> None:
    if m > cap:
        raise DimensionCapError(
            f"dense operation on {m} qubits exceeds the cap of {cap} "
            f"(2^{m} x 2^{m} matrix); use apply_pauli_string or the "
            "matrix-free samplers instead"
        )


def validate_pauli_string(y: Sequence[int], alphabet: Iterable[int] = (0, 1, 2, 3)) -> tuple:
    """Return ``y`` as a tuple, checking every index is in ``alphabet``."""
    y = tuple(int(i) for i in y)
    if len(y) < 1:
        raise ValueError("Pauli string must have length >= 1")
    allowed = set(alphabet)
    if not set(y) <= allowed:
        raise ValueError(f"Pauli string {y} has indices outside {sorted(allowed)}")
    return y


def all_pauli_strings(m: int, alphabet: Sequence[int] = (0, 1, 2, 3)) -> Iterator[tuple]:
    """Lexicographic enumeration of ``alphabet^m`` (the canonical ordering)."""
    return itertools.product(alphabet, repeat=m)


def single_pauli(i: int) -> np.ndarray:
    """The 2x2 matrix for one Pauli index (0 = identity)."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in {{0,1,2,3}}, got {i}")
    return _PAULI[i].copy()


def pauli_string_matrix(y: Sequence[int], cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Dense Kronecker product of the Pauli string ``y`` (index 1 leftmost)."""
    y = validate_pauli_string(y)
    _check_cap(len(y), cap)
    out = _PAULI[y[0]]
    for i in y[1:]:
        out = np.kron(out, _PAULI[i])
    return out


def apply_pauli_string(y: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Apply the Pauli string ``y`` to a state vector without building the matrix.

    Works axis-by-axis on the ``(2,)*m`` tensor reshape of ``v``, so the cost
    is O(m 2^m) and no ``2^m x 2^m`` array is ever allocated.
    """
    y = validate_pauli_string(y)
    m = len(y)
    v = np.asarray(v, dtype=complex)
    if v.shape != (2 ** m,):
        raise ValueError(f"vector length {v.shape} does not match 2^{m}")
    t = v.reshape((2,) * m)
    for axis, i in enumerate(y):
        if i == 0:
            continue
        t = np.moveaxis(np.tensordot(_PAULI[i], t, axes=([1], [axis])), 0, axis)
    return t.reshape(2 ** m)


@dataclass
class PauliPropertyReport:
    """Max deviations from the four defining properties of a Pauli string pair.

    hermiticity_dev:   max |sigma_y - sigma_y^dagger|
    trace_dev:         |tr(sigma_y) - 2^m delta_{y,0}|
    eigenvalue_dev:    max distance of any eigenvalue from {-1, +1}
    orthogonality_dev: |tr(sigma_y^dagger sigma_y') - 2^m delta_{y,y'}|
    """

    y: tuple
    y_prime: tuple
    hermiticity_dev: float
    trace_dev: float
    eigenvalue_dev: float
    orthogonality_dev: float

    def max_deviation(self) -> float:
        return max(
            self.hermiticity_dev,
            self.trace_dev,
            self.eigenvalue_dev,
            self.orthogonality_dev,
        )


def pauli_properties_check(
    y: Sequence[int], y_prime: Sequence[int], cap: int = DENSE_QUBIT_CAP
) -> PauliPropertyReport:
    """Verify hermiticity, trace, eigenvalue, and orthogonality properties densely."""
    y = validate_pauli_string(y)
    y_prime = validate_pauli_string(y_prime)
    if len(y) != len(y_prime):
        raise ValueError("Pauli strings must have equal length")
    m = len(y)
    _check_cap(m, cap)
    d = 2 ** m
    a = pauli_string_matrix(y, cap)
    b = pauli_string_matrix(y_prime, cap)

    herm = float(np.max(np.abs(a - a.conj().T)))
    expected_trace = float(d) if all(i == 0 for i in y) else 0.0
    trace = float(abs(np.trace(a).real - expected_trace) + abs(np.trace(a).imag))
    eigs = np.linalg.eigvalsh(a)
    eig = float(np.max(np.minimum(np.abs(eigs - 1.0), np.abs(eigs + 1.0))))
    expected_inner = float(d) if y == y_prime else 0.0
    inner = np.trace(a.conj().T @ b)
    orth = float(abs(inner.real - expected_inner) + abs(inner.imag))
    return PauliPropertyReport(y, y_prime, herm, trace, eig, orth)


@dataclass
class BlochCoefficients:
    """Real expansion coefficients of a Hermitian operator in the Pauli basis.

    ``coeffs[y] = tr(sigma_y A)`` for every ``y`` in ``{0,1,2,3}^m``; the
    operator is recovered as ``2^{-m} sum_y coeffs[y] sigma_y``.
    """

    m: int
    coeffs: dict

    def squared_norm(self) -> float:
        """Sum of squared coefficients; equals ``2^m tr(A^2)``."""
        return float(sum(c * c for c in self.coeffs.values()))


def bloch_decompose(op: np.ndarray, cap: int = DENSE_QUBIT_CAP) -> BlochCoefficients:
    """Expand a Hermitian operator over the tensor-product Pauli basis."""
    op = np.asarray(op, dtype=complex)
    d = op.shape[0]
    if op.shape != (d, d):
        raise ValueError("operator must be square")
    m = int(round(np.log2(d)))
    if 2 ** m != d:
        raise ValueError(f"dimension {d} is not a power of two")
    _check_cap(m, cap)
    if np.max(np.abs(op - op.conj().T)) > ALGEBRAIC_TOL:
        raise ValueError("operator is not Hermitian within tolerance")
    coeffs = {}
    for y in all_pauli_strings(m):
        c = np.trace(pauli_string_matrix(y, cap) @ op)
        coeffs[y] = float(c.real)
    return BlochCoefficients(m=m, coeffs=coeffs)


def bloch_reconstruct(bc: BlochCoefficients, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    """Rebuild the operator ``2^{-m} sum_y coeffs[y] sigma_y``."""
    _check_cap(bc.m, cap)
    d = 2 ** bc.m
    out = np.zeros((d, d), dtype=complex)
    for y, c in bc.coeffs.items():
        if c != 0.0:
            out += c * pauli_string_matrix(y, cap)
    return out / d
