"""POVMs, outcome statistics, and the measurements native to the locking ensemble.

Outcome distributions and joint label/outcome distributions are plain numpy
arrays; entropies are in bits throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pauli import (
    DENSE_QUBIT_CAP,
    InvariantViolation,
    pauli_string_matrix,
    validate_pauli_string,
)
from .states import CqState, _check_ccq_labels, all_pauli_strings, marginal_e

COMPLETENESS_TOL = 1e-9
ELEMENT_MIN_EIG_TOL = -1e-9
PROB_CLIP_TOL = -1e-12
MI_NEGATIVE_TOL = -1e-9
MIXED_MARGINAL_TOL = 1e-9


@dataclass
class Povm:
    """A generalized measurement: positive operators summing to the identity."""

    elements: list

    def __post_init__(self):
        self.elements = [np.asarray(e, dtype=complex) for e in self.elements]
        if not self.elements:
            raise ValueError("POVM needs at least one element")
        d = self.elements[0].shape
        for e in self.elements:
            if e.ndim != 2 or e.shape != d or e.shape[0] != e.shape[1]:
                raise ValueError("POVM elements must be square and share one dimension")

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass
class PovmReport:
    completeness_dev: float
    min_eigenvalue: float

    @property
    def ok(self) -> bool:
        return (
            self.completeness_dev <= COMPLETENESS_TOL
            and self.min_eigenvalue >= ELEMENT_MIN_EIG_TOL
        )


def validate_povm(p: Povm) -> PovmReport:
    """Completeness deviation and the most negative element eigenvalue."""
    total = sum(p.elements)
    dev = float(np.max(np.abs(total - np.eye(p.dim))))
    min_eig = min(
        float(np.linalg.eigvalsh((e + e.conj().T) / 2)[0]) for e in p.elements
    )
    return PovmReport(dev, min_eig)


def apply_povm(p: Povm, sigma: np.ndarray) -> np.ndarray:
    """Outcome distribution tr(M_z sigma), tiny negatives clipped to zero."""
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.shape != (p.dim, p.dim):
        raise ValueError(f"state dim {sigma.shape} does not match POVM dim {p.dim}")
    probs = np.array([np.trace(e @ sigma).real for e in p.elements])
    if probs.min() < PROB_CLIP_TOL:
        raise ValueError(
            f"outcome probability {probs.min():.3e} is negative beyond tolerance; "
            "POVM or state is invalid"
        )
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if abs(total - 1.0) > COMPLETENESS_TOL:
        raise ValueError(f"outcome probabilities sum to {total}; POVM is not complete")
    return probs


def measure_cq(p: Povm, s: CqState) -> np.ndarray:
    """Joint distribution P(v, z) = P(v) tr(M_z rho_{E|v}) as a labels-by-outcomes array."""
    if s.dim != p.dim:
        raise ValueError(f"state dim {s.dim} does not match POVM dim {p.dim}")
    joint = np.empty((len(s.labels), len(p.elements)))
    for i, (pv, cond) in enumerate(zip(s.probs, s.conditionals)):
        joint[i] = pv * np.array([np.trace(e @ cond).real for e in p.elements])
    if joint.min() < PROB_CLIP_TOL:
        raise ValueError("joint distribution has a significantly negative entry")
    joint = np.clip(joint, 0.0, None)
    if abs(joint.sum() - 1.0) > COMPLETENESS_TOL:
        raise ValueError("joint distribution does not sum to 1")
    return joint


def shannon_entropy(d: np.ndarray) -> float:
    """Entropy in bits; zero-probability outcomes contribute nothing."""
    d = np.asarray(d, dtype=float).ravel()
    pos = d[d > 0]
    return float(-(pos * np.log2(pos)).sum())


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary entropy needs p in [0,1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def mutual_information(j: np.ndarray) -> float:
    """I(V;Z) in bits from a joint distribution; tiny negatives clipped to zero."""
    j = np.asarray(j, dtype=float)
    mi = shannon_entropy(j.sum(axis=1)) + shannon_entropy(j.sum(axis=0)) - shannon_entropy(j)
    if mi < MI_NEGATIVE_TOL:
        raise InvariantViolation(f"mutual information {mi} is negative beyond tolerance")
    return max(mi, 0.0)


def conditional_x_povm(y: Sequence[int], cap: int = DENSE_QUBIT_CAP) -> Povm:
    """Two-outcome projective measurement onto the +1/-1 eigenspaces of sigma_y.

    On the locking conditional for (x, y) the outcome equals x with
    certainty; it is the measurement an adversary who knows y would apply.
    """
    y = validate_pauli_string(y, alphabet=(1, 2, 3))
    d = 2 ** len(y)
    sig = pauli_string_matrix(y, cap)
    eye = np.eye(d, dtype=complex)
    return Povm([(eye + sig) / 2, (eye - sig) / 2])


def binary_locking_povm(m: int, y: Sequence[int], cap: int = DENSE_QUBIT_CAP) -> Povm:
    """Rescaled pair of locking conditionals (d/2) rho_{E|x,y} for fixed y.

    Algebraically identical to conditional_x_povm(y); kept separate because
    its outcome gap on a state sigma is exactly |tr(sigma_y sigma)|, the
    quantity the analytic locking bound controls.
    """
    y = validate_pauli_string(y, alphabet=(1, 2, 3))
    if len(y) != m:
        raise ValueError(f"basis string {y} does not have length {m}")
    return conditional_x_povm(y, cap)


def pretty_good_povm(s: CqState) -> Povm:
    """One element d P(v) rho_{E|v} per label; valid when the average state is id/d."""
    d = s.dim
    avg = marginal_e(s)
    if np.max(np.abs(avg - np.eye(d) / d)) > MIXED_MARGINAL_TOL:
        raise ValueError(
            "ensemble average is not maximally mixed; the rescaled-conditional "
            "measurement is not a POVM here"
        )
    return Povm([d * pv * cond for pv, cond in zip(s.probs, s.conditionals)])


def perfect_joint_measurement(s_ext: CqState) -> np.ndarray:
    """Measure the adjoined y-register, then the matching two-outcome x measurement.

    Input must come from extend_with_y.  The resulting joint distribution is
    diagonal (outcome = label with certainty), so I(V;Z) equals the full
    label entropy H(XY).
    """
    m = _check_ccq_labels(s_ext)
    ys = list(all_pauli_strings(m, (1, 2, 3)))
    k = len(ys)
    d = 2 ** m
    if s_ext.dim != k * d:
        raise ValueError(
            f"dimension {s_ext.dim} does not match an adjoined-register state "
            f"({k}*{d}); build the input with extend_with_y"
        )
    elements = []
    eye = np.eye(d, dtype=complex)
    for y in ys:
        reg = np.zeros((k, k), dtype=complex)
        reg[ys.index(y), ys.index(y)] = 1.0
        sig = pauli_string_matrix(y)
        for x in (0, 1):
            sign = 1.0 if x == 0 else -1.0
            elements.append(np.kron(reg, (eye + sign * sig) / 2))
    return measure_cq(Povm(elements), s_ext)


def sample_locking_outcome(m: int, x: int, y: Sequence[int], rng: np.random.Generator) -> tuple:
    """Per-qubit outcome bits of the known-y measurement on the (x, y) conditional.

    The conditional is an even mixture of eigenprojector products over the
    parity-x bit strings, so measuring each qubit in its own basis yields a
    uniform parity-x string.  No matrices are built; valid for any m.
    """
    if x not in (0, 1):
        raise ValueError("x must be 0 or 1")
    y = validate_pauli_string(y, alphabet=(1, 2, 3))
    if len(y) != m:
        raise ValueError(f"basis string {y} does not have length {m}")
    head = rng.integers(0, 2, size=m - 1) if m > 1 else np.zeros(0, dtype=int)
    last = int(head.sum() % 2) ^ x
    return tuple(int(b) for b in head) + (last,)


def random_rank_one_povm(d: int, k: int, rng: np.random.Generator) -> Povm:
    """Random k-outcome rank-one POVM: Gaussian vectors normalized to completeness."""
    if k < d:
        raise ValueError("need at least d outcomes to span the identity")
    b = rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
    gram = b.conj().T @ b
    lam, vec = np.linalg.eigh(gram)
    if lam[0] <= 1e-12 * lam[-1]:
        raise ValueError("drawn vectors do not span the space; retry with new draw")
    inv_sqrt = (vec / np.sqrt(lam)) @ vec.conj().T
    w = b @ inv_sqrt  # rows w_z then satisfy sum_z w_z w_z^dagger = id
    return Povm([np.outer(row, row.conj()) for row in w])
