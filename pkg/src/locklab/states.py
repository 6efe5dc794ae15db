"""Classical-quantum ensembles and the basis-locking ensemble.

A cq-state is a classical label distribution together with one density
operator per label.  The locking ensemble pairs a key bit x with a string
y of m basis choices; the quantum side carries the normalized projector
onto the (-1)^x eigenspace of the Pauli string sigma_y.  Revealing y later
is what opens the accessible-information gap, so the ensemble is built in
two independent ways (operator form and per-qubit sampling form) that must
agree exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .pauli import (
    DENSE_QUBIT_CAP,
    DimensionCapError,
    all_pauli_strings,
    pauli_string_matrix,
    single_pauli,
    validate_pauli_string,
)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
MIN_EIGENVALUE_TOL = -1e-9


@dataclass
class DensityReport:
    """Deviations of a candidate density operator from its defining axioms."""

    hermiticity_dev: float
    min_eigenvalue: float
    trace_dev: float

    @property
    def ok(self) -> bool:
        return (
            self.hermiticity_dev <= HERMITICITY_TOL
            and self.min_eigenvalue >= MIN_EIGENVALUE_TOL
            and self.trace_dev <= TRACE_TOL
        )


def validate_density(op: np.ndarray) -> DensityReport:
    """Check hermiticity, positivity, and unit trace of a candidate density operator."""
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError("density operator must be a square matrix")
    herm = float(np.max(np.abs(op - op.conj().T)))
    eigs = np.linalg.eigvalsh((op + op.conj().T) / 2)
    trace_dev = float(abs(complex(np.trace(op)) - 1.0))
    return DensityReport(herm, float(eigs[0]), trace_dev)


@dataclass
class CqState:
    """Labeled ensemble: classical labels, their probabilities, and conditionals.

    labels, probs, and conditionals run in lockstep; conditionals all share
    one Hilbert-space dimension.  Labels must be distinct and hashable.  For
    the locking ensemble each label is a pair (x, y) of a bit and a tuple of
    basis indices from {1,2,3}.
    """

    labels: list
    probs: np.ndarray
    conditionals: list

    def __post_init__(self):
        self.labels = list(self.labels)
        self.probs = np.asarray(self.probs, dtype=float)
        self.conditionals = [np.asarray(c, dtype=complex) for c in self.conditionals]
        if not (len(self.labels) == len(self.probs) == len(self.conditionals)):
            raise ValueError("labels, probs, conditionals must have equal length")
        if not self.labels:
            raise ValueError("ensemble must have at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        if np.any(self.probs < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(float(self.probs.sum()) - 1.0) > TRACE_TOL:
            raise ValueError("probabilities must sum to 1")
        d = self.conditionals[0].shape
        for c in self.conditionals:
            if c.ndim != 2 or c.shape != d or c.shape[0] != c.shape[1]:
                raise ValueError("conditionals must be square and share one dimension")

    @property
    def dim(self) -> int:
        return self.conditionals[0].shape[0]

    def restrict(self, keep: Callable) -> "CqState":
        """Renormalized sub-ensemble over the labels where keep(label) is true."""
        idx = [i for i, v in enumerate(self.labels) if keep(v)]
        if not idx:
            raise ValueError("restriction keeps no label")
        w = self.probs[idx]
        total = float(w.sum())
        if total <= 0:
            raise ValueError("restriction has zero probability")
        return CqState(
            [self.labels[i] for i in idx],
            w / total,
            [self.conditionals[i] for i in idx],
        )


def _check_ccq_labels(s: CqState) -> int:
    """Verify labels are (bit, basis-string) pairs; return the string length m."""
    first = s.labels[0]
    if not (isinstance(first, tuple) and len(first) == 2):
        raise ValueError("labels must be (x, y) pairs")
    m = len(first[1])
    for x, y in s.labels:
        if x not in (0, 1):
            raise ValueError(f"label bit {x} not in {{0,1}}")
        y = validate_pauli_string(y, alphabet=(1, 2, 3))
        if len(y) != m:
            raise ValueError("all label strings must share one length")
    return m


def locking_state(m: int, cap: int = DENSE_QUBIT_CAP) -> CqState:
    """The uniform key ensemble over one bit x and a string y of m basis trits.

    The conditional for (x, y) is 2^{-m} (id + (-1)^x sigma_y): for fixed y
    the two conditionals are orthogonal, yet the ensemble average is the
    maximally mixed state, so nothing about x is visible without y.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > cap:
        raise DimensionCapError(
            f"locking ensemble on {m} qubits exceeds the dense cap of {cap}"
        )
    d = 2 ** m
    eye = np.eye(d, dtype=complex)
    labels, conds = [], []
    for x in (0, 1):
        sign = 1.0 if x == 0 else -1.0
        for y in all_pauli_strings(m, (1, 2, 3)):
            labels.append((x, y))
            conds.append((eye + sign * pauli_string_matrix(y, cap)) / d)
    probs = np.full(len(labels), 1.0 / len(labels))
    return CqState(labels, probs, conds)


def locking_state_alt(m: int, cap: int = DENSE_QUBIT_CAP) -> CqState:
    """The same ensemble assembled from per-qubit eigenprojectors.

    For each qubit draw a bit r_i and project onto the (-1)^{r_i} eigenvector
    of sigma_{y_i}; conditioning the uniform r on parity x and averaging
    reproduces locking_state(m) entry for entry.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > cap:
        raise DimensionCapError(
            f"locking ensemble on {m} qubits exceeds the dense cap of {cap}"
        )
    eye2 = np.eye(2, dtype=complex)
    labels, conds = [], []
    for x in (0, 1):
        for y in all_pauli_strings(m, (1, 2, 3)):
            acc = None
            count = 0
            for r in itertools.product((0, 1), repeat=m):
                if sum(r) % 2 != x:
                    continue
                proj = np.ones((1, 1), dtype=complex)
                for ri, yi in zip(r, y):
                    sign = 1.0 if ri == 0 else -1.0
                    proj = np.kron(proj, (eye2 + sign * single_pauli(yi)) / 2)
                acc = proj if acc is None else acc + proj
                count += 1
            labels.append((x, y))
            conds.append(acc / count)
    probs = np.full(len(labels), 1.0 / len(labels))
    return CqState(labels, probs, conds)


def marginal_e(s: CqState) -> np.ndarray:
    """Average of the conditionals weighted by the label distribution."""
    out = np.zeros((s.dim, s.dim), dtype=complex)
    for p, c in zip(s.probs, s.conditionals):
        out += p * c
    return out


def extend_with_y(s: CqState, cap: int = DENSE_QUBIT_CAP) -> CqState:
    """Adjoin the y part of each label to the quantum side as an orthonormal register.

    Labels stay (x, y); the conditional becomes |e_y><e_y| (x) rho_{E|x,y},
    with {|e_y>} the lexicographic basis over the full basis-string alphabet.
    Measuring the register recovers y perfectly, which is exactly the extra
    information that unlocks x.
    """
    m = _check_ccq_labels(s)
    ys = list(all_pauli_strings(m, (1, 2, 3)))
    k = len(ys)
    d = s.dim
    if k * d > 2 ** cap:
        raise DimensionCapError(
            f"extended dimension {k * d} exceeds the dense cap of {2 ** cap}"
        )
    index = {y: i for i, y in enumerate(ys)}
    conds = []
    for (x, y), c in zip(s.labels, s.conditionals):
        reg = np.zeros((k, k), dtype=complex)
        reg[index[y], index[y]] = 1.0
        conds.append(np.kron(reg, c))
    return CqState(list(s.labels), s.probs.copy(), conds)


def purify(rho: np.ndarray) -> np.ndarray:
    """Unit vector on dim d^2 whose first-factor marginal equals rho.

    Spectral form: sum_i sqrt(lambda_i) |v_i> (x) |i>, with the auxiliary
    basis indexed by eigenvalue order.  Eigenvalues below 1e-12 are dropped:
    they are solver noise, and their square roots would otherwise seed the
    output with amplitudes far above working precision.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if rho.ndim != 2 or rho.shape != (d, d):
        raise ValueError("density operator must be a square matrix")
    lam, vec = np.linalg.eigh((rho + rho.conj().T) / 2)
    lam = np.where(lam < 1e-12, 0.0, lam)
    out = np.zeros(d * d, dtype=complex)
    for i in range(d):
        if lam[i] == 0.0:
            continue
        aux = np.zeros(d, dtype=complex)
        aux[i] = 1.0
        out += np.sqrt(lam[i]) * np.kron(vec[:, i], aux)
    norm = np.linalg.norm(out)
    if norm == 0:
        raise ValueError("cannot purify the zero operator")
    return out / norm


def random_density(d: int, rng: np.random.Generator, rank: int = 0) -> np.ndarray:
    """Random density operator G G^dagger / tr, with G a d-by-rank Gaussian draw."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    r = rank if rank >= 1 else d
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def partial_trace(op: np.ndarray, dims: Sequence[int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator; keep 0 (left) or 1 (right)."""
    da, db = dims
    op = np.asarray(op, dtype=complex)
    if op.shape != (da * db, da * db):
        raise ValueError(f"operator shape {op.shape} does not match dims {dims}")
    t = op.reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ajbj->ab", t)
    if keep == 1:
        return np.einsum("jajb->ab", t)
    raise ValueError("keep must be 0 or 1")
