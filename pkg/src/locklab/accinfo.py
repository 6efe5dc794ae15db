"""Accessible information: measured values, a restart-search oracle, and bounds.

The searcher is a lower-bound oracle: it refines random rank-one POVMs and a
set of warm starts (the rescaled-conditional measurement, the eigenbases of
every conditional, and the known-basis measurements) by derivative-free
coordinate perturbation.  Warm starts are also evaluated directly, so the
returned best value never falls below any measurement it was seeded with.
Analytic statements live in locking_upper_bound and the chain check; search
results are only ever reported as best-found lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .measurement import (
    Povm,
    apply_povm,
    binary_locking_povm,
    conditional_x_povm,
    measure_cq,
    mutual_information,
    pretty_good_povm,
    shannon_entropy,
)
from .pauli import InvariantViolation, all_pauli_strings, pauli_string_matrix
from .states import CqState, _check_ccq_labels, locking_state, validate_density

BOUND_SLACK = 1e-6
DENSE_DIM_CAP = 64


@dataclass
class OptimizerConfig:
    """Search envelope for the restart optimizer.

    outcomes_min/outcomes_max bound the outcome count k of random restarts
    (defaults d and d*d); restart i draws its randomness from seed + i.
    """

    restarts: int = 50
    outcomes_min: Optional[int] = None
    outcomes_max: Optional[int] = None
    max_iters: int = 300
    step_tolerance: float = 1e-5
    seed: int = 42

    def resolve_outcomes(self, d: int) -> tuple:
        lo = self.outcomes_min if self.outcomes_min is not None else d
        hi = self.outcomes_max if self.outcomes_max is not None else d * d
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if lo < 2:
            raise ValueError("outcomes_min must be >= 2")
        if hi > d * d:
            raise ValueError("outcomes_max must be <= d^2")
        if lo > hi:
            raise ValueError("outcomes_min must not exceed outcomes_max")
        if self.max_iters < 1 or self.step_tolerance <= 0:
            raise ValueError("max_iters must be >= 1 and step_tolerance > 0")
        return lo, hi


@dataclass
class AccInfoEstimate:
    """Best-found accessible-information lower bound from the restart search."""

    best_value: float
    best_povm: Povm
    upper_bound: Optional[float]
    restarts_used: int

    def __post_init__(self):
        if self.best_value < 0:
            raise ValueError("best_value must be nonnegative")
        if self.upper_bound is not None and self.best_value > self.upper_bound + BOUND_SLACK:
            raise InvariantViolation(
                f"best found value {self.best_value:.9f} exceeds the analytic "
                f"bound {self.upper_bound:.9f}"
            )


@dataclass
class LockingGapReport:
    """Gap between informed and uninformed accessible information, in bits."""

    m: int
    i_with_y: float
    i_without_y_upper: float
    delta_lower: float


@dataclass
class ChainReport:
    """Per-state slack of the four steps behind the analytic locking bound.

    entropy_split_dev:     |H(N[sigma]) - (H(Y) + E_y H(N_y[sigma]))|
    binary_entropy_slack:  E_y[H(N_y[sigma])] - (1 - mean_y |tr(sigma_y sigma)|)
    cauchy_schwarz_slack:  (2/3)^{m/2} - mean_y |tr(sigma_y sigma)|
    bloch_norm_slack:      2^m - sum over all strings of tr(sigma_y sigma)^2
    """

    m: int
    entropy_split_dev: float
    binary_entropy_slack: float
    cauchy_schwarz_slack: float
    bloch_norm_slack: float

    @property
    def ok(self) -> bool:
        return (
            self.entropy_split_dev <= 1e-9
            and self.binary_entropy_slack >= -1e-12
            and self.cauchy_schwarz_slack >= -1e-12
            and self.bloch_norm_slack >= -1e-12
        )


def measured_info(s: CqState, p: Povm) -> float:
    """I(V;Z) in bits for one fixed measurement; a lower bound on the accessible info."""
    return mutual_information(measure_cq(p, s))


def locking_upper_bound(m: int) -> float:
    """Analytic ceiling (2/3)^{m/2} on the accessible information without y."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return (2.0 / 3.0) ** (m / 2.0)


def epsilon_of_n(n: int) -> float:
    """The security parameter e^{-(n-2)/8} attached to an n-bit key."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.exp(-(n - 2) / 8.0)


def key_length_bits(m: int) -> int:
    """Bit length floor(m log2 3) + 1 of the (x, y) key alphabet."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return math.floor(m * math.log2(3.0)) + 1


def locking_gap(m: int, iacc_upper=None) -> LockingGapReport:
    """Lower bound on the information gain from revealing y.

    i_with_y is exact (the joint measurement attains H(XY)); the uninformed
    side uses the analytic ceiling, optionally tightened by a caller-supplied
    upper bound (an AccInfoEstimate contributes its upper_bound field, never
    its best-found value, which bounds from the wrong side).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    i_with_y = 1.0 + m * math.log2(3.0)
    ceiling = locking_upper_bound(m)
    if isinstance(iacc_upper, AccInfoEstimate):
        iacc_upper = iacc_upper.upper_bound
    if iacc_upper is not None:
        ceiling = min(ceiling, float(iacc_upper))
    return LockingGapReport(m, i_with_y, ceiling, i_with_y - ceiling)


# ---------------------------------------------------------------------------
# restart search machinery


def _entropy_rows(q: np.ndarray, axes) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(q > 0, q * np.log2(np.maximum(q, 1e-300)), 0.0)
    return -t.sum(axis=axes)


def _pattern_search(f, x0: np.ndarray, step0: float, step_tol: float, max_iters: int):
    """Maximize f by batched coordinate perturbation with a combined trial move.

    Each iteration evaluates all +/- single-coordinate moves at once, tries
    the combination of every individually improving coordinate, and falls
    back to the best single move; the step halves when nothing improves.
    """
    x = np.asarray(x0, dtype=float).copy()
    fx = float(f(x[None])[0])
    n = x.size
    eye = np.eye(n)
    step = step0
    iters = 0
    while step >= step_tol and iters < max_iters:
        iters += 1
        cands = np.concatenate([x + step * eye, x - step * eye], axis=0)
        vals = f(cands)
        plus, minus = vals[:n], vals[n:]
        improving = np.maximum(plus, minus) > fx
        if improving.any():
            best = int(np.argmax(vals))
            delta = np.where(plus >= minus, step, -step) * improving
            trial = x + delta
            tval = float(f(trial[None])[0])
            if tval > fx and tval >= vals[best]:
                x, fx = trial, tval
                # valley following: keep replaying a successful combined move
                for _ in range(8):
                    tval = float(f((x + delta)[None])[0])
                    if tval <= fx:
                        break
                    x, fx = x + delta, tval
            else:
                x, fx = cands[best], float(vals[best])
        else:
            step *= 0.5
    return x, fx


def _rank_one_rows(p: Povm) -> np.ndarray:
    """Split each element into rank-one pieces; the split refines the outcome."""
    rows = []
    for e in p.elements:
        lam, vec = np.linalg.eigh((e + e.conj().T) / 2)
        for i in range(len(lam)):
            if lam[i] > 1e-12:
                rows.append(np.sqrt(lam[i]) * vec[:, i])
    return np.array(rows)


def _povm_from_rows(rows: np.ndarray) -> Povm:
    """Exact completion-to-identity normalization of candidate outcome vectors."""
    gram = rows.conj().T @ rows
    lam, vec = np.linalg.eigh(gram)
    if lam[0] <= 1e-10 * max(float(lam[-1]), 1e-300):
        raise ValueError("outcome vectors nearly fail to span the space")
    inv_sqrt = (vec / np.sqrt(lam)) @ vec.conj().T
    w = rows @ inv_sqrt
    return Povm([np.outer(r, r.conj()) for r in w])


def _mi_objective(conds: np.ndarray, probs: np.ndarray, k: int, d: int):
    """Batched I(V;Z) of normalized rank-one POVMs given by flattened vectors."""
    nv = conds.shape[0]
    cond_rows = conds.reshape(nv, d * d).T  # column v: rho_v flattened over (a, b)

    def f(x: np.ndarray) -> np.ndarray:
        n = x.shape[0]
        half = k * d
        b = (x[:, :half] + 1j * x[:, half:]).reshape(n, k, d)
        gram = np.matmul(b.conj().transpose(0, 2, 1), b)
        lam, vec = np.linalg.eigh(gram)
        bad = lam[:, 0] <= 1e-9 * np.maximum(lam[:, -1], 1e-300)
        lam = np.maximum(lam, 1e-300)
        inv_sqrt = np.matmul(vec * (lam ** -0.5)[:, None, :], vec.conj().transpose(0, 2, 1))
        w = np.matmul(b, inv_sqrt).reshape(n * k, d)
        outer = (w.conj()[:, :, None] * w[:, None, :]).reshape(n * k, d * d)
        q = (outer @ cond_rows).real.reshape(n, k, nv).transpose(0, 2, 1)
        q = np.clip(q, 0.0, None) * probs[None, :, None]
        q = q / np.maximum(q.sum(axis=(1, 2), keepdims=True), 1e-300)
        vals = _entropy_rows(q.sum(2), 1) + _entropy_rows(q.sum(1), 1) - _entropy_rows(q, (1, 2))
        vals[bad] = -np.inf
        return vals

    return f


def _warm_povms(s: CqState) -> list:
    warm = []
    try:
        warm.append(pretty_good_povm(s))
    except ValueError:
        pass
    for cond in s.conditionals:
        lam, vec = np.linalg.eigh(cond)
        warm.append(Povm([np.outer(vec[:, i], vec[:, i].conj()) for i in range(len(lam))]))
    try:
        m = _check_ccq_labels(s)
        if 2 ** m == s.dim:
            for y in sorted({v[1] for v in s.labels}):
                warm.append(conditional_x_povm(y))
    except (ValueError, TypeError, IndexError):
        pass
    return warm


def optimize_accessible_info(
    s: CqState,
    cfg: Optional[OptimizerConfig] = None,
    warm_povms: Sequence[Povm] = (),
    upper_bound: Optional[float] = None,
) -> AccInfoEstimate:
    """Best-found I(V;Z) over the restart search; deterministic for a fixed seed.

    Every warm start (built-in and caller-injected) is evaluated directly and
    refined, so the result dominates all of them; random restarts fill the
    remaining budget.  All reported values are re-evaluated through the
    validated measurement path before being trusted.
    """
    cfg = cfg if cfg is not None else OptimizerConfig()
    d = s.dim
    if d > DENSE_DIM_CAP:
        raise ValueError(f"dimension {d} too large for the dense search (cap {DENSE_DIM_CAP})")
    kmin, kmax = cfg.resolve_outcomes(d)
    conds = np.stack(s.conditionals)
    probs = np.asarray(s.probs, dtype=float)

    warm = _warm_povms(s) + [p for p in warm_povms]
    best_value, best_povm = -np.inf, None
    for p in warm:
        v = measured_info(s, p)
        if v > best_value:
            best_value, best_povm = v, p

    total = max(cfg.restarts, len(warm))
    for i in range(total):
        rng = np.random.default_rng(cfg.seed + i)
        if i < len(warm):
            rows = _rank_one_rows(warm[i])
            k = rows.shape[0]
        else:
            k = int(rng.integers(kmin, kmax + 1))
            rows = (
                rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
            ) / math.sqrt(d)
        x0 = np.concatenate([rows.real.ravel(), rows.imag.ravel()])
        f = _mi_objective(conds, probs, k, d)
        x, fx = _pattern_search(f, x0, 0.25, cfg.step_tolerance, cfg.max_iters)
        if fx > best_value:
            half = k * d
            refined = (x[:half] + 1j * x[half:]).reshape(k, d)
            try:
                p = _povm_from_rows(refined)
                v = measured_info(s, p)
            except ValueError:
                continue
            if v > best_value:
                best_value, best_povm = v, p

    return AccInfoEstimate(float(best_value), best_povm, upper_bound, total)


def min_output_entropy(s: CqState, cfg: Optional[OptimizerConfig] = None) -> float:
    """Best-found minimum of H over outputs of the rescaled-conditional POVM.

    Minimizing over pure input states suffices: the outcome distribution is
    linear in the state and entropy is concave, so the minimum over the
    density-operator simplex sits at an extreme point.  Warm starts at every
    conditional eigenvector plus random restarts drive the search.
    """
    cfg = cfg if cfg is not None else OptimizerConfig()
    povm = pretty_good_povm(s)  # raises unless the ensemble average is id/d
    d = s.dim
    elements = np.stack(povm.elements)

    def f(x: np.ndarray) -> np.ndarray:
        psi = x[:, :d] + 1j * x[:, d:]
        nrm = (np.abs(psi) ** 2).sum(axis=1)
        bad = nrm < 1e-12
        q = np.einsum("na,kab,nb->nk", psi.conj(), elements, psi, optimize=True).real
        q = np.clip(q, 0.0, None) / np.maximum(nrm, 1e-300)[:, None]
        q = q / np.maximum(q.sum(axis=1, keepdims=True), 1e-300)
        vals = -_entropy_rows(q, 1)
        vals[bad] = -np.inf
        return vals

    warm = []
    for cond in s.conditionals:
        lam, vec = np.linalg.eigh(cond)
        for i in range(len(lam)):
            if lam[i] > 1e-9:
                warm.append(vec[:, i])

    best_x, best_fx = None, -np.inf
    total = max(cfg.restarts, len(warm))
    for i in range(total):
        rng = np.random.default_rng(cfg.seed + i)
        if i < len(warm):
            psi0 = warm[i]
        else:
            psi0 = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            psi0 = psi0 / np.linalg.norm(psi0)
        x0 = np.concatenate([psi0.real, psi0.imag])
        x, fx = _pattern_search(f, x0, 0.25, cfg.step_tolerance, cfg.max_iters)
        if fx > best_fx:
            best_x, best_fx = x, fx

    psi = best_x[:d] + 1j * best_x[d:]
    psi = psi / np.linalg.norm(psi)
    return shannon_entropy(apply_povm(povm, np.outer(psi, psi.conj())))


def locking_bound_chain_check(m: int, sigma: np.ndarray) -> ChainReport:
    """Verify, on one state, each numbered step behind the analytic locking bound."""
    if not 1 <= m <= 3:
        raise ValueError("chain check is a dense computation; m must be in 1..3")
    sigma = np.asarray(sigma, dtype=complex)
    if not validate_density(sigma).ok:
        raise ValueError("sigma is not a valid density operator")
    s = locking_state(m)
    if sigma.shape != (s.dim, s.dim):
        raise ValueError(f"sigma must have dimension {s.dim}")

    h_full = shannon_entropy(apply_povm(pretty_good_povm(s), sigma))
    h_y = m * math.log2(3.0)
    ys = list(all_pauli_strings(m, (1, 2, 3)))
    per_y = [
        shannon_entropy(apply_povm(binary_locking_povm(m, y), sigma)) for y in ys
    ]
    mean_h = float(np.mean(per_y))

    abs_t = [abs(np.trace(pauli_string_matrix(y) @ sigma).real) for y in ys]
    mean_abs_t = float(np.mean(abs_t))
    total_sq = sum(
        float(np.trace(pauli_string_matrix(y) @ sigma).real) ** 2
        for y in all_pauli_strings(m)
    )

    return ChainReport(
        m=m,
        entropy_split_dev=abs(h_full - (h_y + mean_h)),
        binary_entropy_slack=mean_h - (1.0 - mean_abs_t),
        cauchy_schwarz_slack=locking_upper_bound(m) - mean_abs_t,
        bloch_norm_slack=2.0 ** m - total_sq,
    )
