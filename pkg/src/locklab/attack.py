"""One-time-pad use of the locking key and the known-header attack on it.

The key is one bit x plus m basis trits y; the pad adds the trits mod 3 to
a trit header and xors the bit onto the final message bit.  An adversary
who knows the header plaintext learns y from the ciphertext, measures the
key state in the right bases, and reads off x with certainty.  A blind
adversary (no header knowledge) is simulated for contrast and stays near
coin-flipping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .measurement import Povm, measure_cq
from .states import CqState, locking_state
from .pauli import validate_pauli_string

FIXED_BASIS_PRESET = "fixed-basis"


@dataclass
class KeySymbol:
    x: int
    y: tuple

    def __post_init__(self):
        if self.x not in (0, 1):
            raise ValueError("key bit must be 0 or 1")
        self.y = validate_pauli_string(self.y, alphabet=(1, 2, 3))


@dataclass
class Message:
    """A trit header plus one final bit; ciphertexts share the same shape."""

    head: tuple
    last: int

    def __post_init__(self):
        self.head = tuple(int(t) for t in self.head)
        if any(t not in (0, 1, 2) for t in self.head):
            raise ValueError("header symbols must be trits in {0,1,2}")
        if self.last not in (0, 1):
            raise ValueError("final symbol must be a bit")


Ciphertext = Message


@dataclass
class AttackStats:
    trials: int
    successes: int
    success_rate: float
    m: int
    seed: int

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")


def otp_encrypt(k: KeySymbol, msg: Message) -> Ciphertext:
    """Add the key trits to the header mod 3 and xor the key bit onto the last bit."""
    if len(k.y) != len(msg.head):
        raise ValueError("key and message shapes differ")
    head = tuple((t + (yi - 1)) % 3 for t, yi in zip(msg.head, k.y))
    return Ciphertext(head, msg.last ^ k.x)


def otp_decrypt(k: KeySymbol, c: Ciphertext) -> Message:
    """Componentwise inverse of otp_encrypt."""
    if len(k.y) != len(c.head):
        raise ValueError("key and ciphertext shapes differ")
    head = tuple((t - (yi - 1)) % 3 for t, yi in zip(c.head, k.y))
    return Message(head, c.last ^ k.x)


def run_header_attack(
    m: int,
    trials: int,
    seed: int,
    known_head: Optional[Sequence[int]] = None,
) -> AttackStats:
    """Known-header attack; recovers the final message bit in every trial.

    Per trial: draw a uniform key and a secret final bit, encrypt the known
    header plus the secret, recover y by subtracting the header from the
    ciphertext, measure each key-state qubit in its now-known basis, and
    undo the pad with the measured parity.  The measurement is simulated
    through the per-qubit sampling form of the ensemble, so no matrices are
    built and any m is fine.  The whole pipeline is vectorized over trials;
    it matches a trial-by-trial loop over the same primitives exactly.
    """
    if m < 1 or trials < 1:
        raise ValueError("need m >= 1 and trials >= 1")
    if known_head is None:
        known_head = (0,) * m
    known_head = np.asarray(known_head, dtype=np.int64)
    if known_head.shape != (m,) or not np.isin(known_head, (0, 1, 2)).all():
        raise ValueError("known header must be m trits")

    rng = np.random.default_rng(seed)
    x = rng.integers(0, 2, size=trials)
    y = rng.integers(1, 4, size=(trials, m))
    secret = rng.integers(0, 2, size=trials)

    cipher_head = (known_head[None, :] + (y - 1)) % 3
    cipher_last = secret ^ x

    y_recovered = (cipher_head - known_head[None, :]) % 3 + 1
    if not np.array_equal(y_recovered, y):
        raise AssertionError("header subtraction failed to recover the basis string")

    # Correct-basis measurement: outcome bits are a uniform string of parity x.
    head_bits = rng.integers(0, 2, size=(trials, m - 1)) if m > 1 else np.zeros((trials, 0), dtype=np.int64)
    head_parity = head_bits.sum(axis=1) % 2
    last_bit = head_parity ^ x
    measured_parity = (head_parity + last_bit) % 2
    guessed_last = cipher_last ^ measured_parity

    successes = int((guessed_last == secret).sum())
    return AttackStats(trials, successes, successes / trials, m, seed)


def blind_success_probability(m: int, strategy: Union[str, Povm]) -> float:
    """Exact success probability of the blind attack for a given strategy."""
    if isinstance(strategy, str):
        if strategy != FIXED_BASIS_PRESET:
            raise ValueError(f"unknown preset {strategy!r}")
        match = 3.0 ** -m
        return match + (1.0 - match) / 2.0
    weights, _ = _blind_tables(locking_state(m), strategy)
    return float(weights.max(axis=0).sum())


def _blind_tables(s: CqState, p: Povm):
    """Per-outcome mass w(x, z) and the maximum-likelihood guess table."""
    joint = measure_cq(p, s)  # labels (x, y) by outcomes
    x_of_label = np.array([v[0] for v in s.labels])
    weights = np.stack([joint[x_of_label == x].sum(axis=0) for x in (0, 1)])
    return weights, weights.argmax(axis=0)


def run_blind_attack(
    m: int,
    trials: int,
    strategy: Union[str, Povm],
    seed: int,
) -> AttackStats:
    """Attack without the ciphertext header: measure E alone and guess x.

    The preset strategy measures every qubit in one fixed basis and guesses
    the outcome parity, which is the maximum-likelihood rule for it; it runs
    matrix-free for any m.  A Povm strategy (m <= 2, dense) is sampled from
    its exact outcome distribution with maximum-likelihood post-processing.
    """
    if m < 1 or trials < 1:
        raise ValueError("need m >= 1 and trials >= 1")
    rng = np.random.default_rng(seed)

    if isinstance(strategy, str):
        if strategy != FIXED_BASIS_PRESET:
            raise ValueError(f"unknown preset {strategy!r}")
        x = rng.integers(0, 2, size=trials)
        y = rng.integers(1, 4, size=(trials, m))
        head_bits = rng.integers(0, 2, size=(trials, m - 1)) if m > 1 else np.zeros((trials, 0), dtype=np.int64)
        r_last = (head_bits.sum(axis=1) % 2) ^ x
        r = np.concatenate([head_bits, r_last[:, None]], axis=1)
        # Mismatched-basis outcomes are fair coins, matched ones reveal r.
        coins = rng.integers(0, 2, size=(trials, m))
        measured = np.where(y == 3, r, coins)
        guess = measured.sum(axis=1) % 2
        successes = int((guess == x).sum())
        return AttackStats(trials, successes, successes / trials, m, seed)

    if m > 2:
        raise ValueError("dense POVM strategies cover m <= 2; use the preset beyond")
    s = locking_state(m)
    _, guess_table = _blind_tables(s, strategy)
    joint = measure_cq(strategy, s)
    outcome_given_label = joint / joint.sum(axis=1, keepdims=True)
    cdf = outcome_given_label.cumsum(axis=1)

    labels = rng.choice(len(s.labels), size=trials, p=s.probs)
    u = rng.random(trials)
    z = (u[:, None] > cdf[labels]).sum(axis=1)
    x_true = np.array([v[0] for v in s.labels])[labels]
    successes = int((guess_table[z] == x_true).sum())
    return AttackStats(trials, successes, successes / trials, m, seed)
