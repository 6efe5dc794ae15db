"""One-time-pad attacks: certain with the header, near-blind without it."""

import numpy as np
import pytest

from locklab.attack import (
    FIXED_BASIS_PRESET,
    AttackStats,
    KeySymbol,
    Message,
    blind_success_probability,
    otp_decrypt,
    otp_encrypt,
    run_blind_attack,
    run_header_attack,
)
from locklab.measurement import conditional_x_povm, pretty_good_povm
from locklab.states import locking_state


def test_key_and_message_validation():
    KeySymbol(0, (1, 2, 3))
    with pytest.raises(ValueError):
        KeySymbol(2, (1,))
    with pytest.raises(ValueError):
        KeySymbol(0, (0, 1))
    Message((0, 1, 2), 1)
    with pytest.raises(ValueError):
        Message((3,), 0)
    with pytest.raises(ValueError):
        Message((0,), 2)


def test_otp_round_trip():
    rng = np.random.default_rng(31)
    for _ in range(50):
        m = int(rng.integers(1, 6))
        k = KeySymbol(int(rng.integers(0, 2)), tuple(rng.integers(1, 4, size=m)))
        msg = Message(tuple(rng.integers(0, 3, size=m)), int(rng.integers(0, 2)))
        assert otp_decrypt(k, otp_encrypt(k, msg)) == msg


def test_otp_shape_mismatch():
    k = KeySymbol(0, (1, 2))
    with pytest.raises(ValueError):
        otp_encrypt(k, Message((0,), 1))
    with pytest.raises(ValueError):
        otp_decrypt(k, Message((0, 0, 0), 1))


@pytest.mark.parametrize("m", [1, 2, 3, 7])
def test_header_attack_always_succeeds(m):
    stats = run_header_attack(m, trials=500, seed=13)
    assert stats.success_rate == 1.0
    assert stats.successes == stats.trials == 500
    assert stats.m == m


def test_header_attack_custom_header():
    stats = run_header_attack(3, trials=200, seed=5, known_head=(2, 0, 1))
    assert stats.success_rate == 1.0


def test_header_attack_validation():
    with pytest.raises(ValueError):
        run_header_attack(0, trials=10, seed=0)
    with pytest.raises(ValueError):
        run_header_attack(2, trials=0, seed=0)
    with pytest.raises(ValueError):
        run_header_attack(2, trials=10, seed=0, known_head=(0, 3))


def test_attack_stats_validation():
    with pytest.raises(ValueError):
        AttackStats(10, 11, 1.1, 1, 0)


def test_blind_preset_oracle_values():
    # match the single basis with chance 3^-m, else a fair coin
    assert blind_success_probability(1, FIXED_BASIS_PRESET) == pytest.approx(2 / 3)
    assert blind_success_probability(2, FIXED_BASIS_PRESET) == pytest.approx(5 / 9)
    assert blind_success_probability(10, FIXED_BASIS_PRESET) == pytest.approx(
        3.0**-10 + (1 - 3.0**-10) / 2
    )


def test_blind_preset_simulation_tracks_oracle():
    for m in (1, 2):
        stats = run_blind_attack(m, trials=20000, strategy=FIXED_BASIS_PRESET, seed=7)
        assert stats.success_rate == pytest.approx(
            blind_success_probability(m, FIXED_BASIS_PRESET), abs=0.02
        )


def test_blind_preset_is_matrix_free():
    stats = run_blind_attack(30, trials=1000, strategy=FIXED_BASIS_PRESET, seed=9)
    assert abs(stats.success_rate - 0.5) < 0.06


def test_blind_povm_strategy():
    povm = conditional_x_povm((3,))
    exact = blind_success_probability(1, povm)
    assert exact == pytest.approx(2 / 3)
    stats = run_blind_attack(1, trials=20000, strategy=povm, seed=11)
    assert stats.success_rate == pytest.approx(exact, abs=0.02)


def test_blind_pgm_strategy_oracle():
    exact = blind_success_probability(1, pretty_good_povm(locking_state(1)))
    assert exact == pytest.approx(2 / 3, abs=1e-12)


def test_blind_attack_validation():
    with pytest.raises(ValueError):
        run_blind_attack(1, trials=10, strategy="guess", seed=0)
    with pytest.raises(ValueError):
        run_blind_attack(3, trials=10, strategy=conditional_x_povm((1, 2, 3)), seed=0)


def test_blind_never_beats_half_plus_bias_much():
    # no strategy should stray above the accessible-information regime;
    # the best binary guess sits near 1/2 + small bias for larger m
    for m in (4, 8):
        exact = blind_success_probability(m, FIXED_BASIS_PRESET)
        assert 0.5 < exact < 0.52
