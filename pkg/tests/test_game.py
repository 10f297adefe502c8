"""Parameters, payoff matrix, fines, fitness, and social welfare."""

import dataclasses
import math

import numpy as np
import pytest

from cyberevo import (
    STRATEGY_PAIRS,
    ZERO_FINES,
    FineScenario,
    GameParams,
    ParameterError,
    PopulationState,
    build_payoff_matrix,
    fitness_profile,
    social_welfare,
)

# Reference game with a single stable corner at full defence / full attack.
REF = dict(w=0.98, c_a=0.51, c_d=0.20, b_a=0.90, b_d=0.79, v=0.26)


def random_params(rng, with_fines=False):
    w = 1.0 - rng.uniform()
    c_a = w * rng.uniform(1e-6, 1.0 - 1e-6)
    c_d = w * rng.uniform(1e-6, 1.0 - 1e-6)
    b_a = c_a + (1.0 - c_a) * rng.uniform(1e-6, 1.0)
    b_d = c_d + (w - c_d) * rng.uniform(1e-6, 1.0)
    v = 1.0 - rng.uniform()
    extra = {}
    if with_fines:
        extra = dict(
            m=rng.uniform(), n=rng.uniform(),
            p=rng.uniform(0.0, 2.0), s=rng.uniform(0.0, 2.0),
        )
    return GameParams(w=w, c_a=c_a, c_d=c_d, b_a=b_a, b_d=b_d, v=v, **extra)


def test_valid_construction():
    params = GameParams(**REF)
    assert params.w == 0.98
    assert params.m == params.n == params.p == params.s == 0.0
    assert params.fine_successful == 0.0
    assert params.fine_unsuccessful == 0.0


def test_params_immutable():
    params = GameParams(**REF)
    with pytest.raises(dataclasses.FrozenInstanceError):
        params.w = 0.5


@pytest.mark.parametrize(
    "bad, named",
    [
        (dict(w=0.0), "0 < w <= 1"),
        (dict(w=1.5), "0 < w <= 1"),
        (dict(c_a=0.0), "0 < c_a < w"),
        (dict(c_a=0.99), "0 < c_a < w"),
        (dict(c_d=0.0), "0 < c_d < w"),
        (dict(c_d=0.98), "0 < c_d < w"),
        (dict(b_a=0.51), "c_a < b_a"),
        (dict(b_d=0.99), "c_d < b_d <= w"),
        (dict(b_d=0.1), "c_d < b_d <= w"),
        (dict(v=0.0), "0 < v <= 1"),
        (dict(v=1.01), "0 < v <= 1"),
        (dict(m=-0.1), "0 <= m <= 1"),
        (dict(n=1.1), "0 <= n <= 1"),
        (dict(p=-1.0), "p >= 0"),
        (dict(s=-1.0), "s >= 0"),
        (dict(w=math.nan), "w finite"),
        (dict(b_a=math.inf), "b_a finite"),
    ],
)
def test_constraint_violations_named(bad, named):
    with pytest.raises(ParameterError, match="constraint violated") as info:
        GameParams(**{**REF, **bad})
    assert named in str(info.value)


def test_payoff_matrix_reference_values():
    matrix = build_payoff_matrix(GameParams(**REF))
    expected = {
        STRATEGY_PAIRS[0]: (0.0, 0.0),
        STRATEGY_PAIRS[1]: (-0.98, 0.39),
        STRATEGY_PAIRS[2]: (0.59, 0.0),
        STRATEGY_PAIRS[3]: (-0.7198, 0.156),
    }
    for pair, (d, a) in expected.items():
        assert matrix.defender(pair) == pytest.approx(d, abs=1e-12)
        assert matrix.attacker(pair) == pytest.approx(a, abs=1e-12)
        assert matrix[pair] == matrix.entries[pair]


def test_fines_enter_only_via_products():
    # (m, p) and (n, s) act through m*p and n*s alone: equal products,
    # equal payoffs.
    a = GameParams(**REF, m=0.5, p=0.4, n=0.25, s=0.8)
    b = GameParams(**REF, m=1.0, p=0.2, n=1.0, s=0.2)
    ma, mb = build_payoff_matrix(a), build_payoff_matrix(b)
    for pair in STRATEGY_PAIRS:
        assert ma[pair] == pytest.approx(mb[pair], abs=1e-15)


def test_fine_scenario_apply():
    params = GameParams(**REF)
    fined = FineScenario(f_u=0.3, f_s=0.7).apply(params)
    assert (fined.m, fined.p, fined.n, fined.s) == (1.0, 0.7, 1.0, 0.3)
    assert fined.fine_successful == 0.7
    assert fined.fine_unsuccessful == 0.3
    # Non-fine parameters untouched.
    assert (fined.w, fined.c_a, fined.b_a) == (params.w, params.c_a, params.b_a)
    zeroed = ZERO_FINES.apply(params)
    assert zeroed.fine_successful == 0.0
    assert zeroed.fine_unsuccessful == 0.0
    assert build_payoff_matrix(zeroed).entries == build_payoff_matrix(params).entries


def test_fines_reduce_attacker_payoffs_only():
    rng = np.random.default_rng(20)
    for _ in range(200):
        params = random_params(rng)
        fined = FineScenario(f_u=0.5, f_s=0.5).apply(params)
        base, with_fines = build_payoff_matrix(params), build_payoff_matrix(fined)
        for pair in STRATEGY_PAIRS:
            assert with_fines.defender(pair) == base.defender(pair)
            assert with_fines.attacker(pair) <= base.attacker(pair)


def test_fitness_profile_matches_matrix_mixing():
    rng = np.random.default_rng(21)
    for _ in range(300):
        params = random_params(rng, with_fines=True)
        state = PopulationState(rng.uniform(), rng.uniform())
        prof = fitness_profile(params, state)
        matrix = build_payoff_matrix(params)
        alpha, beta = state.alpha, state.beta
        nd = (1 - alpha) * matrix.defender(STRATEGY_PAIRS[0]) + alpha * matrix.defender(STRATEGY_PAIRS[1])
        d = (1 - alpha) * matrix.defender(STRATEGY_PAIRS[2]) + alpha * matrix.defender(STRATEGY_PAIRS[3])
        na = (1 - beta) * matrix.attacker(STRATEGY_PAIRS[0]) + beta * matrix.attacker(STRATEGY_PAIRS[2])
        at = (1 - beta) * matrix.attacker(STRATEGY_PAIRS[1]) + beta * matrix.attacker(STRATEGY_PAIRS[3])
        assert prof.f_no_defence == pytest.approx(nd, abs=1e-12)
        assert prof.f_defence == pytest.approx(d, abs=1e-12)
        assert prof.f_no_attack == 0.0
        assert prof.f_attack == pytest.approx(at, abs=1e-12)
        assert prof.mean_defender == pytest.approx(
            beta * prof.f_defence + (1 - beta) * prof.f_no_defence, abs=1e-12
        )
        assert prof.mean_attacker == pytest.approx(
            alpha * prof.f_attack + (1 - alpha) * prof.f_no_attack, abs=1e-12
        )
        assert prof.f_no_attack == pytest.approx(na, abs=1e-12)


def test_social_welfare_reference_quartet():
    params = GameParams(**REF)
    values = [social_welfare(params, pair) for pair in STRATEGY_PAIRS]
    assert values[0] == pytest.approx(0.0, abs=1e-9)
    assert values[1] == pytest.approx(-0.59, abs=1e-9)
    assert values[2] == pytest.approx(0.59, abs=1e-9)
    assert values[3] == pytest.approx(-0.5638, abs=1e-9)
    assert round(values[3], 2) == -0.56


def test_social_welfare_is_payoff_sum():
    rng = np.random.default_rng(22)
    for _ in range(200):
        params = random_params(rng, with_fines=True)
        matrix = build_payoff_matrix(params)
        for pair in STRATEGY_PAIRS:
            d, a = matrix[pair]
            assert social_welfare(params, pair) == pytest.approx(d + a, abs=1e-15)


def test_strategy_pair_labels_and_order():
    labels = [pair.label() for pair in STRATEGY_PAIRS]
    assert labels == [
        "NoDefence,NoAttack",
        "NoDefence,Attack",
        "Defence,NoAttack",
        "Defence,Attack",
    ]
