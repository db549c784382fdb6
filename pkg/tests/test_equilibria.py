from fractions import Fraction

import pytest

from qgames.distributions import Dist, MixedProfile
from qgames.equilibria import (
    EquilibriumReport,
    mixed_nash_2x2,
    security_level,
    security_scan,
    verify_classical_eq,
    verify_quantum_eq,
)
from qgames.ewl import MAX_GAMMA, EwlConfig, HaarMixture, point_mixture
from qgames.games import Game, chicken, prisoners_dilemma, simplified_poker
from qgames.quantum import FLIP2, IDENTITY2

F = Fraction


def test_mixed_nash_poker():
    eqs = mixed_nash_2x2(simplified_poker())
    assert len(eqs) == 1
    eq = eqs[0]
    assert not eq.degenerate
    assert eq.profile.row.weights == (F(2, 3), F(1, 3))
    assert eq.profile.col.weights == (F(2, 3), F(1, 3))
    assert eq.payoff == (F(5, 6), F(-5, 6))


def test_mixed_nash_chicken():
    eqs = mixed_nash_2x2(chicken())
    pure = [e for e in eqs if e.note.startswith("pure")]
    mixed = [e for e in eqs if e.note == "fully mixed"]
    assert len(pure) == 2 and len(mixed) == 1
    assert mixed[0].profile.row.weights == (F(1, 2), F(1, 2))
    assert mixed[0].payoff == (F(1), F(1))


def test_mixed_nash_pd_has_no_interior_equilibrium():
    eqs = mixed_nash_2x2(prisoners_dilemma())
    assert len(eqs) == 1
    assert eqs[0].note == "pure (s2,t2)"
    assert eqs[0].payoff == (F(1), F(1))


def test_mixed_nash_degenerate_family():
    # column player scores 0 everywhere: any row mix keeps them indifferent
    game = Game(
        strategy_names=(("a", "b"), ("c", "d")),
        payoffs=(((1, 0), (2, 0)), ((3, 0), (0, 0))),
    )
    families = [e for e in mixed_nash_2x2(game) if e.degenerate]
    assert len(families) == 1
    family = families[0]
    assert family.profile.col.weights == (F(1, 2), F(1, 2))
    report = verify_classical_eq(game, family.profile)
    assert report.certified


def test_mixed_nash_fully_degenerate():
    game = Game(
        strategy_names=(("a", "b"), ("c", "d")),
        payoffs=(((1, 1), (1, 1)), ((1, 1), (1, 1))),
    )
    eqs = mixed_nash_2x2(game)
    assert any(e.degenerate and e.note == "every mixed profile is an equilibrium" for e in eqs)


def test_all_solver_outputs_certify_with_zero_gain():
    for game in (prisoners_dilemma(), simplified_poker(), chicken()):
        for eq in mixed_nash_2x2(game):
            report = verify_classical_eq(game, eq.profile)
            assert report.certified
            assert report.max_deviation_gain == (0, 0)
            assert report.payoff == eq.payoff


def test_verify_classical_rejects_non_equilibrium():
    report = verify_classical_eq(
        chicken(), MixedProfile.from_weights((F(1), F(0)), (F(1), F(0)))
    )
    assert not report.certified
    assert report.max_deviation_gain[1] == F(1)  # second player grabs 3 over 2
    assert report.method == "exact"


def test_report_invariant_enforced():
    with pytest.raises(ValueError):
        EquilibriumReport(
            description="bogus",
            payoff=(0, 0),
            payoff_se=(0, 0),
            max_deviation_gain=(1, 0),
            epsilon=0,
            certified=True,
            method="exact",
        )


def test_verify_quantum_haar_equilibrium_pd():
    cfg = EwlConfig(prisoners_dilemma(), MAX_GAMMA)
    report = verify_quantum_eq(
        cfg, HaarMixture(1, 1), HaarMixture(1, 1), deviation_grid=6, samples=30000, seed=5
    )
    assert report.method == "monte_carlo"
    assert report.samples == 30000 and report.seed == 5
    assert abs(report.payoff[0] - 2.25) < 0.03
    assert max(report.max_deviation_gain) <= 0.03
    assert report.certified


def test_verify_quantum_detects_classical_domination():
    cfg = EwlConfig(prisoners_dilemma(), 0.0)
    report = verify_quantum_eq(
        cfg, point_mixture(IDENTITY2), point_mixture(IDENTITY2), deviation_grid=6
    )
    assert report.method == "grid"
    assert not report.certified
    assert abs(report.max_deviation_gain[0] - 2.0) < 1e-9
    assert abs(report.max_deviation_gain[1] - 2.0) < 1e-9


def test_verify_quantum_poker_value():
    cfg = EwlConfig(simplified_poker(), MAX_GAMMA)
    report = verify_quantum_eq(
        cfg, HaarMixture(2, 1), HaarMixture(2, 1), deviation_grid=6, samples=30000, seed=6
    )
    assert abs(report.payoff[0] - 15 / 16) < 0.03
    assert abs(report.payoff[1] + 15 / 16) < 0.03
    assert report.certified


def test_security_level_classical():
    poker = simplified_poker()
    eq_strategy = Dist((0, 1), (F(2, 3), F(1, 3)))
    assert security_level(poker, 0, eq_strategy) == F(5, 6)
    pd = prisoners_dilemma()
    assert security_level(pd, 0, Dist((0, 1), (F(0), F(1)))) == F(1)
    # player 2 in poker guarantees -5/6 with their equilibrium mixture
    assert security_level(poker, 1, Dist((0, 1), (F(2, 3), F(1, 3)))) == F(-5, 6)


def test_security_minimax_consistency():
    # zero-sum: the equilibrium strategy's floor equals the equilibrium value
    poker = simplified_poker()
    eq = mixed_nash_2x2(poker)[0]
    assert security_level(poker, 0, eq.profile.row) == eq.payoff[0]


def test_security_quantum_haar_poker():
    cfg = EwlConfig(simplified_poker(), MAX_GAMMA)
    scan = security_scan(cfg, 0, HaarMixture(3, 1), opponent_grid=6, samples=40000, seed=7)
    assert abs(scan.min() - 15 / 16) < 0.03
    assert scan.max() - scan.min() < 0.03
    level = security_level(cfg, 0, HaarMixture(7, 40000), opponent_grid=6)
    assert abs(level - 15 / 16) < 0.03


def test_security_quantum_finite_strategy():
    cfg = EwlConfig(prisoners_dilemma(), 0.0)
    # always-defect against the worst opponent still earns 1 classically
    scan = security_scan(cfg, 0, point_mixture(FLIP2), opponent_grid=6)
    assert abs(scan.min() - 1.0) < 1e-9
