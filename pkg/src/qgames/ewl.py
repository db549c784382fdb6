"""Entangled-referee quantization of 2x2 games.

The referee prepares J(gamma)|00>, each player applies a 2x2 unitary to
their qubit, and the referee measures in the entangled basis {J|xy>},
paying the cell (x, y).  gamma interpolates from a separable initial state
(gamma=0, classically equivalent play) to the maximally entangled one
(gamma=pi/2).

J(gamma) is generated by the tensor square of the SU(2) bit-flip
[[0,1],[-1,0]], so it commutes with every one-parameter classical strategy
su2(theta,0,0); that commutation is what makes the classical embeddings
reproduce the base game and its mixed extension exactly.

Scalar operations go through ``quantum``/``distributions`` literally as the
composition measure-then-pushforward-then-expectation; ``g_q_batch`` is the
vectorized equivalent used by the Monte-Carlo estimators (the two paths are
cross-checked in the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distributions import Dist, expectation, pushforward
from .games import Game, InvalidProfileError
from .quantum import (
    FLIP2,
    IDENTITY2,
    Superposition,
    Unitary2,
    haar_su2_batch,
    measure,
    su2_from_angles,
)

MAX_GAMMA = math.pi / 2

PROFILE_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))

_FLIP = FLIP2.matrix


@dataclass(frozen=True)
class EwlConfig:
    """A 2x2 game together with the referee's entanglement parameter."""

    game: Game
    gamma: float

    def __post_init__(self):
        if not self.game.is_2x2():
            raise InvalidProfileError("the quantization protocol expects a 2x2 game")
        if not -1e-12 <= self.gamma <= MAX_GAMMA + 1e-12:
            raise InvalidProfileError(f"gamma {self.gamma!r} outside [0, pi/2]")

    def payoff_table(self) -> np.ndarray:
        """Float payoffs per cell, shape (4, 2), rows in PROFILE_BASIS order."""
        return np.array(
            [[float(u) for u in self.game.payoff(p)] for p in PROFILE_BASIS], dtype=float
        )


@dataclass(frozen=True)
class HaarMixture:
    """The uniform (Haar) mixture over pure quantum strategies.

    Draw j of player slot k is haar_su2(seed, 2*j + k), so the two slots use
    disjoint counter streams even under a shared seed.
    """

    seed: int
    sample_count: int

    def __post_init__(self):
        if self.sample_count < 1:
            raise InvalidProfileError("sample_count must be at least 1")


QuantumMixture = Dist | HaarMixture


def point_mixture(u: Unitary2) -> Dist:
    return Dist((u,), (Fraction(1),))


def entangler(gamma: float) -> np.ndarray:
    """The referee's entangling unitary J(gamma) as a 4x4 matrix."""
    c, s = math.cos(gamma / 2.0), math.sin(gamma / 2.0)
    return c * np.eye(4, dtype=complex) + 1j * s * np.kron(_FLIP, _FLIP)


def classical_unitary(p: float) -> Unitary2:
    """The embedding of the mixed strategy (p, 1-p) as a pure quantum strategy."""
    if not 0.0 <= p <= 1.0:
        raise InvalidProfileError(f"probability {p!r} outside [0, 1]")
    return su2_from_angles(2.0 * math.acos(math.sqrt(p)), 0.0, 0.0)


def protocol_state(config: EwlConfig, uA: Unitary2, uB: Unitary2) -> Superposition:
    """The joint state in the referee's observational basis {J|xy>}.

    Basis label (x, y) names the cell (row x+1, column y+1); amplitude of
    (x, y) is <J xy | (uA tensor uB) J |00>>.
    """
    j = entangler(config.gamma)
    psi = np.kron(uA.matrix, uB.matrix) @ j[:, 0]
    return Superposition(PROFILE_BASIS, tuple(j.conj().T @ psi))


def g_q(config: EwlConfig, uA: Unitary2, uB: Unitary2) -> tuple[float, float]:
    """Expected payoffs of a pure quantum profile.

    Literally expectation . pushforward . measure applied to the protocol
    state, so the quantization extends the base game by construction.
    """
    d = measure(protocol_state(config, uA, uB))
    value = expectation(pushforward(config.game, d))
    return float(value[0]), float(value[1])


def _probs_batch(gamma: float, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Measurement probabilities for stacked strategy pairs, shape (n, 4).

    Uses (A tensor B) vec(M) = vec(A M B^T): with P the initial state J|00>
    reshaped to 2x2, the amplitude matrix is c*W - i*s*(F W F^T) for
    W = uA P uB^T.
    """
    c, s = math.cos(gamma / 2.0), math.sin(gamma / 2.0)
    p0 = np.array([[c, 0.0], [0.0, 1j * s]], dtype=complex)
    w = np.einsum("nab,bc,ndc->nad", ua, p0, ub)
    fwf = np.empty_like(w)
    fwf[:, 0, 0] = w[:, 1, 1]
    fwf[:, 0, 1] = -w[:, 1, 0]
    fwf[:, 1, 0] = -w[:, 0, 1]
    fwf[:, 1, 1] = w[:, 0, 0]
    amps = c * w - 1j * s * fwf
    probs = np.abs(amps.reshape(-1, 4)) ** 2
    return probs / probs.sum(axis=1, keepdims=True)


def g_q_batch(config: EwlConfig, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    """Vectorized g_q over stacked (n, 2, 2) strategy arrays; returns (n, 2)."""
    return _probs_batch(config.gamma, ua, ub) @ config.payoff_table()


def haar_draws(m: HaarMixture, slot: int, n: int) -> np.ndarray:
    """The first n counter-based draws of a Haar mixture in player slot 0 or 1."""
    return haar_su2_batch(m.seed, np.arange(n, dtype=np.uint64) * np.uint64(2) + np.uint64(slot))


def _sample_probs(config: EwlConfig, mA: QuantumMixture, mB: QuantumMixture) -> np.ndarray:
    """Per-sample cell probabilities (n, 4) under at least one Haar mixture."""
    n = max(m.sample_count for m in (mA, mB) if isinstance(m, HaarMixture))
    if isinstance(mA, HaarMixture) and isinstance(mB, HaarMixture):
        return _probs_batch(config.gamma, haar_draws(mA, 0, n), haar_draws(mB, 1, n))
    if isinstance(mA, HaarMixture):
        draws = haar_draws(mA, 0, n)
        total = np.zeros((n, 4))
        for v, weight in mB.items():
            fixed = np.broadcast_to(v.matrix, (n, 2, 2))
            total += float(weight) * _probs_batch(config.gamma, draws, fixed)
        return total
    draws = haar_draws(mB, 1, n)
    total = np.zeros((n, 4))
    for u, weight in mA.items():
        fixed = np.broadcast_to(u.matrix, (n, 2, 2))
        total += float(weight) * _probs_batch(config.gamma, fixed, draws)
    return total


def _finite_probs(config: EwlConfig, mA: Dist, mB: Dist) -> np.ndarray:
    total = np.zeros(4)
    for u, wu in mA.items():
        for v, wv in mB.items():
            d = measure(protocol_state(config, u, v))
            total += float(wu * wv) * np.array([d.prob(cell) for cell in PROFILE_BASIS])
    return total


def g_mq(
    config: EwlConfig, mA: QuantumMixture, mB: QuantumMixture
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Expected payoffs under mixed quantum strategies, with standard errors.

    Finite mixtures are summed exactly (standard error 0); Haar mixtures are
    averaged over counter-based Monte-Carlo draws, reported with the standard
    error of the mean.
    """
    table = config.payoff_table()
    if isinstance(mA, Dist) and isinstance(mB, Dist):
        pay = _finite_probs(config, mA, mB) @ table
        return (float(pay[0]), float(pay[1])), (0.0, 0.0)
    per_sample = _sample_probs(config, mA, mB) @ table
    n = per_sample.shape[0]
    mean = per_sample.mean(axis=0)
    se = per_sample.std(axis=0, ddof=1) / math.sqrt(n) if n > 1 else np.zeros(2)
    return (float(mean[0]), float(mean[1])), (float(se[0]), float(se[1]))


def outcome_dist_mq(
    config: EwlConfig, mA: QuantumMixture, mB: QuantumMixture
) -> tuple[Dist, tuple[float, float, float, float]]:
    """The averaged measurement distribution over cells, before expectation."""
    if isinstance(mA, Dist) and isinstance(mB, Dist):
        probs = _finite_probs(config, mA, mB)
        se = np.zeros(4)
    else:
        per_sample = _sample_probs(config, mA, mB)
        n = per_sample.shape[0]
        probs = per_sample.mean(axis=0)
        se = per_sample.std(axis=0, ddof=1) / math.sqrt(n) if n > 1 else np.zeros(4)
    probs = probs / probs.sum()
    return Dist(PROFILE_BASIS, tuple(float(p) for p in probs)), tuple(float(x) for x in se)


def _amp_coefficients(gamma: float) -> np.ndarray:
    """L[c] with amp_cell(c) = sum_ab L[c,a,b] * W_ab for W = uA P uB^T."""
    c, s = math.cos(gamma / 2.0), math.sin(gamma / 2.0)
    L = np.zeros((4, 2, 2), dtype=complex)
    L[0, 0, 0] = c
    L[0, 1, 1] = -1j * s
    L[1, 0, 1] = c
    L[1, 1, 0] = 1j * s
    L[2, 1, 0] = c
    L[2, 0, 1] = 1j * s
    L[3, 1, 1] = c
    L[3, 0, 0] = -1j * s
    return L


def _initial_block(gamma: float) -> np.ndarray:
    """J(gamma)|00> reshaped to 2x2, row-major."""
    c, s = math.cos(gamma / 2.0), math.sin(gamma / 2.0)
    return np.array([[c, 0.0], [0.0, 1j * s]], dtype=complex)


def scan_payoffs(
    config: EwlConfig,
    scan_slot: int,
    grid: np.ndarray,
    draws: np.ndarray,
    payoff_player: int,
) -> np.ndarray:
    """Monte-Carlo mean payoff of every grid unitary against fixed draws.

    ``grid`` (G, 2, 2) occupies player slot ``scan_slot``; ``draws`` (n, 2, 2)
    occupies the other slot and is shared across grid points (common random
    numbers).  Returns ``payoff_player``'s mean payoff per grid point.

    The sample average of the payoff is a Hermitian quadratic form in the
    grid unitary's entries, so the draws are folded into one 4x4 moment
    matrix first and each grid point costs O(1).
    """
    if scan_slot not in (0, 1):
        raise InvalidProfileError("scan_slot must be 0 or 1")
    L = _amp_coefficients(config.gamma)
    p0 = _initial_block(config.gamma)
    column = config.payoff_table()[:, payoff_player]
    n = draws.shape[0]
    if scan_slot == 0:
        # amp_c = sum_ae U_ae M[c,j,a,e],  M = sum_b L[c,a,b] (P V_j^T)_{e,b}
        k = np.einsum("bc,jdc->jbd", p0, draws)
        m = np.einsum("cab,jeb->cjae", L, k)
    else:
        # amp_c = sum_be G_be M[c,j,b,e],  M = sum_a L[c,a,b] (A_j P)_{a,e}
        ap = np.einsum("jab,bc->jac", draws, p0)
        m = np.einsum("cab,jae->cjbe", L, ap)
    flat = m.reshape(4, n, 4)
    moment = np.einsum("c,cjx,cjy->xy", column, flat, flat.conj()) / n
    u = grid.reshape(-1, 4)
    return np.real(np.einsum("gx,xy,gy->g", u, moment, u.conj()))


def sample_payoffs_at(
    config: EwlConfig,
    scan_slot: int,
    unitary: np.ndarray,
    draws: np.ndarray,
    payoff_player: int,
) -> np.ndarray:
    """Per-sample payoffs of one fixed unitary against the draws, shape (n,)."""
    n = draws.shape[0]
    rep = np.broadcast_to(np.asarray(unitary, dtype=complex), (n, 2, 2))
    pair = (rep, draws) if scan_slot == 0 else (draws, rep)
    return g_q_batch(config, *pair)[:, payoff_player]


def check_proper(config: EwlConfig, tol: float = 1e-9) -> bool:
    """Do the embedded pure strategies (identity, flip) reproduce the game?"""
    embed = (IDENTITY2, FLIP2)
    for x, y in PROFILE_BASIS:
        quantized = g_q(config, embed[x], embed[y])
        classical = [float(u) for u in config.game.payoff((x, y))]
        if max(abs(a - b) for a, b in zip(quantized, classical)) > tol:
            return False
    return True


def check_complete(
    config: EwlConfig, grid_steps: int = 20, tol: float = 1e-9
) -> tuple[bool, float]:
    """Do embedded mixed strategies reproduce the mixed extension on a grid?

    Compares g_q of the classical-unitary embeddings against the mixed payoff
    over a (grid_steps+1)^2 grid of (p, q); returns (within tol?, max gap).
    """
    if grid_steps < 2:
        raise InvalidProfileError("grid_steps must be at least 2")
    from .distributions import MixedProfile, g_mix

    worst = 0.0
    for i in range(grid_steps + 1):
        p = i / grid_steps
        for j in range(grid_steps + 1):
            q = j / grid_steps
            quantized = g_q(config, classical_unitary(p), classical_unitary(q))
            mixed = g_mix(config.game, MixedProfile.from_weights((p, 1 - p), (q, 1 - q)))
            gap = max(abs(a - float(b)) for a, b in zip(quantized, mixed))
            worst = max(worst, gap)
    return worst <= tol, worst


def coverage_scan(config: EwlConfig, samples: int, seed: int, bins: int = 10) -> dict:
    """Rough empirical scan of which cell distributions pure profiles reach.

    Samples Haar pairs, bins the first three cell probabilities, and reports
    the fraction of occupied bins among those meeting the simplex, plus the
    per-cell probability ranges seen.  Descriptive only; no claim is made
    about the exact image of the pure-profile map.
    """
    ua = haar_su2_batch(seed, np.arange(samples, dtype=np.uint64) * np.uint64(2))
    ub = haar_su2_batch(
        seed, np.arange(samples, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    )
    probs = _probs_batch(config.gamma, ua, ub)
    boxes = np.minimum((probs[:, :3] * bins).astype(int), bins - 1)
    occupied = {tuple(row) for row in boxes}
    valid = sum(
        1
        for i in range(bins)
        for j in range(bins)
        for k in range(bins)
        if (i + j + k) / bins <= 1.0
    )
    return {
        "samples": int(samples),
        "bins_per_axis": int(bins),
        "occupied_bins": len(occupied),
        "valid_bins": int(valid),
        "coverage": len(occupied) / valid,
        "cell_min": [float(x) for x in probs.min(axis=0)],
        "cell_max": [float(x) for x in probs.max(axis=0)],
    }
