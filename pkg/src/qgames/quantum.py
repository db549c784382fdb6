"""Finite-dimensional quantum state machinery.

Superpositions are projective: amplitudes are stored exactly as given and
never re-phased, while comparison and measurement are phase-invariant.
Haar sampling of SU(2) is counter-based, so sample ``index`` under ``seed``
is a pure function of the pair and Monte-Carlo runs are reproducible
regardless of evaluation order or parallelism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Dist

_ATOL = 1e-12


class QuantumError(ValueError):
    pass


class DegenerateStateError(QuantumError):
    """A zero amplitude vector, which names no quantum state."""


@dataclass(frozen=True)
class Superposition:
    """A complex amplitude vector over an ordered finite basis.

    Two superpositions describe the same state when their amplitudes differ
    by one nonzero complex scalar; use ``projectively_equal`` for that test.
    """

    basis: tuple
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        amps = tuple(complex(a) for a in self.amplitudes)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "amplitudes", amps)
        if len(basis) != len(amps):
            raise QuantumError("basis and amplitudes must have the same length")
        if len(basis) == 0 or all(a == 0 for a in amps):
            raise DegenerateStateError("zero amplitude vector")
        if len(set(basis)) != len(basis):
            raise QuantumError("basis elements must be distinct")

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def projectively_equal(self, other: "Superposition", tol: float = 1e-9) -> bool:
        if self.basis != other.basis:
            return False
        a, b = self.vector, other.vector
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        return abs(abs(np.vdot(a, b)) - na * nb) <= tol * max(1.0, float(na * nb))


def normalize(s: Superposition) -> Superposition:
    """Scale to unit Euclidean norm (projectively the same state)."""
    return Superposition(s.basis, tuple(a / s.norm for a in s.amplitudes))


def measure(s: Superposition) -> Dist:
    """Born rule: probability of basis element k is |amp_k|^2 / sum |amp_j|^2."""
    probs = np.abs(s.vector) ** 2
    probs /= probs.sum()
    return Dist(s.basis, tuple(float(p) for p in probs))


def tensor(a: Superposition, b: Superposition) -> Superposition:
    """Joint state over basis pairs, ordered row-major."""
    basis = tuple((x, y) for x in a.basis for y in b.basis)
    amps = tuple(ax * by for ax in a.amplitudes for by in b.amplitudes)
    return Superposition(basis, amps)


@dataclass(frozen=True)
class Unitary2:
    """A 2x2 unitary matrix (any phase; SU(2) members have determinant 1)."""

    entries: tuple[tuple[complex, complex], tuple[complex, complex]]

    def __post_init__(self):
        entries = tuple(tuple(complex(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        m = self.matrix
        if m.shape != (2, 2):
            raise QuantumError("expected a 2x2 matrix")
        residual = np.linalg.norm(m.conj().T @ m - np.eye(2))
        if residual > _ATOL:
            raise QuantumError(f"not unitary: residual {residual:.2e}")
        if abs(abs(np.linalg.det(m)) - 1.0) > _ATOL:
            raise QuantumError("determinant modulus differs from 1")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)

    @classmethod
    def from_matrix(cls, m) -> "Unitary2":
        m = np.asarray(m, dtype=complex)
        return cls(((m[0, 0], m[0, 1]), (m[1, 0], m[1, 1])))


IDENTITY2 = Unitary2(((1, 0), (0, 1)))

# The SU(2) bit-flip su2_from_angles(pi, 0, 0), exact.
FLIP2 = Unitary2(((0, 1), (-1, 0)))


def su2_from_angles(theta: float, alpha: float, beta: float) -> Unitary2:
    """The standard 3-angle SU(2) parametrization.

    Rows are [e^{ia}cos(t/2), e^{ib}sin(t/2)] and
    [-e^{-ib}sin(t/2), e^{-ia}cos(t/2)]; every SU(2) element is reached.
    """
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    ea, eb = complex(math.cos(alpha), math.sin(alpha)), complex(math.cos(beta), math.sin(beta))
    return Unitary2(((ea * c, eb * s), (-s / eb, c / ea)))


def apply2(u: Unitary2, v: Unitary2, s: Superposition) -> Superposition:
    """Act with u (tensor) v on a 4-dimensional joint state."""
    if len(s.basis) != 4:
        raise QuantumError(f"expected a 4-dimensional state, got {len(s.basis)}")
    amps = np.kron(u.matrix, v.matrix) @ s.vector
    return Superposition(s.basis, tuple(amps))


# Counter-based randomness: a SplitMix64 stream addressed by (seed, position).

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _mix64(z: np.ndarray) -> np.ndarray:
    # uint64 wrap-around is the point; silence numpy's scalar overflow warning.
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _words(seed: int, positions: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        key = _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + _GOLDEN)
        return _mix64(key + (positions.astype(np.uint64) + np.uint64(1)) * _GOLDEN)


def _uniforms(seed: int, positions: np.ndarray) -> np.ndarray:
    # 53-bit mantissa; +1 keeps the value in (0, 1] so log() below is safe.
    return ((_words(seed, positions) >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def standard_normals(seed: int, indices: np.ndarray, lanes: int) -> np.ndarray:
    """Box-Muller normals, shape (len(indices), lanes); lanes must be even.

    Entry [i, l] depends only on (seed, indices[i], l).
    """
    indices = np.asarray(indices, dtype=np.uint64)
    pos = indices[:, None] * np.uint64(lanes) + np.arange(lanes, dtype=np.uint64)[None, :]
    u = _uniforms(seed, pos)
    r = np.sqrt(-2.0 * np.log(u[:, 0::2]))
    phi = (2.0 * math.pi) * u[:, 1::2]
    out = np.empty_like(u)
    out[:, 0::2] = r * np.cos(phi)
    out[:, 1::2] = r * np.sin(phi)
    return out


def haar_su2_batch(seed: int, indices) -> np.ndarray:
    """Haar-distributed SU(2) samples, shape (n, 2, 2).

    Four standard normals per index are normalized to a unit quaternion
    (a, b, c, d), mapped to [[a+bi, c+di], [-c+di, a-bi]].  Uniformity on the
    3-sphere is exactly Haar measure on SU(2).
    """
    indices = np.asarray(indices, dtype=np.uint64)
    z = standard_normals(seed, indices, 4)
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    # A zero quaternion has probability 0; guard anyway.
    z = np.where(norms > 0, z / np.where(norms == 0, 1.0, norms), [1.0, 0.0, 0.0, 0.0])
    a, b, c, d = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    out = np.empty((len(indices), 2, 2), dtype=complex)
    out[:, 0, 0] = a + 1j * b
    out[:, 0, 1] = c + 1j * d
    out[:, 1, 0] = -c + 1j * d
    out[:, 1, 1] = a - 1j * b
    return out


def haar_su2(seed: int, index: int) -> Unitary2:
    """The Haar sample addressed by (seed, index); deterministic."""
    return Unitary2.from_matrix(haar_su2_batch(seed, np.array([index]))[0])


def su2_grid(n: int) -> np.ndarray:
    """A deterministic (n^3, 2, 2) coverage grid over SU(2).

    theta takes n points on [0, pi] inclusive; alpha and beta take n points
    on [0, 2pi), so the identity and the flip are always grid members.
    """
    if n < 2:
        raise QuantumError("grid needs at least 2 points per angle")
    theta = np.linspace(0.0, math.pi, n)
    alpha = np.arange(n) * (2.0 * math.pi / n)
    beta = np.arange(n) * (2.0 * math.pi / n)
    t, a, b = np.meshgrid(theta, alpha, beta, indexing="ij")
    t, a, b = t.ravel(), a.ravel(), b.ravel()
    c, s = np.cos(t / 2.0), np.sin(t / 2.0)
    out = np.empty((n**3, 2, 2), dtype=complex)
    out[:, 0, 0] = np.exp(1j * a) * c
    out[:, 0, 1] = np.exp(1j * b) * s
    out[:, 1, 0] = -np.exp(-1j * b) * s
    out[:, 1, 1] = np.exp(-1j * a) * c
    return out
