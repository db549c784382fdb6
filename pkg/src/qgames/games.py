"""Finite 2-player games: payoff tables, dominance, best replies, pure Nash.

A game is a dense table mapping a (row, column) pure-strategy profile to a
pair of utilities.  Utilities are exact rationals whenever the inputs are,
so equilibrium arithmetic stays exact.  All values are immutable and every
operation here is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .numeric import BadRationalError, Scalar, parse_scalar

PureProfile = tuple[int, int]


class GameError(Exception):
    pass


class InvalidProfileError(GameError):
    """A strategy index out of range for its player."""


class GameFormatError(GameError):
    """A game description that does not meet the file contract.

    ``code`` is machine-readable: one of ``malformed-json``, ``bad-structure``,
    ``player-count``, ``ragged-payoffs``, ``bad-rational``, ``not-found``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Game:
    """A finite 2-player game in normal form.

    payoffs[row][col] is the pair (row player's utility, column player's
    utility).  Construction normalizes nested lists to tuples and int/str
    payoff entries to Fraction.
    """

    strategy_names: tuple[tuple[str, ...], tuple[str, ...]]
    payoffs: tuple[tuple[tuple[Scalar, Scalar], ...], ...]
    player_names: tuple[str, str] = ("Player 1", "Player 2")
    name: str = ""

    player_count: int = field(default=2, init=False, repr=False)

    def __post_init__(self):
        names = tuple(tuple(str(s) for s in per_player) for per_player in self.strategy_names)
        if len(names) != 2:
            raise GameFormatError("player-count", f"expected 2 players, got {len(names)}")
        if any(len(per_player) == 0 for per_player in names):
            raise GameFormatError("bad-structure", "each player needs at least one strategy")
        rows, cols = len(names[0]), len(names[1])

        table = []
        if len(self.payoffs) != rows:
            raise GameFormatError(
                "ragged-payoffs", f"expected {rows} payoff rows, got {len(self.payoffs)}"
            )
        for row in self.payoffs:
            if len(row) != cols:
                raise GameFormatError(
                    "ragged-payoffs", f"expected {cols} entries per row, got {len(row)}"
                )
            fixed_row = []
            for entry in row:
                entry = tuple(entry) if not isinstance(entry, tuple) else entry
                if len(entry) != 2:
                    raise GameFormatError(
                        "ragged-payoffs", f"payoff entry {entry!r} must have 2 components"
                    )
                fixed_row.append(tuple(parse_scalar(u) for u in entry))
            table.append(tuple(fixed_row))

        object.__setattr__(self, "strategy_names", names)
        object.__setattr__(self, "payoffs", tuple(table))
        object.__setattr__(self, "player_names", tuple(str(p) for p in self.player_names))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.strategy_names[0]), len(self.strategy_names[1])

    def check_profile(self, profile: PureProfile) -> None:
        if len(profile) != 2:
            raise InvalidProfileError(f"profile {profile!r} must have one choice per player")
        for player, choice in enumerate(profile):
            if not isinstance(choice, int) or not 0 <= choice < self.shape[player]:
                raise InvalidProfileError(
                    f"strategy {choice!r} out of range for player {player + 1}"
                )

    def payoff(self, profile: PureProfile) -> tuple[Scalar, Scalar]:
        """The outcome pair at a pure-strategy profile."""
        self.check_profile(profile)
        return self.payoffs[profile[0]][profile[1]]

    def profiles(self) -> list[PureProfile]:
        """All pure profiles in lexicographic (row-major) order."""
        rows, cols = self.shape
        return [(i, j) for i in range(rows) for j in range(cols)]

    def is_2x2(self) -> bool:
        return self.shape == (2, 2)

    def label(self, profile: PureProfile) -> str:
        return f"({self.strategy_names[0][profile[0]]},{self.strategy_names[1][profile[1]]})"


def payoff(game: Game, profile: PureProfile) -> tuple[Scalar, Scalar]:
    return game.payoff(profile)


def best_replies(game: Game, player: int, opponent_strategy: int) -> tuple[int, ...]:
    """All payoff-maximizing strategies for ``player`` against a fixed opponent choice.

    Ties are never broken: every maximizer is returned, in index order.
    """
    if player not in (0, 1):
        raise InvalidProfileError(f"player index {player!r} must be 0 or 1")
    opponent = 1 - player
    if not 0 <= opponent_strategy < game.shape[opponent]:
        raise InvalidProfileError(
            f"strategy {opponent_strategy!r} out of range for player {opponent + 1}"
        )

    def utility(own: int) -> Scalar:
        profile = (own, opponent_strategy) if player == 0 else (opponent_strategy, own)
        return game.payoff(profile)[player]

    values = [utility(own) for own in range(game.shape[player])]
    best = max(values)
    return tuple(i for i, v in enumerate(values) if v == best)


def is_nash(game: Game, profile: PureProfile) -> tuple[bool, tuple[Scalar, Scalar]]:
    """Whether every player's choice is a best reply, plus each player's
    maximum unilateral improvement (0 when there is none)."""
    game.check_profile(profile)
    gains = []
    for player in (0, 1):
        current = game.payoff(profile)[player]
        best_gain = Fraction(0)
        for own in range(game.shape[player]):
            alt = list(profile)
            alt[player] = own
            gain = game.payoff(tuple(alt))[player] - current
            if gain > best_gain:
                best_gain = gain
        gains.append(best_gain)
    return gains[0] == 0 and gains[1] == 0, (gains[0], gains[1])


def pure_nash_all(game: Game) -> list[PureProfile]:
    """All pure Nash profiles, in lexicographic order."""
    return [p for p in game.profiles() if is_nash(game, p)[0]]


class Dominance(NamedTuple):
    dominating: int
    dominated: int
    strict: bool


def dominance(game: Game, player: int) -> list[Dominance]:
    """Ordered pairs (a, b) where strategy a dominates b for ``player``.

    strict=True when a beats b against every opponent strategy; strict=False
    for weak dominance (never worse, better at least once).
    """
    if player not in (0, 1):
        raise InvalidProfileError(f"player index {player!r} must be 0 or 1")
    opponent = 1 - player

    def utility(own: int, opp: int) -> Scalar:
        profile = (own, opp) if player == 0 else (opp, own)
        return game.payoff(profile)[player]

    results = []
    n_own, n_opp = game.shape[player], game.shape[opponent]
    for a in range(n_own):
        for b in range(n_own):
            if a == b:
                continue
            diffs = [utility(a, opp) - utility(b, opp) for opp in range(n_opp)]
            if all(d > 0 for d in diffs):
                results.append(Dominance(a, b, True))
            elif all(d >= 0 for d in diffs) and any(d > 0 for d in diffs):
                results.append(Dominance(a, b, False))
    return results


# Built-in catalog: the three 2x2 games every analysis command accepts by name.

def prisoners_dilemma() -> Game:
    return Game(
        strategy_names=(("s1", "s2"), ("t1", "t2")),
        payoffs=((("3", "3"), ("0", "5")), (("5", "0"), ("1", "1"))),
        name="pd",
    )


def simplified_poker() -> Game:
    return Game(
        strategy_names=(("s1", "s2"), ("t1", "t2")),
        payoffs=((("5/4", "-5/4"), ("0", "0")), (("0", "0"), ("5/2", "-5/2"))),
        name="poker",
    )


def chicken() -> Game:
    return Game(
        strategy_names=(("s1", "s2"), ("t1", "t2")),
        payoffs=((("2", "2"), ("0", "3")), (("3", "0"), ("-1", "-1"))),
        name="chicken",
    )


BUILTIN_GAMES = {
    "pd": prisoners_dilemma,
    "poker": simplified_poker,
    "chicken": chicken,
}


def game_from_dict(data, name: str = "") -> Game:
    """Build a Game from the JSON file structure; see load_game for the schema."""
    if not isinstance(data, dict):
        raise GameFormatError("bad-structure", "top level must be a JSON object")
    players = data.get("players")
    if not isinstance(players, list):
        raise GameFormatError("bad-structure", "missing 'players' array")
    if len(players) != 2:
        raise GameFormatError("player-count", f"expected 2 players, got {len(players)}")
    names = []
    strategies = []
    for i, p in enumerate(players):
        if not isinstance(p, dict) or not isinstance(p.get("strategies"), list):
            raise GameFormatError("bad-structure", f"player {i + 1} needs a 'strategies' array")
        names.append(str(p.get("name", f"Player {i + 1}")))
        strategies.append(tuple(str(s) for s in p["strategies"]))
    payoffs = data.get("payoffs")
    if not isinstance(payoffs, list) or not all(isinstance(r, list) for r in payoffs):
        raise GameFormatError("bad-structure", "missing 'payoffs' 2-D array")
    try:
        return Game(
            strategy_names=tuple(strategies),
            payoffs=tuple(tuple(tuple(cell) for cell in row) for row in payoffs),
            player_names=(names[0], names[1]),
            name=name,
        )
    except BadRationalError as exc:
        raise GameFormatError("bad-rational", str(exc)) from exc
    except TypeError as exc:
        raise GameFormatError("bad-structure", f"malformed payoff table: {exc}") from exc


def load_game(source: str) -> Game:
    """Load a game by builtin name (pd | poker | chicken) or from a JSON file.

    File schema: {"players": [{"name", "strategies": [...]}, ...2 of them],
    "payoffs": [[[u1, u2], ...] per row]} with rationals accepted as "a/b"
    strings and parsed exactly.
    """
    if source in BUILTIN_GAMES:
        return BUILTIN_GAMES[source]()
    try:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GameFormatError(
            "not-found", f"{source!r} is neither a builtin game nor a readable file"
        ) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError("malformed-json", f"{source}: {exc}") from exc
    return game_from_dict(data, name=source)
