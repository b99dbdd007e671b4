"""Finite two-player games: pure equilibria, dominance and 2x2 mixing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import Degenerate

Cell = tuple[str, str]


@dataclass(frozen=True)
class NormalFormGame:
    """Bimatrix game with labelled strategies; row player first."""

    row_strategies: tuple[str, ...]
    col_strategies: tuple[str, ...]
    row_payoffs: np.ndarray
    col_payoffs: np.ndarray

    def __post_init__(self):
        rows, cols = tuple(self.row_strategies), tuple(self.col_strategies)
        a = np.asarray(self.row_payoffs, dtype=float)
        b = np.asarray(self.col_payoffs, dtype=float)
        shape = (len(rows), len(cols))
        if a.shape != shape or b.shape != shape:
            raise ValueError(f"payoff matrices must be {shape}, got {a.shape} and {b.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("payoffs must be finite")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("strategy labels must be unique per player")
        object.__setattr__(self, "row_strategies", rows)
        object.__setattr__(self, "col_strategies", cols)
        object.__setattr__(self, "row_payoffs", a)
        object.__setattr__(self, "col_payoffs", b)

    @classmethod
    def from_cells(cls, rows: Sequence[str], cols: Sequence[str], cells: dict) -> "NormalFormGame":
        """Build from ``{(row, col): (row_payoff, col_payoff)}``."""
        a = [[cells[(r, c)][0] for c in cols] for r in rows]
        b = [[cells[(r, c)][1] for c in cols] for r in rows]
        return cls(tuple(rows), tuple(cols), np.array(a), np.array(b))

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_payoffs.shape

    def payoff(self, row: str, col: str) -> tuple[float, float]:
        i, j = self.row_strategies.index(row), self.col_strategies.index(col)
        return float(self.row_payoffs[i, j]), float(self.col_payoffs[i, j])

    def cells(self) -> dict:
        return {
            (r, c): self.payoff(r, c) for r in self.row_strategies for c in self.col_strategies
        }

    def transposed(self) -> "NormalFormGame":
        """Same game with the players' roles exchanged."""
        return NormalFormGame(
            self.col_strategies, self.row_strategies, self.col_payoffs.T, self.row_payoffs.T
        )

    def to_dict(self) -> dict:
        return {
            "row_strategies": list(self.row_strategies),
            "col_strategies": list(self.col_strategies),
            "row_payoffs": self.row_payoffs.tolist(),
            "col_payoffs": self.col_payoffs.tolist(),
        }


@dataclass
class EquilibriumReport:
    pure_equilibria: list[Cell] = field(default_factory=list)
    dominant_row: str | None = None
    dominant_col: str | None = None
    mixed: tuple[tuple[float, ...], tuple[float, ...]] | None = None
    ties: list[Cell] = field(default_factory=list)

    def equilibrium_set(self) -> frozenset:
        return frozenset(self.pure_equilibria)

    def to_dict(self) -> dict:
        return {
            "pure_equilibria": [list(c) for c in self.pure_equilibria],
            "dominant_row": self.dominant_row,
            "dominant_col": self.dominant_col,
            "mixed": None if self.mixed is None else [list(self.mixed[0]), list(self.mixed[1])],
            "ties": [list(c) for c in self.ties],
        }


def best_responses(game: NormalFormGame, player: str, opponent_index: int, tol: float = 0.0) -> list[int]:
    """Indices of ``player``'s strategies within ``tol`` of the best reply."""
    if player == "row":
        column = game.row_payoffs[:, opponent_index]
    else:
        column = game.col_payoffs[opponent_index, :]
    top = column.max()
    return [int(i) for i in np.flatnonzero(column >= top - tol)]


def pure_nash(game: NormalFormGame, tol: float = 1e-9) -> EquilibriumReport:
    """Every cell that is a mutual best response up to ``tol``.

    Cells where some deviation earns within ``tol`` of the equilibrium payoff
    are also listed in ``ties``.
    """
    a, b = game.row_payoffs, game.col_payoffs
    m, n = game.shape
    report = EquilibriumReport()
    for i in range(m):
        for j in range(n):
            row_best = a[:, j].max()
            col_best = b[i, :].max()
            if a[i, j] >= row_best - tol and b[i, j] >= col_best - tol:
                cell = (game.row_strategies[i], game.col_strategies[j])
                report.pure_equilibria.append(cell)
                row_tied = np.sum(np.abs(a[:, j] - a[i, j]) <= tol) > 1
                col_tied = np.sum(np.abs(b[i, :] - b[i, j]) <= tol) > 1
                if row_tied or col_tied:
                    report.ties.append(cell)
    report.dominant_row = dominant_strategy(game, "row", tol, weak=True)
    report.dominant_col = dominant_strategy(game, "col", tol, weak=True)
    if game.shape == (2, 2):
        try:
            report.mixed = mixed_2x2_symmetric(game, tol)
        except Degenerate:
            report.mixed = None
    return report


def dominant_strategy(
    game: NormalFormGame,
    player: str,
    tol: float = 1e-9,
    weak: bool = False,
    prefer: Sequence[str] = (),
) -> str | None:
    """Strategy of ``player`` that is best against every opponent strategy.

    With ``weak=False`` the strategy must beat every alternative by more than
    ``tol`` against each opponent strategy. With ``weak=True`` it only has to be
    a best response within ``tol``. When several strategies qualify the answer
    is ``None`` unless ``prefer`` names a tie-break order.
    """
    if player not in ("row", "col"):
        raise ValueError("player must be 'row' or 'col'")
    pay = game.row_payoffs if player == "row" else game.col_payoffs.T
    labels = game.row_strategies if player == "row" else game.col_strategies
    candidates = []
    for s in range(pay.shape[0]):
        others = np.delete(pay, s, axis=0)
        if others.size == 0:
            candidates.append(labels[s])
            continue
        if weak:
            ok = np.all(pay[s] >= others.max(axis=0) - tol)
        else:
            ok = np.all(pay[s] > others.max(axis=0) + tol)
        if ok:
            candidates.append(labels[s])
    if len(candidates) == 1:
        return candidates[0]
    for label in prefer:
        if label in candidates:
            return label
    return None


def mixed_2x2_symmetric(game: NormalFormGame, tol: float = 1e-9) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """Interior mixed equilibrium of a 2x2 game from the indifference conditions.

    Returns ``((p, 1 - p), (q, 1 - q))`` where ``p`` is the row player's weight on
    its first strategy, or ``None`` when no fully mixed equilibrium exists.

    Raises:
        Degenerate: a player is indifferent between both strategies against
            every opponent mix, so the indifference system has no unique solution.
    """
    if game.shape != (2, 2):
        raise ValueError("mixed_2x2_symmetric needs a 2x2 game")
    a, b = game.row_payoffs, game.col_payoffs
    scale = max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))

    def solve(num, den):
        if abs(den) <= tol * scale:
            if abs(num) <= tol * scale:
                raise Degenerate("indifference system is singular")
            return None
        return num / den

    # row weight p makes the column player indifferent
    p = solve(b[1, 1] - b[1, 0], b[0, 0] - b[1, 0] - b[0, 1] + b[1, 1])
    q = solve(a[1, 1] - a[0, 1], a[0, 0] - a[0, 1] - a[1, 0] + a[1, 1])
    if p is None or q is None:
        return None
    if not (0 < p < 1 and 0 < q < 1):
        return None
    col_gap = (p * b[0, 0] + (1 - p) * b[1, 0]) - (p * b[0, 1] + (1 - p) * b[1, 1])
    row_gap = (q * a[0, 0] + (1 - q) * a[0, 1]) - (q * a[1, 0] + (1 - q) * a[1, 1])
    if abs(col_gap) > tol * scale or abs(row_gap) > tol * scale:
        raise Degenerate(f"indifference residuals {row_gap:g}, {col_gap:g} exceed tolerance")
    return (float(p), float(1 - p)), (float(q), float(1 - q))


def deviation_gaps(game: NormalFormGame, row_mix: Sequence[float], col_mix: Sequence[float]) -> tuple[float, float]:
    """Largest gain either player gets by a pure deviation from a mixed profile."""
    x, y = np.asarray(row_mix, dtype=float), np.asarray(col_mix, dtype=float)
    row_vals = game.row_payoffs @ y
    col_vals = x @ game.col_payoffs
    return float(row_vals.max() - x @ row_vals), float(col_vals.max() - col_vals @ y)
