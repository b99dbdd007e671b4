import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mediabargain.errors import Degenerate
from mediabargain.games import (
    NormalFormGame,
    deviation_gaps,
    dominant_strategy,
    mixed_2x2_symmetric,
    pure_nash,
)

payoffs = arrays(float, (3, 3), elements=st.integers(-5, 5).map(float))


def prisoners_dilemma():
    return NormalFormGame.from_cells(
        ("C", "D"), ("C", "D"),
        {("C", "C"): (3, 3), ("C", "D"): (0, 5), ("D", "C"): (5, 0), ("D", "D"): (1, 1)},
    )


def test_prisoners_dilemma():
    rep = pure_nash(prisoners_dilemma())
    assert rep.pure_equilibria == [("D", "D")]
    assert rep.dominant_row == rep.dominant_col == "D"
    assert rep.mixed is None


def test_matching_pennies_mixes_evenly():
    g = NormalFormGame(("H", "T"), ("H", "T"), np.array([[1, -1], [-1, 1.0]]), np.array([[-1, 1], [1, -1.0]]))
    assert pure_nash(g).pure_equilibria == []
    (p, _), (q, _) = mixed_2x2_symmetric(g)
    assert p == pytest.approx(0.5) and q == pytest.approx(0.5)
    assert max(deviation_gaps(g, (p, 1 - p), (q, 1 - q))) <= 1e-12


def test_coordination_game_has_interior_mix():
    g = NormalFormGame(("A", "B"), ("A", "B"), np.array([[2, 0], [0, 1.0]]), np.array([[2, 0], [0, 1.0]]))
    rep = pure_nash(g)
    assert set(rep.pure_equilibria) == {("A", "A"), ("B", "B")}
    assert rep.mixed[0][0] == pytest.approx(1 / 3)


def test_all_zero_game_is_degenerate():
    z = np.zeros((2, 2))
    with pytest.raises(Degenerate):
        mixed_2x2_symmetric(NormalFormGame(("a", "b"), ("a", "b"), z, z))


def test_ties_are_recorded():
    g = NormalFormGame(("a", "b"), ("x",), np.array([[1.0], [1.0]]), np.array([[0.0], [0.0]]))
    rep = pure_nash(g)
    assert set(rep.ties) == {("a", "x"), ("b", "x")}
    assert dominant_strategy(g, "row") is None
    assert dominant_strategy(g, "row", weak=True, prefer=("b",)) == "b"


def test_shape_and_label_checks():
    with pytest.raises(ValueError):
        NormalFormGame(("a", "a"), ("x",), np.zeros((2, 1)), np.zeros((2, 1)))
    with pytest.raises(ValueError):
        NormalFormGame(("a",), ("x",), np.array([[np.inf]]), np.zeros((1, 1)))


@given(payoffs, payoffs)
def test_transpose_swaps_equilibria(a, b):
    g = NormalFormGame(("r0", "r1", "r2"), ("c0", "c1", "c2"), a, b)
    eq = {(c, r) for r, c in pure_nash(g).pure_equilibria}
    assert eq == set(pure_nash(g.transposed()).pure_equilibria)


@given(payoffs, payoffs, st.integers(-3, 3), st.floats(0.5, 4))
def test_affine_invariance(a, b, shift, scale):
    g = NormalFormGame(("r0", "r1", "r2"), ("c0", "c1", "c2"), a, b)
    h = NormalFormGame(g.row_strategies, g.col_strategies, scale * a + shift, b - shift)
    assert set(pure_nash(g).pure_equilibria) == set(pure_nash(h).pure_equilibria)


@given(payoffs, payoffs)
def test_relabelling_invariance(a, b):
    g = NormalFormGame(("r0", "r1", "r2"), ("c0", "c1", "c2"), a, b)
    perm = [2, 0, 1]
    h = NormalFormGame(tuple(g.row_strategies[i] for i in perm), g.col_strategies, a[perm], b[perm])
    assert set(pure_nash(g).pure_equilibria) == set(pure_nash(h).pure_equilibria)


@given(arrays(float, (2, 2), elements=st.floats(-5, 5)), arrays(float, (2, 2), elements=st.floats(-5, 5)))
def test_mixed_solution_leaves_no_gain(a, b):
    g = NormalFormGame(("a", "b"), ("x", "y"), a, b)
    try:
        mixed = mixed_2x2_symmetric(g)
    except Degenerate:
        return
    if mixed is not None:
        assert max(deviation_gaps(g, *mixed)) <= 1e-8
