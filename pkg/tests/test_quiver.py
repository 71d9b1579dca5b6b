import pytest

from hhlab.exact import Field
from hhlab.quiver import LinCombo, Path, Quiver, enumerate_paths, parallel_pairs

Q = Field.rationals()


def triangle():
    return Quiver([0, 1, 2], [("x", 0, 1), ("y", 1, 2), ("z", 2, 0)])


def test_composition_is_left_to_right():
    q = triangle()
    p = q.path("x", "y")
    assert (p.source, p.target) == (0, 2)
    assert str(p) == "x.y"
    with pytest.raises(ValueError):
        q.path("y", "x")


def test_enumerate_paths_counts():
    q = triangle()
    assert len(enumerate_paths(q, 0)) == 3
    assert len(enumerate_paths(q, 4)) == 3
    assert [p.arrows for p in enumerate_paths(q, 2, source=0)] == [("x", "y")]


def test_text_round_trip():
    q = Quiver([(0, 0), (0, 1)], [("a", (0, 0), (0, 1)), ("b", (0, 1), (0, 0))])
    assert Quiver.from_text(q.to_text()) == q


def test_bad_quivers():
    with pytest.raises(ValueError):
        Quiver([0], [("a", 0, 1)])
    with pytest.raises(ValueError):
        Quiver([0, 0], [])


def test_lincombo_arithmetic():
    q = triangle()
    x = LinCombo.of(q.path("x"), Q)
    y = LinCombo.of(q.path("y"), Q, 3)
    assert (x * y).coeff(q.path("x", "y")) == 3
    assert not (y * x)
    assert x - x == 0
    assert (x + x).coeff(q.path("x")) == 2
    e0 = LinCombo.of(q.trivial(0), Q)
    assert e0 * x == x


def test_parallel_pairs():
    q = triangle()
    X = [LinCombo.of(q.path("x", "y"), Q), LinCombo.of(q.trivial(0), Q)]
    Y = [LinCombo.of(q.path("x", "y"), Q), LinCombo.of(q.path("x", "y", "z"), Q)]
    assert parallel_pairs(X, Y) == [(0, 0), (1, 1)]


def test_path_is_hashable_value():
    assert Path(0, 1, ("x",)) == Path(0, 1, ("x",))
