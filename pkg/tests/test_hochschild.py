import pytest

from hhlab.exact import Field
from hhlab.families import make_params
from hhlab.hochschild import Cocycle, Hochschild, LiftingError, closed_form_dimension, hh_ring_low_degree


@pytest.fixture(scope="module")
def hh3():
    return Hochschild(make_params("Lambda_mn", 3, 3, "t", "Q(t)"))


def test_cochain_examples(hh3):
    assert hh3.cochain_space(0).dimension == 9
    assert hh3.cochain_space(4).dimension == 36
    assert closed_form_dimension(3, 4) == 0
    assert closed_form_dimension(2, 2) == 12


def test_cochain_order(hh3):
    ps = [lab[1] for lab, _ in hh3.cochain_space(4).basis]
    assert ps == sorted(ps)


def test_complex(hh3):
    for l in range(1, 8):
        assert (hh3.delta_induced(l + 1) @ hh3.delta_induced(l)).is_zero()


def test_unit_and_center(hh3):
    u = hh3.f_a()
    assert hh3.same_class(hh3.cup_product(hh3.unit(), u), u)
    assert hh3.center_dimension() == hh3.hh_dimension(0)


def test_non_cocycle_is_rejected(hh3):
    sp = hh3.cochain_space(1)
    vec = [hh3.field.zero] * sp.dimension
    vec[0] = hh3.field.one
    f = Cocycle(1, vec)
    assert not hh3.is_closed(f)
    with pytest.raises(LiftingError):
        hh3.cup_product(hh3.f_a(), f)


def test_antisymmetry(hh3):
    u, v = hh3.f_a(), hh3.f_b()
    uv, vu = hh3.cup_product(u, v), hh3.cup_product(v, u)
    assert hh3.is_coboundary(Cocycle(2, [a + b for a, b in zip(uv.vector, vu.vector)]))


def test_rectangular_torus_runs():
    hh = Hochschild(make_params("Lambda_mn", 3, 2, "t", "Q(t)"))
    assert hh.hh_dimension(0) == 1
    with pytest.raises(ValueError):
        hh.delta_closed_form(1)


def test_char_two_is_skipped():
    v = hh_ring_low_degree(make_params("Lambda_mn", 3, 3, 1, Field.prime_field(2)))
    assert v.skipped and "root of unity" in v.notice
