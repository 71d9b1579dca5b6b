from math import comb

import pytest

from hhlab.families import make_params
from hhlab.reports import perturbed_differential
from hhlab.resolution import Resolution, SizeCapExceeded


@pytest.fixture(scope="module")
def res33():
    return Resolution(make_params("Lambda_mn", 3, 3, [[2, 3, 5], [7, -1, 3], [1, 2, -5]]))


def test_low_generators(res33):
    g = res33.generator(2, 1, 0, 0)
    assert g.expansion == {("a0_0", "b0_1"): res33.field.one, ("b0_0", "a1_0"): res33.q(0, 0)}
    assert list(res33.generator(3, 0, 1, 2).expansion) == [("a1_2", "a1_0", "a1_1")]
    assert res33.generator(3, -1, 0, 0) is None and res33.generator(3, 4, 0, 0) is None


def test_monomial_counts_and_b_counts(res33):
    for l in range(7):
        for lab in res33.labels(l):
            g = res33.generator(*lab)
            assert g.monomial_count() == comb(l, lab[1])
            assert all(sum(a.startswith("b") for a in w) == lab[1] for w in g.expansion if w)


def test_uniform_endpoints(res33):
    Q = res33.Q
    for lab in res33.labels(4):
        g = res33.generator(*lab)
        for w in g.expansion:
            assert (Q.source(w[0]), Q.target(w[-1])) == (g.source, g.target)


def test_d1_formula(res33):
    F = res33.field
    d = res33.differential_of((1, 0, 0, 0))
    assert d == {(("a0_0",), (0, 0, 0, 1), ()): F.one, ((), (0, 0, 0, 0), ("a0_0",)): -F.one}


def test_d2_coefficients(res33):
    d = res33.differential_of((2, 1, 0, 0))
    q = res33.q(0, 0)
    assert sorted(d.values(), key=str) == sorted([res33.field.one, q, res33.field.one, q], key=str)


def test_oracle_dimensions(res33):
    K2 = res33.K_space_oracle(2)
    assert sum(len(v[1]) for v in K2.values()) == 3 * 9
    K3 = res33.K_space_oracle(3)
    assert sum(len(v[1]) for v in K3.values()) == 36


def test_oracle_cap(res33):
    with pytest.raises(SizeCapExceeded):
        res33.K_space_oracle(4, cap=10)


def test_perturbed_differential_is_not_minimal(res33):
    d = perturbed_differential(res33, 2)
    assert not res33.minimality_check(2, d)
    assert res33.minimality_check(2)


def test_dump_format():
    res = Resolution(make_params("Lambda_mn", 2, 2, 1))
    text = res.dump(2)
    assert "g[2,1,0,0] = 1*a0_0.b0_1 + 1*b0_0.a1_0" in text
    assert "d[1](g[1,0,0,0]) = " in text


def test_wrong_family():
    with pytest.raises(ValueError):
        Resolution(make_params("Gamma_mn", 2, 2, 1))
