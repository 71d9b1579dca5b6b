from fractions import Fraction

import pytest

from hhlab.exact import Field, order_of
from hhlab.families import (
    build_presentation,
    dump_config,
    epsilon_d,
    gamma_case,
    load_config,
    make_params,
    parameter_product,
    predicted_model,
    explicit_dual,
    torus_exponents,
)
from hhlab.quadratic import quadratic_dual, same_relation_span


@pytest.mark.parametrize("m,char,d,e,p", [
    (2, 0, 1, 1, 2), (4, 0, 3, 3, 4), (3, 2, 1, 1, 3),
    (3, 0, 1, 2, 3), (3, 0, 3, 6, 3),
    (3, 0, 4, 4, 3), (3, 0, 2, 1, 6), (5, 0, 6, 3, 10),
])
def test_gamma_cases(m, char, d, e, p):
    c = gamma_case(m, char, d)
    assert (c.e, c.p) == (e, p)


def test_epsilon_values():
    assert epsilon_d(make_params("Gamma_q", 2, None, [1, 1]))[0] == -1
    assert epsilon_d(make_params("Gamma_q", 3, None, [1, 1, 1]))[0] == 1
    fp = make_params("Gamma_q", 3, None, [-1, 1, 1])
    assert epsilon_d(fp) == (1, 6)
    assert epsilon_d(fp, sign_fix=False)[0] == -1


def test_torus_exponents():
    assert torus_exponents(3, 2, 0, 1) == (2, 1)
    assert torus_exponents(2, 3, 0, 1) == (1, 2)
    assert torus_exponents(3, 3, 0, 1) == (1, 1)
    assert torus_exponents(3, 2, 2, 1) == (1, 1)


def test_models():
    assert predicted_model(make_params("Gamma_q", 2, None, ["t", 1], Field.rational_functions())).shape == "ScalarsOnly"
    assert predicted_model(make_params("Gamma_mn", 3, 3, 1)).shape == "KPlusXYIdealEven"
    assert predicted_model(make_params("Gamma_mn", 2, 2, 1)).shape == "KPlusXYIdeal"


def test_config_round_trip():
    fp = make_params("Gamma_mn", 2, 3, [["t", 1], [1, "1/t"], [2, 3]], Field.rational_functions())
    assert load_config(dump_config(fp)) == fp


def test_parameter_product():
    fp = make_params("Lambda_mn", 2, 2, [[2, Fraction(1, 2)], [3, Fraction(1, 3)]])
    assert parameter_product(fp) == 1
    assert order_of(parameter_product(make_params("Lambda_mn", 2, 2, "t", "Q(t)"))) == float("inf")


def test_bad_params():
    with pytest.raises(Exception):
        make_params("Gamma_q", 3, None, [1, 0, 1])
    with pytest.raises(Exception):
        make_params("nope", 3)


@pytest.mark.parametrize("family,m,n", [("Lambda_q", 3, None), ("Gamma_q", 4, None), ("Lambda_mn", 3, 2), ("Gamma_mn", 2, 3)])
def test_explicit_dual_matches_computed(family, m, n):
    fp = make_params(family, m, n, 5)
    assert same_relation_span(quadratic_dual(build_presentation(fp), "op"), explicit_dual(fp))
