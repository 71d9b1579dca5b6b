import pytest

from hhlab.exact import Field
from hhlab.families import build_presentation, dual_presentation, make_params
from hhlab.quadratic import (
    NotConfluent,
    QuadraticPresentation,
    ReductionConflict,
    confluence_check,
    graded_dimensions,
    monomial_basis,
    opposite_name,
    quadratic_dual,
    same_relation_span,
)
from hhlab.quiver import LinCombo, Quiver

Q = Field.rationals()


def random_element(R, rng, length, terms=4):
    words = [w for w in _all_words(R.presentation, length)]
    out = {}
    for w in rng.sample(words, min(terms, len(words))):
        out[w] = Q(rng.randint(-5, 5) or 1)
    return out


def _all_words(P, length):
    from hhlab.quiver import enumerate_paths
    return [p.arrows for p in enumerate_paths(P.quiver, length)]


@pytest.fixture
def lam():
    return build_presentation(make_params("Lambda_mn", 3, 3, [[2, 3, 5], [7, 11, 13], [-1, 2, -3]]))


def test_normal_form_idempotent_and_linear(lam, rng):
    R = lam.reduction_system()
    for _ in range(30):
        x = random_element(R, rng, 3)
        y = random_element(R, rng, 3)
        nx = R.reduce(x)
        assert R.reduce(nx) == nx
        s = dict(x)
        for w, c in y.items():
            s[w] = s.get(w, Q.zero) + c
        s = {w: c for w, c in s.items() if c}
        lhs = R.reduce(s)
        rhs = dict(nx)
        for w, c in R.reduce(y).items():
            rhs[w] = rhs.get(w, Q.zero) + c
        assert lhs == {w: c for w, c in rhs.items() if c}


@pytest.mark.parametrize("family,m,n", [("Lambda_mn", 3, 3), ("Gamma_mn", 2, 3), ("Gamma_q", 3, None), ("Lambda_q", 4, None)])
def test_order_independence(family, m, n, rng):
    fp = make_params(family, m, n, 3)
    for P in (build_presentation(fp), dual_presentation(fp)):
        R = P.reduction_system()
        for _ in range(20):
            x = random_element(R, rng, 4)
            assert R.reduce_randomly(x, rng) == R.reduce(x)


def test_lambda_dimension_is_4mn():
    for m, n in [(2, 2), (3, 3), (2, 3), (4, 3)]:
        P = build_presentation(make_params("Lambda_mn", m, n, 2))
        assert sum(graded_dimensions(P, 4)) == 4 * m * n


def test_gamma_dimension_is_6mn_plus_1():
    for m, n in [(2, 2), (3, 3), (3, 2)]:
        P = build_presentation(make_params("Gamma_mn", m, n, 2))
        assert sum(graded_dimensions(P, 4)) == 6 * m * n + 1


def test_order_a_before_b_fails_for_gamma():
    P = build_presentation(make_params("Gamma_q", 3, None, 1))
    order = sorted(P.arrow_order, key=lambda a: "abc".index(a[0]))
    P2 = QuadraticPresentation(P.quiver, P.relations, P.field, order)
    cert = confluence_check(P2)
    assert not cert.ok
    assert any(w[0].startswith("b") and w[1].startswith("a") and w[2].startswith("c") for w, _, _ in cert.failures)
    with pytest.raises(NotConfluent):
        monomial_basis(P2, length=2)


def test_conflicting_leads_rejected():
    q = Quiver([0, 1, 2], [("x", 0, 1), ("y", 1, 2), ("u", 0, 1), ("v", 1, 2)])
    r1 = LinCombo({q.path("x", "y"): 1, q.path("u", "v"): 1}, Q)
    r2 = LinCombo({q.path("x", "y"): 1, q.path("u", "v"): 2}, Q)
    r3 = LinCombo({q.path("x", "y"): 1}, Q)
    P = QuadraticPresentation(q, [r1, r2, r3], Q)
    with pytest.raises(ReductionConflict):
        P.reduction_system()


def test_double_dual_and_opposite_suffix():
    P = build_presentation(make_params("Gamma_mn", 2, 2, [[2, 3], [5, 7]]))
    D = quadratic_dual(P, "op")
    assert all(a.endswith("^o") for a in D.quiver.arrow_names)
    assert opposite_name(opposite_name("a0_0")) == "a0_0"
    assert same_relation_span(quadratic_dual(D, "op"), P)


def test_presentation_text_round_trip():
    P = dual_presentation(make_params("Gamma_q", 3, None, ["t", 1, "1/t"], Field.rational_functions()))
    P2 = QuadraticPresentation.from_text(P.to_text())
    assert same_relation_span(P, P2)
    assert P2.arrow_order == P.arrow_order and P2.degree_weights == P.degree_weights


def test_corrupted_presentation_text():
    with pytest.raises(Exception):
        QuadraticPresentation.from_text("vertex: 0\nx: 0 -> 0\nrel: 1*x.y\n")
