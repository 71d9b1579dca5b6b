from hhlab.center import (
    center_piece,
    centrality_residual,
    identity_element,
    is_central,
    match_structure,
    model_hilbert,
)
from hhlab.exact import Field
from hhlab.families import CenterModel, dual_presentation, make_params


def test_identity_is_central():
    fp = make_params("Gamma_q", 3, None, 1)
    E = dual_presentation(fp)
    assert is_central(E, identity_element(E))
    assert center_piece(E, 0).dimension == 1


def test_single_arrow_is_not_central():
    fp = make_params("Gamma_q", 2, None, 1)
    E = dual_presentation(fp)
    a = E.lc((1, "a0"))
    assert not is_central(E, a)
    assert any(centrality_residual(E, a))


def test_model_hilbert_truncated_cone():
    model = CenterModel("TruncatedCone", 2, 2, 2, 2, -1, 1)
    assert [model_hilbert(model, L) for L in range(0, 9)] == [1, 0, 2, 0, 4, 0, 6, 0, 8]


def test_model_hilbert_even_shape():
    model = CenterModel("KPlusXYIdealEven", 3, 3, None, None, None, 1)
    assert [model_hilbert(model, L) for L in (0, 3, 6, 9, 12)] == [1, 0, 2, 0, 4]


def test_degree_blocks_cover_piece():
    fp = make_params("Gamma_mn", 2, 2, 1)
    E = dual_presentation(fp)
    piece = center_piece(E, 4)
    assert sum(len(v) for v in piece.by_degree().values()) == piece.dimension


def test_scalars_only_for_generic_parameter():
    K = Field.rational_functions()
    fp = make_params("Gamma_q", 3, None, ["t", 1, 1], K)
    E = dual_presentation(fp)
    assert all(center_piece(E, L).dimension == 0 for L in range(1, 9))


def test_report_serializes():
    fp = make_params("Gamma_q", 2, None, 1)
    rep = match_structure(dual_presentation(fp), fp, 8)
    d = rep.to_dict()
    assert d["consistent"] and d["model"].startswith("TruncatedCone")
    assert "consistent up to length 8: True" in rep.table()
