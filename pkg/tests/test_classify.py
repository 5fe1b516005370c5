import pytest

from projmono.classify import (candidate_points, classify_point, cone_check, linear_factors,
                               scan, singular_points_small)
from projmono.config import Config
from projmono.errors import CenterOnX, ContractError, DegenerateSection
from projmono.grammar import parse_poly
from projmono.scalars import QQi


def pt(*xs):
    return [QQi(x) for x in xs]


def test_config_validation():
    Config()
    for bad in ({"cluster_tol": 0}, {"sections": 0}, {"workers": 0}, {"max_degree": 1}):
        with pytest.raises(ContractError):
            Config(**bad)
    assert "json_out" not in Config(json_out="x.json").to_json()


def test_plane_curve_verdicts(polys):
    r = classify_point(polys["fermat_quartic"], pt(1, 0, 0))
    assert (r.verdict, r.order, r.galois, r.decomposable) == ("non_uniform", 4, True, True)
    assert r.contains_transposition is False and r.evidence == "pencil"
    r = classify_point(polys["fermat_quintic"], pt(1, 0, 0))
    assert (r.verdict, r.order, r.galois, r.decomposable) == ("non_uniform", 5, True, False)
    r = classify_point(polys["conic"], pt(0, 0, 1))
    assert (r.verdict, r.order, r.galois) == ("uniform", 2, True)
    r = classify_point(polys["generic_quartic"], pt(1, 2, 3))
    assert (r.verdict, r.order, r.galois, r.decomposable) == ("uniform", 24, False, False)


def test_errors(polys):
    with pytest.raises(CenterOnX):
        classify_point(polys["conic"], pt(1, 0, 1))
    with pytest.raises(ContractError):
        classify_point(polys["fermat_quartic"], pt(1, 0, 0), Config(max_degree=3))
    with pytest.raises(DegenerateSection):
        classify_point(parse_poly("x0*x1", 3), pt(1, 1, 0), Config(retry_cap=1))


def test_cone_sections(polys):
    f = polys["cone_fermat_quartic"]
    r = classify_point(f, pt(1, 0, 0, 1))
    assert r.verdict == "non_uniform" and r.order == 4
    assert r.evidence == "section-level evidence" and len(r.per_section) == 3
    cc = cone_check(f)
    assert cc.is_cone and cc.vertex == pt(0, 0, 0, 1)
    assert not cone_check(polys["fermat_quartic_surface"]).is_cone
    two = cone_check(parse_poly("(x0 + x1)^4 + x2^4", 4))
    assert two.is_cone and len(two.vertex_space) == 2


def test_generic_surface_is_uniform(polys):
    r = classify_point(polys["fermat_quartic_surface"], pt(1, 2, 3, 5))
    assert r.verdict == "uniform" and r.order == 24


def test_candidates_and_scan(polys):
    f = polys["nodal_cubic"]
    assert singular_points_small(f) == [pt(0, 0, 1)]
    facs = linear_factors(parse_poly("x1^2 - x0^2", 2))
    assert len(facs) == 2
    cands = candidate_points(f, seed=0)
    assert pt(1, 0, 0) in cands and len(cands) >= 3
    rows, summary = scan(f, cands[:3])
    assert len(rows) == 3 and sum(summary[k] for k in
                                  ("n_uniform", "n_non_uniform", "n_inconclusive", "n_failed")) == 3
    rows, summary = scan(f, [pt(1, 0, 0), pt(0, 0, 1)])
    assert summary["n_failed"] == 1 and rows[1]["error"]["kind"] == "CenterOnX"
    assert rows[1]["error"]["hard"] is False


def test_scan_is_reproducible(polys):
    f = polys["fermat_quartic"]
    cands = [pt(1, 0, 0), pt(1, 2, 3)]
    a = scan(f, cands, Config(seed=4))
    b = scan(f, cands, Config(seed=4, workers=2))
    assert a == b
