from projmono.corpus import CORPUS_CENTERS, FAMILIES, POLYS, load_family, load_points, load_poly
from projmono.poly import eval_poly
from projmono.scalars import QQi


def test_fixtures_load():
    for name in POLYS:
        f = load_poly(name)
        assert f.is_homogeneous() and f.degree() >= 2
    for name in FAMILIES:
        assert load_family(name).n == 2
    assert len(load_points("cone_line_points")) == 5
    assert load_points("empty_points") == []


def test_corpus_centers_are_off_the_curve():
    for name, centers in CORPUS_CENTERS.items():
        f = load_poly(name)
        for P in centers:
            assert eval_poly(f, [QQi(x) for x in P]) != 0, (name, P)


def test_cone_points_lie_on_the_vertex_line():
    for P in load_points("cone_line_points"):
        assert P[1] == 0 and P[2] == 0
