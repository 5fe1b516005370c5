import cmath
import random

import pytest
from hypothesis import given, settings, strategies as st

from projmono.errors import ContractError, DimensionMismatch
from projmono.grammar import parse_poly
from projmono.poly import (MultiPoly, UniPoly, eval_poly, exact_roots_with_multiplicity,
                           partial, restrict_line, restrict_plane, resultant,
                           roots_with_multiplicity, squarefree_decomposition)
from projmono.scalars import QQi


def P(text, n=None):
    return parse_poly(text, n)


def test_eval_examples():
    assert eval_poly(P("x0^2 + x1^2 - x2^2"), [0, 0, 1]) == QQi(-1)
    assert eval_poly(P("x0^4 + x1^4 + x2^4"), [1, 0, 0]) == QQi(1)
    with pytest.raises(DimensionMismatch):
        eval_poly(P("x0*x1"), [3, 2 + 1j, 5])


def test_partial_examples():
    x = P("x0^2")
    assert partial(x, 0) == P("2*x0")
    assert partial(x, 1 if x.num_vars > 1 else 0) == P("2*x0") or x.num_vars == 1
    assert partial(P("x0^2", 2), 1).is_zero()
    assert partial(P("x0^4 + x1^4 + x2^4"), 0) == P("4*x0^3", 3)
    with pytest.raises(ContractError):
        partial(P("x0^2"), 3)


def test_restrict_line_examples():
    circle = P("x0^2 + x1^2 - 1")
    assert restrict_line(circle, [0, 0], [1, 0]) == UniPoly([QQi(-1), QQi(0), QQi(1)])
    assert restrict_line(circle, [0, 0], [0, 1]) == UniPoly([QQi(-1), QQi(0), QQi(1)])
    quartic = P("1 + x0^4 + x1^4")
    g = restrict_line(quartic, [0, 0], [1, 0])
    assert g == UniPoly([QQi(1), 0, 0, 0, QQi(1)])
    roots = [cl.center for cl in roots_with_multiplicity(g)]
    expected = [cmath.exp(1j * cmath.pi * (2 * k + 1) / 4) for k in range(4)]
    assert len(roots) == 4
    for r in roots:
        assert min(abs(r - e) for e in expected) < 1e-12
    with pytest.raises(ContractError):
        restrict_line(circle, [0, 0], [0, 0])


def test_restrict_plane_examples():
    f = P("x0^2 + x1^2 + x2^2 + x3^2")
    e = [[1 if i == j else 0 for i in range(4)] for j in range(3)]
    assert restrict_plane(f, e) == P("x0^2 + x1^2 + x2^2")
    g = restrict_plane(P("x0^4 + x1^4 + x2^4 + x3^4"), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    assert g == P("x0^4 + x1^4 + 2*x2^4")
    with pytest.raises(ContractError):
        restrict_plane(f, [[1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 1, 0]])


def test_roots_with_multiplicity_examples():
    sq = roots_with_multiplicity(UniPoly([0, 0, 1]))
    assert len(sq) == 1 and sq[0].multiplicity == 2 and abs(sq[0].center) < 1e-12
    cub = roots_with_multiplicity(UniPoly([0, -1, 0, 1]))
    assert sorted(round(c.center.real, 12) for c in cub) == [-1, 0, 1]
    assert all(c.multiplicity == 1 for c in cub)
    q = roots_with_multiplicity(UniPoly([1, 0, 0, 0, 1]))
    assert len(q) == 4 and all(abs(abs(c.center) - 1) < 1e-12 for c in q)
    with pytest.raises(ContractError):
        roots_with_multiplicity(UniPoly([3]))


def test_multiple_roots_high_precision():
    # (lam - 1)^4 (lam + 2): quadruple root resolved at extended precision
    g = UniPoly([QQi(1), QQi(-1)]) ** 4 * UniPoly([QQi(2), QQi(1)])
    g = UniPoly([-c for c in g.coeffs])
    cl = roots_with_multiplicity(g, dps=100)
    assert sorted(c.multiplicity for c in cl) == [1, 4]
    ex = exact_roots_with_multiplicity(g)
    assert sorted(c.multiplicity for c in ex) == [1, 4]


def test_squarefree_decomposition():
    a = UniPoly([QQi(1), QQi(1)])
    b = UniPoly([QQi(-2), QQi(0), QQi(1)])
    dec = squarefree_decomposition(a ** 3 * b)
    assert set(dec) == {1, 3}
    assert dec[3].degree() == 1 and dec[1].degree() == 2


def test_resultant_examples():
    one = QQi(1)
    assert resultant(UniPoly([-one, 0, one]), UniPoly([-one, one])) == 0
    assert resultant(UniPoly([-one, 0, one]), UniPoly([0, one])) == QQi(-1)
    a, b = QQi(3, 1), QQi(-2, 5)
    assert resultant(UniPoly([-a, one]), UniPoly([-b, one])) == a - b
    with pytest.raises(ContractError):
        resultant(UniPoly([0]), UniPoly([one, one]))


def _random_poly(rng, nv, deg, exact=True):
    terms = {}
    for _ in range(6):
        e = [0] * nv
        for _ in range(deg):
            e[rng.randrange(nv)] += 1
        c = QQi(rng.randint(-5, 5), rng.randint(-5, 5))
        terms[tuple(e)] = c if exact else complex(c)
    return MultiPoly(nv, terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_restrict_plane_commutes_with_eval(seed):
    rng = random.Random(seed)
    f = _random_poly(rng, 4, 3)
    frame = [[QQi(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
    try:
        g = restrict_plane(f, frame)
    except ContractError:
        return
    s = [QQi(rng.randint(-4, 4), 1) for _ in range(3)]
    x = [sum((s[i] * frame[i][j] for i in range(3)), QQi(0)) for j in range(4)]
    assert eval_poly(g, s) == eval_poly(f, x)
    gf = restrict_plane(f.to_float(), [[complex(c) for c in v] for v in frame])
    lhs = complex(eval_poly(gf, [complex(c) for c in s]))
    rhs = complex(eval_poly(f, x))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_partial_linear_and_product_rule(seed):
    rng = random.Random(seed)
    f, g = _random_poly(rng, 3, 3), _random_poly(rng, 3, 2)
    k = rng.randrange(3)
    assert partial(f + g, k) == partial(f, k) + partial(g, k)
    assert partial(f * g, k) == partial(f, k) * g + f * partial(g, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_cluster_multiplicities_sum_to_degree(seed):
    rng = random.Random(seed)
    roots = [complex(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 6))]
    g = UniPoly([1])
    for r in roots:
        g = g * UniPoly([-r, 1])
    cl = roots_with_multiplicity(g)
    assert sum(c.multiplicity for c in cl) == g.degree()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_resultant_zero_iff_common_root(seed):
    rng = random.Random(seed)

    def make(k):
        return [QQi(rng.randint(-20, 20), rng.randint(-20, 20)) / 4 for _ in range(k)]

    ra, rb = make(rng.randint(1, 3)), make(rng.randint(1, 3))
    if rng.random() < 0.5:
        rb[0] = ra[0]
    ga, gb = UniPoly([QQi(1)]), UniPoly([QQi(1)])
    for r in ra:
        ga = ga * UniPoly([-r, QQi(1)])
    for r in rb:
        gb = gb * UniPoly([-r, QQi(1)])
    common = any(a == b for a in ra for b in rb)
    ca = roots_with_multiplicity(ga.to_float())
    cb = roots_with_multiplicity(gb.to_float())
    near = any(abs(x.center - y.center) < 1e-6 for x in ca for y in cb)
    assert (resultant(ga, gb) == 0) == common == near
