from fractions import Fraction

import pytest

from projmono.errors import ParseError
from projmono.grammar import (parse_family, parse_point, parse_points_file, parse_poly,
                              parse_poly_file)
from projmono.poly import to_text
from projmono.scalars import QQi, rational_approx, to_exact


def test_qqi_arithmetic():
    a = QQi(1, 2)
    b = QQi(Fraction(1, 3), -1)
    assert a * b == QQi(Fraction(1, 3) + 2, -1 + Fraction(2, 3))
    assert (a / b) * b == a
    assert a.conjugate() * a == QQi(a.norm2())
    assert QQi(0, 1) ** 2 == QQi(-1)
    assert hash(QQi(3)) == hash(QQi(3, 0))
    assert complex(a) == 1 + 2j


def test_to_exact_is_lossless_for_floats():
    assert to_exact(0.1) == QQi(Fraction(0.1))
    assert complex(to_exact(0.25 - 0.5j)) == 0.25 - 0.5j


def test_rational_approx():
    r = rational_approx(2 ** -0.5, 10**7)
    assert abs(float(r) - 2 ** -0.5) < 1e-13
    assert r.denominator <= 10**7


def test_parse_poly_exact_coefficients():
    p = parse_poly("3*x0^2*x1 - (1+2i)*x2^4 + 0.25*x1^3 + x0**2*x1/2")
    assert p.num_vars == 3
    assert p.coefficient((2, 1, 0)) == QQi(Fraction(7, 2))
    assert p.coefficient((0, 0, 4)) == QQi(-1, -2)
    assert p.coefficient((0, 3, 0)) == QQi(Fraction(1, 4))


def test_parse_roundtrip():
    p = parse_poly("x0^4 - 2*x1^3*x2 + (1/3 - 2i)*x2^4")
    assert parse_poly(to_text(p), num_vars=3) == p


@pytest.mark.parametrize("text,line,col", [
    ("x0^2 + * x1", 1, 8),
    ("x0^2 +\n  x1 ^ x2", 2, 8),
    ("x0 / x1", 1, 4),
    ("y0 + 1", 1, 1),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_poly(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_parse_poly_file_vars_directive():
    p = parse_poly_file("# cone\nvars 4\nx0^4 + x1^4 + x2^4\n")
    assert p.num_vars == 4
    with pytest.raises(ParseError):
        parse_poly_file("vars 4\nx5^2")


def test_parse_points():
    assert parse_point("1, 1/2, (2+i)") == [QQi(1), QQi(Fraction(1, 2)), QQi(2, 1)]
    pts = parse_points_file("# c\n1,0,0\n\n0, 1, 0  # second\n")
    assert len(pts) == 2
    with pytest.raises(ParseError) as err:
        parse_points_file("1,0,0\n1,,0\n")
    assert err.value.line == 2


def test_parse_family_modes():
    pd = parse_family("params 2\np = 1, u1, 0, 0\nq = -1, -u1, 1, u2\n")
    assert pd["mode"] == "point-direction" and pd["n"] == 2
    hp = parse_family("params 1\na1 = 0, 0, u1\n")
    assert hp["mode"] == "hyperplane" and len(hp["a"]) == 1
    with pytest.raises(ParseError):
        parse_family("p = 1, 2\nq = 3, 4\n")
    with pytest.raises(ParseError) as err:
        parse_family("params 2\np = 1, u3, 0, 0\nq = 1, 0, 0, 0\n")
    assert err.value.line == 2


def test_qqi_pickles():
    import pickle
    from projmono.scalars import QQi
    z = QQi(3, -2) / 7
    assert pickle.loads(pickle.dumps(z)) == z
