"""Shipped fixture corpus: polynomials, family charts and candidate lists."""
from __future__ import annotations

import random
from importlib import resources

from .focal import LineFamilyChart
from .grammar import parse_points_file, parse_poly_file
from .scalars import QQi

POLYS = ("conic", "nodal_cubic", "cuspidal_cubic", "fermat_cubic", "fermat_quartic",
         "fermat_quintic", "generic_quartic", "cone_fermat_quartic", "fermat_quartic_surface",
         "generic_quartic_surface", "quadric", "asymptotic_cubic")
FAMILIES = ("skew_lines", "star", "conic_line", "tangent_quadric", "asymptotic_cubic")

# fixture -> centers used by the corpus-wide checks (exact coordinates)
CORPUS_CENTERS = {
    "conic": [(0, 0, 1), (1, 2, 3)],
    "nodal_cubic": [(1, 2, 3), (1, 0, 0), (0, 1, 1)],
    "cuspidal_cubic": [(1, 2, 3), (0, 1, 1)],
    "fermat_cubic": [(1, 0, 0), (1, 2, 3)],
    "fermat_quartic": [(1, 0, 0), (0, 1, 0), (1, 2, 3)],
    "fermat_quintic": [(1, 0, 0), (2, 1, 3)],
    "generic_quartic": [(1, 2, 3), (1, 0, 0), (0, 0, 1)],
}


def fixture_path(filename: str):
    return resources.files("projmono").joinpath("fixtures", filename)


def fixture_text(filename: str) -> str:
    return fixture_path(filename).read_text()


def load_poly(name: str):
    return parse_poly_file(fixture_text(f"{name}.poly"))


def load_family(name: str) -> LineFamilyChart:
    return LineFamilyChart.from_text(fixture_text(f"{name}.fam"))


def load_points(name: str):
    return parse_points_file(fixture_text(f"{name}.txt"))


def tangent_quadric_text(seed: int = 0) -> str:
    """Tangent lines to x0^2 + x1^2 + x2^2 = x3^2 along a seeded direction field.

    The tangency point is the stereographic parametrization
    ``P(u) = (2u1, 2u2, s - 1, s + 1)`` with ``s = u1^2 + u2^2`` (``lam = 0``);
    the direction is ``dP/du1 + c(u) dP/du2`` for a random affine ``c``.
    """
    rng = random.Random(seed)
    c0, c1, c2 = (rng.randint(-9, 9) for _ in range(3))
    c = f"({c0} + {c1}*u1 + {c2}*u2)"
    return (
        f"# tangent lines to the quadric, direction field c(u) = {c}\n"
        "params 2\n"
        "p = 2*u1, 2*u2, u1^2 + u2^2 - 1, u1^2 + u2^2 + 1\n"
        f"q = 2, 2*{c}, 2*u1 + 2*u2*{c}, 2*u1 + 2*u2*{c}\n"
    )


def tangent_quadric_family(seed: int = 0) -> LineFamilyChart:
    return LineFamilyChart.from_text(tangent_quadric_text(seed))


def random_rational_point(rng: random.Random, n: int, den: int = 97, span: int = 300):
    """Seeded exact sample with Gaussian-rational coordinates."""
    return [QQi(rng.randint(-span, span), rng.randint(-span, span)) / den for _ in range(n)]
