"""Point classification: uniform, non-uniform, Galois, decomposable.

For plane curves the pencil through the center is analyzed directly.  For
hypersurfaces in higher dimension the center is analyzed on several random
plane sections through it; a section's monodromy group is a subgroup of the
true one, so a full symmetric section group proves uniformity while
agreement of proper subgroups is only evidence of non-uniformity.
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import sympy

from . import linalg
from .config import Config
from .errors import (CertificationFailure, ContractError, DegenerateSection, NumericalFailure,
                     ProjMonoError)
from .groups import PermGroup, classify as group_flags, one_line
from .monodromy import loops_json, monodromy_generators
from .pencil import branch_points, build_pencil, make_center, singular_point_check, tangent_cone
from .poly import MultiPoly, directional_derivative, eval_poly
from .scalars import QQi, to_exact

SECTION_RESEED = 104729
FLAG_KEYS = ("is_full_symmetric", "is_alternating", "is_regular", "is_primitive",
             "contains_transposition")


@dataclass
class SectionResult:
    seed: int | None
    order: int
    flags: dict
    generators: list          # one-line notation, 1-based
    n_branch_points: int
    n_certified: int
    product_check: bool
    attempts: int = 1
    loops: list = field(default_factory=list, repr=False)

    def signature(self):
        return (self.order,) + tuple(self.flags[k] for k in FLAG_KEYS)

    def to_json(self, with_loops=False):
        out = {
            "seed": self.seed,
            "order": self.order,
            "flags": {k: self.flags[k] for k in FLAG_KEYS},
            "block_systems": self.flags["block_systems"],
            "generators": self.generators,
            "n_branch_points": self.n_branch_points,
            "n_certified": self.n_certified,
            "product_check": self.product_check,
            "attempts": self.attempts,
        }
        if with_loops:
            out["loops"] = self.loops
        return out


@dataclass
class MonodromyReport:
    center: list
    degree: int
    n: int
    per_section: list
    verdict: str                # uniform | non_uniform | inconclusive
    order: int | None
    galois: bool | None
    decomposable: bool | None
    contains_transposition: bool | None
    evidence: str               # "pencil" for curves, "section-level evidence" otherwise
    errors: list = field(default_factory=list)

    def to_json(self, with_loops=False):
        return {
            "center": [_fmt_scalar(x) for x in self.center],
            "degree": self.degree,
            "n": self.n,
            "verdict": self.verdict,
            "order": self.order,
            "galois": self.galois,
            "decomposable": self.decomposable,
            "contains_transposition": self.contains_transposition,
            "evidence": self.evidence,
            "sections": [s.to_json(with_loops) for s in self.per_section],
            "errors": self.errors,
        }


def _fmt_scalar(x):
    if isinstance(x, QQi):
        return str(x)
    z = complex(x)
    return repr(z.real) if z.imag == 0 else f"{z.real!r}{z.imag:+}i"


# --------------------------------------------------------------------------- sections


def analyze_section(f: MultiPoly, center, seed, randomize, config: Config) -> SectionResult:
    chart = build_pencil(f, center, seed=seed, randomize=randomize, retries=config.retry_cap)
    bps = branch_points(chart, config.cluster_tol)
    mono = monodromy_generators(chart, bps, seed=seed or 0, opts=config.track_options())
    G = PermGroup(chart.d, mono.generators)
    if not G.is_transitive():
        raise DegenerateSection("section monodromy is intransitive (reducible section)", seed=seed)
    flags = group_flags(G)
    return SectionResult(chart.seed, flags["order"], flags, [one_line(g) for g in G.generators],
                         len(bps), sum(r.certified for r in mono.results), mono.product_check,
                         loops=loops_json(mono))


def _section_with_retries(f, center, seed, randomize, config):
    """Re-seed a section after numerical failures; certification failures propagate."""
    last = None
    for attempt in range(config.retry_cap + 1):
        s = seed + SECTION_RESEED * attempt
        try:
            res = analyze_section(f, center, s, randomize or attempt > 0, config)
            res.attempts = attempt + 1
            return res
        except NumericalFailure as exc:
            last = exc
    raise last


def _verdict(sections, d):
    """Aggregate conjugacy-invariant data; never merges generators across sections."""
    if any(s.flags["is_full_symmetric"] for s in sections):
        # the true group is then S_d itself, which is regular only for d = 2
        return "uniform", math.factorial(d), d == 2, False, d >= 2
    sigs = {s.signature() for s in sections}
    if len(sigs) == 1:
        s = sections[0]
        return ("non_uniform", s.order, s.flags["is_regular"], not s.flags["is_primitive"],
                s.flags["contains_transposition"])
    return "inconclusive", None, None, None, None


def classify_point(f: MultiPoly, P, config: Config | None = None) -> MonodromyReport:
    """Classify the projection of ``{f = 0}`` from the point ``P``."""
    config = config or Config()
    d = f.degree()
    if d > config.max_degree:
        raise ContractError(f"degree {d} exceeds the cap {config.max_degree}")
    center = make_center(f, P, config.center_off_x_threshold)
    n = f.num_vars - 2
    if n == 1:
        sections = [_section_with_retries(f, center, config.seed, False, config)]
        evidence = "pencil"
    else:
        sections = []
        for i in range(config.sections):
            sections.append(_section_with_retries(f, center, config.seed + i, True, config))
        evidence = "section-level evidence"
    verdict, order, galois, decomposable, transp = _verdict(sections, d)
    return MonodromyReport(center.coords, d, n, sections, verdict, order, galois, decomposable,
                           transp, evidence)


# --------------------------------------------------------------------------- cones


@dataclass
class ConeCheck:
    is_cone: bool
    vertex: list | None
    vertex_space: list = field(default_factory=list)

    def to_json(self):
        return {"is_cone": self.is_cone,
                "vertex": None if self.vertex is None else [str(x) for x in self.vertex],
                "vertex_space_dim": len(self.vertex_space)}


def _normalize(v):
    k = next(i for i, x in enumerate(v) if x)
    return [x / v[k] for x in v]


def cone_check(f: MultiPoly) -> ConeCheck:
    """Exact vertex search: solve sum_j v_j df/dx_j == 0 (linear in v)."""
    if f.coeff_mode != "exact":
        raise ContractError("cone_check needs exact coefficients")
    nv = f.num_vars
    parts = [directional_derivative(f, [QQi(1) if i == j else QQi(0) for i in range(nv)])
             for j in range(nv)]
    monos = sorted({e for p in parts for e in p.terms})
    rows = [[to_exact(p.coefficient(m)) for p in parts] for m in monos]
    space = linalg.nullspace(rows, nv) if rows else linalg.nullspace([], nv)
    if not space:
        return ConeCheck(False, None, [])
    space = [_normalize(v) for v in space]
    return ConeCheck(True, space[-1], space)


# --------------------------------------------------------------------------- candidates


def _to_sympy(p: MultiPoly, syms):
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        c = to_exact(c)
        coef = sympy.Rational(c.re.numerator, c.re.denominator) + \
            sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
        expr += coef * sympy.Mul(*[s ** e for s, e in zip(syms, exp)])
    return expr


def _from_sympy_number(z):
    re, im = sympy.Rational(sympy.re(z)), sympy.Rational(sympy.im(z))
    return QQi(Fraction(re.p, re.q), Fraction(im.p, im.q))


def linear_factors(p: MultiPoly):
    """Linear factors of a form over Q(i) (as coefficient covectors)."""
    syms = sympy.symbols(f"x0:{p.num_vars}")
    _, factors = sympy.factor_list(sympy.expand(_to_sympy(p, syms)), *syms, gaussian=True)
    out = []
    for fac, _ in factors:
        poly = sympy.Poly(fac, *syms)
        if poly.total_degree() == 1:
            out.append([_from_sympy_number(poly.coeff_monomial(s)) for s in syms])
    return out


def _dedupe(points):
    seen, out = set(), []
    for p in points:
        key = tuple(_normalize(p))
        if key not in seen:
            seen.add(key)
            out.append(list(key))
    return out


def singular_points_small(f: MultiPoly, entries=(-1, 0, 1)):
    """Exact singular points with coordinates in a small set (projectively deduplicated)."""
    pts = []
    for v in itertools.product(entries, repeat=f.num_vars):
        if not any(v):
            continue
        q = [QQi(x) for x in v]
        if not eval_poly(f, q) and singular_point_check(f, q):
            pts.append(q)
    return _dedupe(pts)


def candidate_points(f: MultiPoly, user_points=None, singular_points=None, seed: int = 0,
                     slices: int = 2):
    """Candidate centers: coordinate points, user points and tangent-cone samples, all off X."""
    if f.coeff_mode != "exact":
        raise ContractError("candidate_points needs exact coefficients")
    nv = f.num_vars
    rng = random.Random(seed)
    cands = [[QQi(1) if i == j else QQi(0) for i in range(nv)] for j in range(nv)]
    cands += [[to_exact(x) for x in p] for p in (user_points or [])]
    sing = singular_points if singular_points is not None else singular_points_small(f)
    for s in sing:
        cone = tangent_cone(f, s)
        for cov in linear_factors(cone.projective_form):
            for _ in range(slices):
                rows = [cov] + [[QQi(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(nv)]
                                for _ in range(nv - 2)]
                sol = linalg.nullspace(rows, nv)
                if len(sol) == 1:
                    cands.append(sol[0])
    return [p for p in _dedupe(cands) if eval_poly(f, p)]


# --------------------------------------------------------------------------- scans


def _scan_one(args):
    f, P, config = args
    try:
        return classify_point(f, P, config), None
    except CertificationFailure as exc:
        return None, {"kind": type(exc).__name__, "message": str(exc), "hard": True}
    except ProjMonoError as exc:
        return None, {"kind": type(exc).__name__, "message": str(exc), "hard": False}


def scan(f: MultiPoly, candidates, config: Config | None = None):
    """Classify each candidate; returns (rows, summary) in candidate order."""
    config = config or Config()
    jobs = [(f, P, config) for P in candidates]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_scan_one, jobs))
    else:
        results = [_scan_one(j) for j in jobs]
    rows = []
    summary = {"n_uniform": 0, "n_non_uniform": 0, "n_galois": 0, "n_decomposable": 0,
               "n_inconclusive": 0, "n_failed": 0}
    for idx, ((report, err), P) in enumerate(zip(results, candidates)):
        if report is None:
            summary["n_failed"] += 1
            rows.append({"index": idx, "center": [_fmt_scalar(x) for x in P], "error": err})
            continue
        summary["n_" + report.verdict] += 1
        summary["n_galois"] += bool(report.galois)
        summary["n_decomposable"] += bool(report.decomposable)
        rows.append({"index": idx, **report.to_json()})
    return rows, summary
