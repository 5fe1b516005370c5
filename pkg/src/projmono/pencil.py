"""Projection from a center P: pencil charts, fibers, branch points, profiles.

A chart sends P to the last coordinate point of a plane.  With plane
coordinates ``(s0 : s1 : s2)`` and ``F`` the restricted curve form, the line
through P and ``(1 : t : 0)`` meets the curve where ``g_t(lam) = F(1, t, lam)``
vanishes (t-chart, index 0); the second chart uses ``F(s, 1, lam)`` with
``s = 1/t`` and ``lam_s = lam_t / t`` (index 1).  Because ``F(0, 0, 1) != 0``
both fiber polynomials have degree exactly ``d`` in ``lam``.

Branch points are the roots of ``Res_lam(g_t, dg_t/dlam)``, a polynomial in t
of degree at most ``d(d-1)``; a degree drop means the point ``t = inf`` is
branched.  With exact input the discriminant, its square-free decomposition
and the resulting multiplicities are computed over Q(i).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import linalg
from .errors import (CenterOnX, ContractError, DegenerateSection, DimensionMismatch,
                     DiscriminantIdenticallyZero, PointNotOnX)
from .poly import (DEFAULT_CLUSTER_TOL, MultiPoly, UniPoly, eval_poly, gradient,
                   interpolate, partial, raw_roots, refine_root, resultant,
                   roots_with_multiplicity, squarefree_decomposition, substitute_frame,
                   substitute_linear)
from .scalars import QQi, to_exact, to_mpc

CENTER_OFF_X_THRESHOLD = 1e-9
SINGULAR_TOL = 1e-12
SECTION_RETRIES = 5
# lines through singular points: branch-component membership needs the normalization
UNCLASSIFIED_SINGULAR = "unclassified (singular)"


def _norm(v):
    return float(np.linalg.norm([complex(x) for x in v]))


# --------------------------------------------------------------------------- centers


@dataclass
class ProjCenter:
    coords: list
    residual: float
    exact: bool


def make_center(f: MultiPoly, P, threshold: float = CENTER_OFF_X_THRESHOLD) -> ProjCenter:
    """Validate a projection center ``P`` (not on X)."""
    if len(P) != f.num_vars:
        raise DimensionMismatch(f"point has {len(P)} coordinates, form has {f.num_vars} variables")
    if f.degree() < 2 or not f.is_homogeneous():
        raise ContractError("center requires a homogeneous form of degree >= 2")
    if not any(complex(x) != 0 for x in P):
        raise ContractError("the zero vector is not a projective point")
    exact = f.coeff_mode == "exact" and all(isinstance(x, (QQi, int)) or hasattr(x, "denominator")
                                            for x in P)
    coords = [to_exact(x) for x in P] if exact else [complex(x) for x in P]
    val = eval_poly(f, coords)
    residual = abs(complex(val)) / (f.max_norm() * _norm(coords) ** f.degree())
    if exact:
        if not val:
            raise CenterOnX(f"f(P) = 0 exactly at P = {P}")
    elif residual <= threshold:
        raise CenterOnX(f"relative residual {residual:.3g} below threshold {threshold:g}")
    return ProjCenter(coords, residual, exact)


# --------------------------------------------------------------------------- charts


@dataclass
class PencilChart:
    frame: list            # columns: frame[i] is the image of the i-th plane coordinate
    curve_form: MultiPoly  # ternary form F(s0, s1, s2); P sits at (0:0:1)
    d: int
    seed: int | None
    ambient_vars: int
    plane: tuple = (0, 1)  # which frame columns (besides P's) span the section plane
    tables: dict = field(default_factory=dict, repr=False)

    @property
    def n(self):
        return self.ambient_vars - 2

    def frame_matrix(self) -> np.ndarray:
        return np.array([[complex(x) for x in col] for col in self.frame]).T

    def table(self, chart_index: int = 0, exact: bool = False):
        """Coefficient table C[j][k] of t^j lam^k for the fiber polynomial."""
        key = (chart_index, exact)
        if key not in self.tables:
            d = self.d
            C = [[QQi(0)] * (d + 1) for _ in range(d + 1)]
            for (a, b, c), coef in self.curve_form.terms.items():
                j = b if chart_index == 0 else a
                C[j][c] = C[j][c] + to_exact(coef) if not isinstance(coef, complex) else C[j][c] + coef
            if exact:
                self.tables[key] = C
            else:
                self.tables[key] = np.array([[complex(x) for x in row] for row in C], dtype=complex)
        return self.tables[key]

    def plane_point(self, s):
        """Ambient homogeneous coordinates of the plane point ``s``."""
        cols = [self.frame[self.plane[0]], self.frame[self.plane[1]], self.frame[-1]]
        return [sum(s[i] * cols[i][j] for i in range(3)) for j in range(self.ambient_vars)]


def _natural_frame(P):
    n = len(P)
    basis = [P] + [[QQi(1) if i == j else QQi(0) for i in range(n)] for j in range(n)]
    cols = linalg.gram_schmidt(basis)
    return cols[1:] + cols[:1]


def _random_frame(P, rng: random.Random):
    n = len(P)
    while True:
        vecs = [[QQi(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)] for _ in range(n - 1)]
        cols = linalg.gram_schmidt([P] + vecs)
        if len(cols) == n:
            return cols[1:] + cols[:1]


def _float_frame(P, rng: random.Random):
    n = len(P)
    a = np.empty((n, n), dtype=complex)
    a[:, 0] = np.asarray(P, dtype=complex)
    for j in range(1, n):
        a[:, j] = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)]
    q, _ = np.linalg.qr(a)
    cols = [list(q[:, j]) for j in range(n)]
    return cols[1:] + cols[:1]


def _squarefree_probe(chart: PencilChart, rng: random.Random) -> bool:
    exact = chart.curve_form.coeff_mode == "exact"
    for _ in range(3):
        if exact:
            t = QQi(rng.randint(-50, 50), rng.randint(-50, 50))
        else:
            t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        g = fiber_poly(chart, t)
        val = resultant(g, g.deriv())
        if exact and val:
            return True
        if not exact and abs(val) > 1e-10 * g.max_norm() ** (2 * chart.d - 1):
            return True
    return False


def _chart_from_frame(f, frame, seed, plane=(0, 1)):
    cols = [frame[plane[0]], frame[plane[1]], frame[-1]]
    F = substitute_frame(f, cols)
    return PencilChart(frame, F, f.degree(), seed, f.num_vars, plane)


def build_pencil(f: MultiPoly, center: ProjCenter, seed: int | None = 0, randomize: bool | None = None,
                 plane_vectors=None, retries: int = SECTION_RETRIES) -> PencilChart:
    """Chart of the pencil of lines through the center.

    For plane curves (three variables) the natural frame is used unless
    ``randomize`` is set; otherwise a seeded random plane through P cuts
    X down to a plane curve.  ``plane_vectors`` forces the plane spanned by
    P and the two given vectors (no retries).
    """
    P = center.coords
    nv = f.num_vars
    if randomize is None:
        randomize = nv > 3
    attempts = 1 if plane_vectors is not None else retries + 1
    last = None
    for attempt in range(attempts):
        s = None if seed is None else seed + 7919 * attempt
        rng = random.Random(s)
        if plane_vectors is not None:
            basis = [P] + [list(v) for v in plane_vectors]
            basis += [[QQi(1) if i == j else QQi(0) for i in range(nv)] for j in range(nv)]
            frame = linalg.gram_schmidt(basis) if center.exact else None
            if frame is None:
                raise ContractError("explicit planes require exact centers")
            frame = frame[1:] + frame[:1]
            if linalg.rank([P] + [list(v) for v in plane_vectors]) != 3:
                raise ContractError("plane vectors must be independent of P")
        elif not randomize and attempt == 0:
            frame = _natural_frame(P) if center.exact else _float_frame(P, random.Random(0))
        elif center.exact and f.coeff_mode == "exact":
            frame = _random_frame(P, rng)
        else:
            frame = _float_frame(P, rng)
        chart = _chart_from_frame(f if center.exact else f.to_float(), frame, s)
        F = chart.curve_form
        if F.is_zero():
            last = DegenerateSection("restricted form is identically zero", seed=s)
            continue
        if not F.coefficient((0, 0, chart.d)):
            last = DegenerateSection("center lies on the restricted curve", seed=s)
            continue
        if not _squarefree_probe(chart, rng):
            last = DegenerateSection("restricted curve is not square-free", seed=s)
            continue
        return chart
    raise last


def fiber_poly(chart: PencilChart, t, chart_index: int = 0) -> UniPoly:
    """Fiber polynomial over parameter ``t`` (or ``s`` in the second chart)."""
    exact = isinstance(t, (QQi, int)) or hasattr(t, "denominator")
    if exact and chart.curve_form.coeff_mode == "exact":
        C = chart.table(chart_index, exact=True)
        t = to_exact(t)
        out = []
        for k in range(chart.d + 1):
            acc = QQi(0)
            for j in range(chart.d, -1, -1):
                acc = acc * t + C[j][k]
            out.append(acc)
        return UniPoly(out)
    if isinstance(t, (mpmath.mpc, mpmath.mpf)):
        C = chart.table(chart_index, exact=chart.curve_form.coeff_mode == "exact")
        out = []
        for k in range(chart.d + 1):
            acc = mpmath.mpc(0)
            for j in range(chart.d, -1, -1):
                acc = acc * t + to_mpc(C[j][k])
            out.append(acc)
        return UniPoly(out)
    C = chart.table(chart_index)
    out = C[-1].copy()
    for j in range(C.shape[0] - 2, -1, -1):
        out = out * complex(t) + C[j]
    return UniPoly(list(out))


# --------------------------------------------------------------------------- discriminant


def discriminant_in_t(chart: PencilChart) -> UniPoly:
    """Res_lam(g_t, g_t') as a polynomial in t, by interpolation at d(d-1)+1 nodes."""
    d = chart.d
    N = d * (d - 1)
    if chart.curve_form.coeff_mode == "exact":
        xs = [QQi(j) for j in range(N + 1)]
        ys = []
        for t in xs:
            g = fiber_poly(chart, t)
            ys.append(resultant(g, g.deriv()))
        D = interpolate(xs, ys)
    else:
        nodes = np.exp(2j * np.pi * np.arange(N + 1) / (N + 1))
        vals = []
        for t in nodes:
            g = fiber_poly(chart, complex(t))
            vals.append(resultant(g, g.deriv()))
        coeffs = np.fft.fft(np.array(vals)) / (N + 1)
        scale = max(abs(coeffs))
        coeffs = [c if abs(c) > 1e-10 * scale else 0j for c in coeffs]
        D = UniPoly(coeffs)
    if D.is_zero():
        raise DiscriminantIdenticallyZero("fiber discriminant vanishes identically "
                                          "(non-reduced section)")
    return D


# --------------------------------------------------------------------------- profiles


@dataclass
class IntersectionProfile:
    clusters: list
    contact_orders: list
    branching_weight: int
    meets_singular: bool
    classification: str

    @property
    def multiplicities(self):
        return sorted((c.multiplicity for c in self.clusters), reverse=True)


@dataclass
class BranchPoint:
    t: complex | None               # None for the point at infinity
    profile: IntersectionProfile
    isolation: float
    is_simple: bool
    disc_multiplicity: int
    chart_index: int = 0
    t_mp: object = field(default=None, repr=False)

    @property
    def at_infinity(self):
        return self.t is None


def classify_line(mults) -> str:
    big = sorted((m for m in mults if m > 1), reverse=True)
    if not big:
        return "transverse-line"
    if big == [2]:
        return "simple-tangent"
    if big == [2, 2]:
        return "bitangent"
    if big == [3]:
        return "asymptotic-tangent"
    return "higher"


def profile_from_clusters(clusters, meets_singular=False) -> IntersectionProfile:
    mults = sorted((c.multiplicity for c in clusters), reverse=True)
    contact = [m - 1 for m in mults]
    return IntersectionProfile(list(clusters), contact, sum(contact), meets_singular,
                               classify_line(mults))


def _meets_singular(chart: PencilChart, clusters, t, chart_index, dps):
    F = chart.curve_form
    grads = gradient(F)
    norm = F.max_norm()
    for cl in clusters:
        if cl.multiplicity < 2:
            continue
        lam = cl.center_mp if cl.center_mp is not None else cl.center
        if chart_index == 0:
            pt = [1, t, lam]
        else:
            pt = [t, 1, lam]
        if dps is not None:
            with mpmath.workdps(dps):
                pt = [to_mpc(x) if not isinstance(x, (mpmath.mpc, mpmath.mpf)) else x for x in pt]
                size = mpmath.sqrt(sum(abs(x) ** 2 for x in pt))
                vals = [abs(eval_poly(gp, pt)) for gp in grads]
                bound = SINGULAR_TOL * norm * size ** (chart.d - 1)
                if all(v <= bound for v in vals):
                    return True
        else:
            pt = [complex(x) for x in pt]
            size = float(np.linalg.norm(pt))
            vals = [abs(eval_poly(gp.to_float(), pt)) for gp in grads]
            if all(v <= 1e-7 * norm * size ** (chart.d - 1) for v in vals):
                return True
    return False


def profile_dps(d: int) -> int:
    """Working digits that keep an m-fold root's numerical splitting below 1e-15."""
    return 15 * d + 40


def intersection_profile(chart: PencilChart, t, tol: float = DEFAULT_CLUSTER_TOL,
                         chart_index: int = 0, dps=None) -> IntersectionProfile:
    """Roots-with-multiplicity of the line over ``t``, classified."""
    g = fiber_poly(chart, t, chart_index)
    clusters = roots_with_multiplicity(g, tol, dps=dps)
    sing = _meets_singular(chart, clusters, t, chart_index, dps)
    return profile_from_clusters(clusters, sing)


def branch_points(chart: PencilChart, tol: float = DEFAULT_CLUSTER_TOL):
    """Branch points over both t-charts, each with its intersection profile."""
    d = chart.d
    D = discriminant_in_t(chart)
    N = d * (d - 1)
    exact = chart.curve_form.coeff_mode == "exact"
    dps = profile_dps(d) if exact else None
    found = []  # (t_double, t_mp, disc multiplicity)
    if exact:
        for k, A in sorted(squarefree_decomposition(D).items()):
            for z in raw_roots(A):
                tz = refine_root(A, z, dps)
                found.append((complex(tz), tz, k))
    else:
        for cl in roots_with_multiplicity(D, 1e-6):
            found.append((cl.center, None, cl.multiplicity))
    finite = [f[0] for f in found]
    out = []
    for i, (tz, tmp, k) in enumerate(found):
        others = [abs(tz - w) for j, w in enumerate(finite) if j != i]
        iso = min(others) if others else 1.0 + abs(tz)
        with mpmath.workdps(dps or 15):
            prof = intersection_profile(chart, tmp if tmp is not None else tz, tol, 0, dps)
        out.append(BranchPoint(tz, prof, iso, prof.branching_weight == 1, k, 0, tmp))
    drop = N - D.degree()
    if drop > 0:
        s0 = QQi(0) if exact else 0j
        prof = intersection_profile(chart, s0, tol, 1, dps)
        inv = [abs(1 / w) for w in finite if w != 0]
        iso = min(inv) if inv else 1.0
        out.append(BranchPoint(None, prof, iso, prof.branching_weight == 1, drop, 1))
    return out


def branch_points_json(points):
    rows = []
    for bp in points:
        rows.append({
            "t_re": None if bp.t is None else bp.t.real,
            "t_im": None if bp.t is None else bp.t.imag,
            "at_infinity": bp.at_infinity,
            "profile": bp.profile.multiplicities,
            "b": bp.profile.branching_weight,
            "simple": bp.is_simple,
            "meets_singular": bp.profile.meets_singular,
            "classification": bp.profile.classification,
            "status": UNCLASSIFIED_SINGULAR if bp.profile.meets_singular else "branch",
            "disc_multiplicity": bp.disc_multiplicity,
            "isolation": bp.isolation,
        })
    return rows


# --------------------------------------------------------------------------- tangent cones


@dataclass
class TangentCone:
    at_point: list
    cone_form: MultiPoly       # lowest homogeneous part in local affine coordinates
    m: int
    chart_var: int             # dehomogenized coordinate index
    projective_form: MultiPoly  # same cone written in the ambient homogeneous coordinates

    def local_vars(self):
        return [j for j in range(len(self.at_point)) if j != self.chart_var]


def tangent_cone(f: MultiPoly, p) -> TangentCone:
    """Lowest-degree part of f expanded at ``p`` in the affine chart x_k = 1."""
    if f.coeff_mode != "exact":
        raise ContractError("tangent cones require exact coefficients")
    p = [to_exact(x) for x in p]
    if len(p) != f.num_vars:
        raise DimensionMismatch("point length differs from the number of variables")
    if eval_poly(f, p):
        raise PointNotOnX(f"f does not vanish at {p}")
    nv = f.num_vars
    k = next(i for i, x in enumerate(p) if x)
    q = [x / p[k] for x in p]
    m_loc = nv - 1
    local = [j for j in range(nv) if j != k]
    images = []
    for j in range(nv):
        if j == k:
            images.append(MultiPoly.const(1, m_loc))
        else:
            images.append(MultiPoly.var(local.index(j), m_loc) + q[j])
    expanded = substitute_linear(f, images)
    m = min(sum(e) for e in expanded.terms)
    cone = expanded.homogeneous_part(m)
    # projective version: y_j = x_j - q_j * x_k
    proj_images = []
    for j in local:
        proj_images.append(MultiPoly.var(j, nv) - MultiPoly.var(k, nv) * q[j])
    projective = substitute_linear(cone, proj_images)
    return TangentCone(p, cone, m, k, projective)


def singular_point_check(f: MultiPoly, p) -> bool:
    """Exact test that every partial of f vanishes at p."""
    return all(not eval_poly(partial(f, i), p) for i in range(f.num_vars))
