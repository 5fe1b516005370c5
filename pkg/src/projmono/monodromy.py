"""Numerical monodromy of a pencil chart.

Loops are keyholes: a spoke from a common base point ``b`` to a small circle
around one branch point, the circle counterclockwise, and the spoke back.
Loops are listed by the angle of ``t_k - b`` measured from the direction
towards the centroid, so that traversing them in order is homotopic to a
large counterclockwise circle through ``b`` enclosing every finite branch
point.  That circle measures the branching over ``t = inf``.

Permutation convention: ``perm[i] = j`` means fiber point ``i`` at the base
is carried to fiber point ``j`` after one traversal.  Products are taken in
path order (``groups.mul``).
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import kernels
from .errors import (AmbiguousMatching, CertificationMismatch, OverlappingBranchPoints,
                     PathTrackingFailure, ProductNotIdentity)
from .groups import compose, cycle_type, inverse, is_identity, one_line
from .pencil import UNCLASSIFIED_SINGULAR, BranchPoint, PencilChart, branch_points, fiber_poly
from .poly import DEFAULT_CLUSTER_TOL

MIN_ISOLATION = 1e-10
LOOP_RADIUS = 0.4
SPOKE_CLEARANCE = 0.02  # spokes stay this fraction of isolation away from other branch points
BASE_CANDIDATES = 64
MATCH_FRACTION = 0.25   # matched endpoints must lie within this fraction of min separation


@dataclass
class TrackOptions:
    residual_rel: float = 1e-10
    min_step: float = 1e-12
    max_newton: int = 5
    move_fraction: float = 0.3
    step_fraction: float = 1 / 8      # max step relative to local isolation
    circle_vertices: int = 32
    big_circle_vertices: int = 128
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    step_scale: float = 1.0           # < 1 refines every step bound


@dataclass
class Loop:
    branch_index: int
    center: complex
    radius: float
    vertices: list          # closed polyline in t, starts and ends at the base
    max_steps: list         # per-segment step bound


@dataclass
class LoopSystem:
    base_t: complex
    loops: list
    big_circle: Loop
    centroid: complex
    big_radius: float
    orientation: str = "counterclockwise"


@dataclass
class TrackedFiber:
    points: np.ndarray
    t: complex
    max_residual: float
    min_separation: float


@dataclass
class LoopResult:
    branch_index: int
    permutation: tuple
    cycle_type: list
    steps: int = 0
    retries: int = 0
    max_residual: float = 0.0
    certified: bool = False
    at_infinity: bool = False
    status: str = "certified"

    def to_json(self):
        return {
            "branch_index": self.branch_index,
            "at_infinity": self.at_infinity,
            "permutation": one_line(self.permutation),
            "cycle_type": list(self.cycle_type),
            "certified": self.certified,
            "status": self.status,
            "steps": self.steps,
            "retries": self.retries,
            "max_residual": self.max_residual,
        }


@dataclass
class MonodromyResult:
    chart: PencilChart
    branch: list
    loops: LoopSystem
    results: list = field(default_factory=list)
    product_check: bool = False
    big_permutation: tuple = ()

    @property
    def generators(self):
        return [r.permutation for r in self.results]


# --------------------------------------------------------------------------- geometry


def _seg_dist(p, a, b):
    """Distance from point p to the segment [a, b]."""
    ab = b - a
    if ab == 0:
        return abs(p - a)
    s = ((p - a) * ab.conjugate()).real / abs(ab) ** 2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * ab))


def _step_bounds(vertices, points, frac, own=None, own_iso=0.0):
    """Per-segment step bound: ``frac`` times the distance to the branch points.

    Near its own branch point a loop may use ``frac * own_iso`` (the circle
    is at a fixed fraction of the isolation); other branch points always
    limit the step by their distance.
    """
    out = []
    for a, b in zip(vertices, vertices[1:]):
        others = [_seg_dist(p, a, b) for i, p in enumerate(points) if i != own]
        bound = min(others, default=max(abs(b - a), own_iso))
        if own is not None:
            bound = min(bound, max(_seg_dist(points[own], a, b), own_iso))
        out.append(frac * bound)
    return out


def _spoke_vertices(b, w, r):
    """Spoke b -> w subdivided geometrically towards w (finer near the branch point)."""
    length = abs(w - b)
    if length == 0:
        return [b]
    u = (b - w) / length
    marks = [0.0]
    step = r
    while marks[-1] + step < length:
        marks.append(marks[-1] + step)
        step *= 2
    marks.append(length)
    return [w + m * u for m in reversed(marks)]


def build_loops(branch: list, seed: int = 0, opts: TrackOptions | None = None) -> LoopSystem:
    """Keyhole loop system around the finite branch points."""
    opts = opts or TrackOptions()
    finite = [(i, bp) for i, bp in enumerate(branch) if not bp.at_infinity]
    pts = [bp.t for _, bp in finite]
    for _, bp in finite:
        if bp.isolation < MIN_ISOLATION:
            raise OverlappingBranchPoints(f"isolation {bp.isolation:.3g} below {MIN_ISOLATION:g}",
                                          t=bp.t)
    if pts:
        c = complex(np.mean(pts))
        spread = max(abs(p - c) for p in pts)
    else:
        c, spread = 0j, 0.0
    R = 2 * spread + 1
    radii = [LOOP_RADIUS * bp.isolation for _, bp in finite]

    def spoke_end(b, k):
        tk = pts[k]
        return tk + radii[k] * (b - tk) / abs(b - tk)

    rng = random.Random(seed)
    best, best_score = None, -math.inf
    for _ in range(BASE_CANDIDATES):
        b = c + R * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        score = math.inf
        for k in range(len(pts)):
            w = spoke_end(b, k)
            for j, (_, bp) in enumerate(finite):
                if j != k:
                    score = min(score, _seg_dist(pts[j], b, w) / bp.isolation)
        if score > best_score:
            best, best_score = b, score
    b = best
    if len(pts) > 1 and best_score <= SPOKE_CLEARANCE:
        raise OverlappingBranchPoints(f"no base point with spoke clearance (best {best_score:.3g})",
                                      clearance=best_score)

    ref = c - b

    def angle(k):
        return cmath.phase((pts[k] - b) / ref) if ref != 0 else cmath.phase(pts[k] - b)

    frac = opts.step_fraction * opts.step_scale
    loops = []
    for k in sorted(range(len(pts)), key=angle):
        tk, r = pts[k], radii[k]
        w = spoke_end(b, k)
        phi0 = cmath.phase(w - tk)
        N = opts.circle_vertices
        circle = [tk + r * cmath.exp(1j * (phi0 + 2 * math.pi * j / N)) for j in range(1, N)]
        spoke = _spoke_vertices(b, w, r)
        verts = spoke + circle + [w] + spoke[::-1][1:]
        iso = finite[k][1].isolation
        loops.append(Loop(finite[k][0], tk, r, verts, _step_bounds(verts, pts, frac, k, iso)))

    M = opts.big_circle_vertices
    th = cmath.phase(b - c)
    big = [c + R * cmath.exp(1j * (th + 2 * math.pi * j / M)) for j in range(M)] + [b]
    big_loop = Loop(-1, c, R, big, _step_bounds(big, pts, frac))
    return LoopSystem(b, loops, big_loop, c, R)


# --------------------------------------------------------------------------- tracking


def _min_sep(x):
    if len(x) < 2:
        return math.inf
    diff = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def base_fiber(chart: PencilChart, t: complex, opts: TrackOptions | None = None) -> TrackedFiber:
    opts = opts or TrackOptions()
    g = fiber_poly(chart, complex(t))
    coeffs = np.asarray(g.to_numpy(), dtype=complex)
    roots, _, ok = kernels.aberth(coeffs, kernels.initial_guesses(coeffs))
    sep = _min_sep(roots)
    if not ok or sep <= 2 * opts.cluster_tol * (1 + float(np.abs(roots).max())):
        raise PathTrackingFailure("base fiber is not well separated", t=t, min_separation=sep)
    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    res = max(abs(kernels.horner(coeffs, z)[0]) for z in roots) / (np.abs(coeffs).max())
    return TrackedFiber(roots, complex(t), float(res), sep)


def track(chart: PencilChart, path, fiber: TrackedFiber, opts: TrackOptions | None = None,
          max_steps=None):
    """Continue ``fiber`` along a polyline; returns (end fiber, steps, rejected)."""
    opts = opts or TrackOptions()
    C = chart.table(0)
    x = np.array(fiber.points, dtype=complex)
    steps = rejected = 0
    maxres = fiber.max_residual
    path = [complex(p) for p in path]
    if max_steps is None:
        max_steps = [max(abs(b - a), 1e-3) / 8 for a, b in zip(path, path[1:])]
    for seg, (a, b) in enumerate(zip(path, path[1:])):
        x, st, rej, res, status, s_fail = kernels.track_segment(
            C, a, b, x, max_steps[seg] * opts.step_scale, opts.residual_rel, opts.min_step,
            opts.max_newton, opts.move_fraction)
        x = np.asarray(x)
        steps += st
        rejected += rej
        maxres = max(maxres, res)
        if status != 0:
            raise PathTrackingFailure("step size fell below the floor", segment=seg, start=a, end=b,
                                      position=s_fail, max_residual=maxres)
    end = path[-1] if path else fiber.t
    return TrackedFiber(x, end, maxres, _min_sep(x)), steps, rejected


def match_fibers(start: np.ndarray, end: np.ndarray) -> tuple:
    """Assignment of end points to start points; perm[i] = index of start matching end[i]."""
    dist = np.abs(end[:, None] - start[None, :])
    sep = _min_sep(start)
    tol = MATCH_FRACTION * sep
    nearest = dist.argmin(axis=1)
    if len(set(nearest.tolist())) == len(start) and dist[np.arange(len(start)), nearest].max() < tol:
        return tuple(int(j) for j in nearest)
    rows, cols = linear_sum_assignment(dist)
    if dist[rows, cols].max() >= tol:
        raise AmbiguousMatching("no injective assignment within tolerance",
                                max_distance=float(dist[rows, cols].max()), min_separation=sep)
    perm = [0] * len(start)
    for r, c in zip(rows, cols):
        perm[r] = int(c)
    return tuple(perm)


def _certify(result: LoopResult, bp: BranchPoint):
    if bp.profile.meets_singular:
        result.certified = False
        result.status = UNCLASSIFIED_SINGULAR
        return
    expected = bp.profile.multiplicities
    if result.cycle_type != expected:
        raise CertificationMismatch(
            f"cycle type {result.cycle_type} differs from intersection profile {expected}",
            branch_index=result.branch_index, permutation=one_line(result.permutation))
    result.certified = True
    result.status = "certified"


def loop_permutation(chart: PencilChart, loop: Loop, fiber: TrackedFiber,
                     opts: TrackOptions | None = None, bp: BranchPoint | None = None) -> LoopResult:
    end, steps, rejected = track(chart, loop.vertices, fiber, opts, loop.max_steps)
    # end[i] continues start[i]; so start i is carried to the start point nearest end[i]
    perm = match_fibers(fiber.points, end.points)
    res = LoopResult(loop.branch_index, perm, cycle_type(perm), steps, rejected, end.max_residual,
                     status="uncertified")
    if bp is not None:
        _certify(res, bp)
    return res


def _run(chart, branch, seed, opts):
    system = build_loops(branch, seed, opts)
    fiber = base_fiber(chart, system.base_t, opts)
    out = MonodromyResult(chart, branch, system)
    for loop in system.loops:
        out.results.append(loop_permutation(chart, loop, fiber, opts, branch[loop.branch_index]))
    big = loop_permutation(chart, system.big_circle, fiber, opts)
    out.big_permutation = big.permutation
    d = chart.d
    prod = compose([r.permutation for r in out.results], d) if out.results else tuple(range(d))
    inf_idx = next((i for i, bp in enumerate(branch) if bp.at_infinity), None)
    if inf_idx is not None:
        # the loop around t = inf, seen from the base, is the big circle reversed
        p_inf = inverse(big.permutation)
        r_inf = LoopResult(inf_idx, p_inf, cycle_type(p_inf), big.steps, big.retries,
                           big.max_residual, at_infinity=True, status="uncertified")
        _certify(r_inf, branch[inf_idx])
        out.results.append(r_inf)
        ok = prod == big.permutation and is_identity(compose(out.generators, d))
    else:
        ok = is_identity(prod) and is_identity(big.permutation)
    if not ok:
        raise ProductNotIdentity("product of loop permutations is not the identity",
                                 product=one_line(prod), big_circle=one_line(big.permutation))
    out.product_check = True
    return out


def monodromy_generators(chart: PencilChart, branch: list | None = None, seed: int = 0,
                         opts: TrackOptions | None = None, refine_retries: int = 1) -> MonodromyResult:
    """Generators of the monodromy group, one per branch point (including t = inf).

    A failed product or certification check is retried with halved step
    bounds before being reported; persistent failures are raised.
    """
    opts = opts or TrackOptions()
    if branch is None:
        branch = branch_points(chart, opts.cluster_tol)
    last = None
    for attempt in range(refine_retries + 1):
        o = TrackOptions(**{**opts.__dict__, "step_scale": opts.step_scale * 0.5 ** attempt})
        try:
            return _run(chart, branch, seed, o)
        except (ProductNotIdentity, CertificationMismatch, AmbiguousMatching,
                PathTrackingFailure) as exc:
            last = exc
    raise last


def loops_json(result: MonodromyResult):
    return [r.to_json() for r in result.results]
