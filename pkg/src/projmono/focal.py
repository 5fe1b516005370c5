"""Focal loci of n-parameter families of lines in P^(n+1).

A family is given either by n hyperplanes ``a_1(u), ..., a_n(u)`` cutting the
line ``l_u`` (hyperplane mode), or by a base point ``p(u)`` and direction
``q(u)`` (point-direction mode; hyperplanes through the line are then built
from 3x3 minors of ``[p, q]``).  All maps are polynomial in ``u``, so their
partial derivatives are exact.

On ``l_u`` parametrized as ``x(lam) = p + lam * q`` the foci are the zeros of

    det[ (d a_i / d u_k)(u) . x(lam) ]_{i,k}

a polynomial of degree at most n in ``lam``; a degree drop of ``k`` means a
focus of multiplicity ``k`` at ``q`` (``lam = inf``).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (ContractError, DegenerateChart, IdenticallyZeroDeterminant, NotTangent,
                     PointNotOnLines)
from .grammar import parse_family
from .poly import (DEFAULT_CLUSTER_TOL, MultiPoly, UniPoly, eval_poly, exact_roots_with_multiplicity,
                   interpolate, partial, restrict_line, roots_with_multiplicity)
from .scalars import QQi, is_exact, to_exact

FLOAT_RANK_TOL = 1e-9
ZERO_DET_TOL = 1e-12
ROOT_DPS = 60


def _is_exact_point(u):
    return all(is_exact(x) or isinstance(x, int) for x in u)


def _cross_covectors(p, q):
    """Covectors c_{ijk} with c . p = c . q = 0, one per coordinate triple."""
    N = len(p)
    out = []
    for i, j, k in itertools.combinations(range(N), 3):
        c = [None] * N
        zero = p[0] * 0
        for m in range(N):
            c[m] = zero
        c[i] = p[j] * q[k] - p[k] * q[j]
        c[j] = p[k] * q[i] - p[i] * q[k]
        c[k] = p[i] * q[j] - p[j] * q[i]
        out.append(((i, j, k), c))
    return out


class LineFamilyChart:
    """An n-parameter family of lines in P^(n+1) with polynomial charts."""

    def __init__(self, n, mode, a=None, p=None, q=None):
        self.n = int(n)
        self.mode = mode
        self.N = self.n + 2
        if mode == "hyperplane":
            if a is None or len(a) != self.n or any(len(v) != self.N for v in a):
                raise ContractError(f"hyperplane mode needs {self.n} covectors of length {self.N}")
            self.a = [list(v) for v in a]
            self.p = self.q = None
        elif mode == "point-direction":
            if p is None or q is None or len(p) != self.N or len(q) != self.N:
                raise ContractError(f"point-direction mode needs p, q of length {self.N}")
            self.p, self.q = list(p), list(q)
            self._cross = _cross_covectors(self.p, self.q)
            self.a = None
        else:
            raise ContractError(f"unknown family mode {mode!r}")
        for v in self._all_polys():
            if v.num_vars != self.n:
                raise ContractError("family maps must use exactly n parameters")

    @classmethod
    def from_text(cls, text):
        spec = parse_family(text)
        if spec["mode"] == "hyperplane":
            return cls(spec["n"], "hyperplane", a=spec["a"])
        return cls(spec["n"], "point-direction", p=spec["p"], q=spec["q"])

    def _all_polys(self):
        if self.mode == "hyperplane":
            return [x for v in self.a for x in v]
        return self.p + self.q

    def _check_u(self, u):
        if len(u) != self.n:
            raise ContractError(f"parameter sample has {len(u)} entries, expected {self.n}")
        return [to_exact(x) for x in u] if _is_exact_point(u) else [complex(x) for x in u]

    def point_direction(self, u):
        """(p, q) spanning l_u, exact when u is exact."""
        u = self._check_u(u)
        exact = _is_exact_point(u)
        if self.mode == "point-direction":
            p = [eval_poly(x, u) for x in self.p]
            q = [eval_poly(x, u) for x in self.q]
            if exact:
                if linalg.rank([p, q]) < 2:
                    raise DegenerateChart("p(u) and q(u) are dependent", u=[str(x) for x in u])
            elif np.linalg.svd(np.array([p, q], dtype=complex), compute_uv=False)[-1] <= \
                    FLOAT_RANK_TOL * max(np.abs(np.array([p, q], dtype=complex)).max(), 1e-300):
                raise DegenerateChart("p(u) and q(u) are numerically dependent")
            return p, q
        A = [[eval_poly(x, u) for x in v] for v in self.a]
        if exact:
            if linalg.rank(A) < self.n:
                raise DegenerateChart("hyperplanes are dependent at u", u=[str(x) for x in u])
            basis = linalg.nullspace(A, self.N)
            return basis[0], basis[1]
        M = np.array(A, dtype=complex)
        _, s, vh = np.linalg.svd(M)
        if s[-1] <= FLOAT_RANK_TOL * s[0]:
            raise DegenerateChart("hyperplanes are numerically dependent at u", singular_values=list(s))
        null = vh[self.n:].conj()
        return list(null[0]), list(null[1])

    def hyperplanes(self, u):
        """Polynomial covectors a_i (n of them) independent at u."""
        u = self._check_u(u)
        if self.mode == "hyperplane":
            return self.a
        exact = _is_exact_point(u)
        chosen, rows = [], []
        for key, cov in self._cross:
            val = [eval_poly(x, u) for x in cov]
            trial = rows + [val]
            if exact:
                ok = linalg.rank(trial) == len(trial)
            else:
                s = np.linalg.svd(np.array(trial, dtype=complex), compute_uv=False)
                ok = s[-1] > FLOAT_RANK_TOL * s[0]
            if ok:
                chosen.append(cov)
                rows = trial
            if len(chosen) == self.n:
                return chosen
        raise DegenerateChart("could not find n independent hyperplanes through l_u")

    def focal_matrix_rows(self, u):
        """Vectors J[i][k] = (d a_i / d u_k)(u) and the line basis (p, q)."""
        u = self._check_u(u)
        p, q = self.point_direction(u)
        covs = self.hyperplanes(u)
        J = [[[eval_poly(x, u) for x in dvec] for dvec in row] for row in self._jac_partials(covs)]
        return J, p, q

    def _jac_partials(self, covs):
        return [[[partial(x, k) for x in cov] for k in range(self.n)] for cov in covs]


@dataclass
class FocalSpectrum:
    focal_poly: UniPoly
    clusters: list
    degree_drop: int
    n: int
    p: list = field(repr=False, default=None)
    q: list = field(repr=False, default=None)

    @property
    def multiplicities(self):
        return sorted((c.multiplicity for c in self.clusters), reverse=True)

    def multiplicity_at(self, lam, tol=1e-6):
        """Total multiplicity of foci within ``tol * (1 + |lam|)`` of ``lam`` (None = infinity)."""
        if lam is None:
            return self.degree_drop
        return sum(c.multiplicity for c in self.clusters if abs(c.center - lam) <= tol * (1 + abs(lam)))

    def to_json(self):
        return {
            "n": self.n,
            "degree": self.focal_poly.degree(),
            "degree_drop": self.degree_drop,
            "coefficients": [[complex(c).real, complex(c).imag] for c in self.focal_poly.coeffs],
            "roots": [{"re": c.center.real, "im": c.center.imag, "multiplicity": c.multiplicity}
                      for c in self.clusters],
        }


def _dot(a, b):
    s = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        s = s + x * y
    return s


def focal_poly(fam: LineFamilyChart, u, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> FocalSpectrum:
    """Focal polynomial on the line l_u and its roots with multiplicities."""
    J, p, q = fam.focal_matrix_rows(u)
    n = fam.n
    exact = _is_exact_point(u) and all(is_exact(x) for x in p + q)
    A0 = [[_dot(J[i][k], p) for k in range(n)] for i in range(n)]
    A1 = [[_dot(J[i][k], q) for k in range(n)] for i in range(n)]
    if exact:
        xs = [QQi(j) for j in range(n + 1)]
        ys = [linalg.det([[A0[i][k] + x * A1[i][k] for k in range(n)] for i in range(n)]) for x in xs]
        g = interpolate(xs, ys)
        coeffs = list(g.coeffs) + [QQi(0)] * (n + 1 - len(g.coeffs))
        g = UniPoly(coeffs)
        if all(not c for c in coeffs):
            raise IdenticallyZeroDeterminant("focal determinant vanishes identically on l_u",
                                             u=[str(x) for x in u])
    else:
        M0 = np.array(A0, dtype=complex)
        M1 = np.array(A1, dtype=complex)
        omega = np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
        vals = np.array([np.linalg.det(M0 + w * M1) for w in omega])
        coeffs = np.fft.fft(vals) / (n + 1)
        scale = np.prod([max(np.abs(M0[i]).max(), np.abs(M1[i]).max(), 1e-300) for i in range(n)])
        coeffs[np.abs(coeffs) <= ZERO_DET_TOL * scale] = 0
        if not np.any(coeffs):
            raise IdenticallyZeroDeterminant("focal determinant is numerically zero on l_u")
        g = UniPoly(list(coeffs))
    deg = g.degree()
    if deg >= 1:
        clusters = exact_roots_with_multiplicity(g, ROOT_DPS) if exact else \
            roots_with_multiplicity(g, cluster_tol)
    else:
        clusters = []
    return FocalSpectrum(g, clusters, n - deg, n, p, q)


def lambda_of_point(p, q, z, tol=1e-9):
    """Return lam with z ~ p + lam q (None when z ~ q), or raise PointNotOnLines."""
    M = np.array([[complex(x) for x in p], [complex(x) for x in q]]).T
    zz = np.array([complex(x) for x in z])
    coef, *_ = np.linalg.lstsq(M, zz, rcond=None)
    resid = np.linalg.norm(M @ coef - zz) / max(np.linalg.norm(zz), 1e-300)
    if resid > tol:
        raise PointNotOnLines(f"point is not on the line (relative residual {resid:.3g})")
    alpha, beta = coef
    if abs(alpha) <= tol * abs(beta):
        return None
    return complex(beta / alpha)


def tangency_focus_check(fam: LineFamilyChart, f: MultiPoly, u, tangency_lambda=0,
                         tol: float = 1e-6, residual_tol: float = 1e-9) -> dict:
    """Check that the tangency point of l_u with {f = 0} is a focus.

    The line must touch X at ``x(tangency_lambda)``; when the contact order
    there is at least 2 (second derivative along the line also vanishes) the
    focal multiplicity must be at least 2.
    """
    p, q = fam.point_direction(u)
    lam = tangency_lambda
    P = [a + lam * b for a, b in zip(p, q)]
    g = restrict_line(f, P, q)
    cs = [complex(c) for c in g.coeffs] + [0j] * 3
    scale = max(f.max_norm() * np.linalg.norm([complex(x) for x in P]) ** f.degree(), 1e-300)
    qn = np.linalg.norm([complex(x) for x in q])
    r0 = abs(cs[0]) / scale
    r1 = abs(cs[1]) / (scale * qn / np.linalg.norm([complex(x) for x in P]))
    if r0 > residual_tol or r1 > residual_tol:
        raise NotTangent(f"line is not tangent at the given point (residuals {r0:.3g}, {r1:.3g})")
    r2 = abs(cs[2]) / (scale * (qn / np.linalg.norm([complex(x) for x in P])) ** 2)
    asymptotic = r2 <= residual_tol
    spec = focal_poly(fam, u)
    mult = spec.multiplicity_at(complex(lam), tol)
    need = 2 if asymptotic else 1
    return {"lambda": complex(lam), "asymptotic": bool(asymptotic), "multiplicity": mult,
            "required": need, "ok": mult >= need, "spectrum": spec}


def fundamental_multiplicity_check(fam: LineFamilyChart, Z, k: int, samples, tol: float = 1e-6):
    """At each sample u (lines through Z), Z must be a focus of multiplicity >= k."""
    rows = []
    for u in samples:
        p, q = fam.point_direction(u)
        lam = lambda_of_point(p, q, Z)
        if k == 0:
            rows.append({"u": [complex(x) for x in u], "lambda": lam, "multiplicity": None, "ok": True})
            continue
        spec = focal_poly(fam, u)
        mult = spec.multiplicity_at(lam, tol)
        rows.append({"u": [complex(x) for x in u], "lambda": lam, "multiplicity": mult, "ok": mult >= k})
    return {"k": k, "samples": rows, "ok": all(r["ok"] for r in rows)}


def order_of_family(fam: LineFamilyChart, z, seed: int = 0, starts: int = 40, maxiter: int = 80):
    """Heuristic count of family lines through z (multi-start Gauss-Newton).

    Solves ``c(u) . z = 0`` for every hyperplane covector through ``l_u``
    (all 3x3 minors of ``[p, q, z]`` in point-direction mode), discards
    solutions where the line degenerates, and deduplicates by Pluecker
    coordinates.  The result is a lower bound.
    """
    n = fam.n
    zz = [complex(x) for x in z]
    if fam.mode == "point-direction":
        eqs = [cov for _, cov in fam._cross]
    else:
        eqs = fam.a
    fs = []
    for cov in eqs:
        fs.append([x.to_float() if x.coeff_mode == "exact" else x for x in cov])
    dfs = [[[partial(x, j) for x in cov] for j in range(n)] for cov in fs]

    def F(u):
        return np.array([sum(eval_poly(x, u) * zi for x, zi in zip(cov, zz)) for cov in fs])

    def JF(u):
        return np.array([[sum(eval_poly(x, u) * zi for x, zi in zip(dcov, zz)) for dcov in row]
                         for row in dfs])

    rng = random.Random(seed)
    lines, converged, failed = [], 0, 0
    for _ in range(starts):
        u = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)])
        ok = False
        for _ in range(maxiter):
            r = F(list(u))
            J = JF(list(u))
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
            u = u + step
            if np.linalg.norm(step) <= 1e-12 * (1 + np.linalg.norm(u)):
                ok = True
                break
            if np.linalg.norm(u) > 1e8:
                break
        if not ok or np.linalg.norm(F(list(u))) > 1e-8 * (1 + np.linalg.norm(u)) ** 4:
            failed += 1
            continue
        try:
            p, q = fam.point_direction(list(u))
        except DegenerateChart:
            failed += 1
            continue
        converged += 1
        pl = _pluecker(p, q)
        if not any(np.linalg.norm(pl - m) < 1e-6 for m in lines):
            lines.append(pl)
    return {"count": len(lines), "converged": converged, "failed": failed, "starts": starts,
            "heuristic": True}


def _pluecker(p, q):
    p = np.array([complex(x) for x in p])
    q = np.array([complex(x) for x in q])
    v = np.array([p[i] * q[j] - p[j] * q[i] for i, j in itertools.combinations(range(len(p)), 2)])
    k = np.argmax(np.abs(v))
    v = v / v[k]
    return v
