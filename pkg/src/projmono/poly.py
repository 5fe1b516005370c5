"""Sparse multivariate forms, dense univariate polynomials, roots and resultants.

Coefficients live in one of two modes:

* ``"exact"`` -- every coefficient is a :class:`~projmono.scalars.QQi`;
  evaluation at exact points, derivatives, substitutions and resultants
  are exact.
* ``"float"`` -- Python complex coefficients.

Mode changes only through :meth:`MultiPoly.to_float` / :meth:`MultiPoly.to_exact`
(and the UniPoly equivalents).  Mixed input collapses to float.

Resultant sign convention: ``resultant(g, h)`` is the determinant of the
Sylvester matrix with the ``deg h`` shifted rows of ``g`` first, then the
``deg g`` shifted rows of ``h``, coefficients written highest degree first.
With this convention ``resultant(x - a, x - b) == a - b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Rational

import mpmath
import numpy as np

from . import kernels, linalg
from .errors import ContractError, DimensionMismatch, NonConvergence
from .scalars import QQi, to_exact, to_mpc

DEFAULT_CLUSTER_TOL = 1e-8
DERIV_THRESHOLD = 1e-6
ABERTH_MAXITER = 200
ABERTH_TOL = 1e-13


def _coerce(c):
    if isinstance(c, QQi):
        return c
    if isinstance(c, Rational):
        return QQi(c)
    if isinstance(c, (float, complex)):
        return complex(c)
    if isinstance(c, (mpmath.mpf, mpmath.mpc)):
        return complex(c)
    if isinstance(c, np.number):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_zero(c):
    return not c


def _mode_of(values):
    return "exact" if all(isinstance(v, QQi) for v in values) else "float"


def _unify(values):
    """Coerce a sequence of scalars to one mode (exact if all exact)."""
    vals = [_coerce(v) for v in values]
    if _mode_of(vals) == "exact":
        return vals
    return [complex(v) for v in vals]


# --------------------------------------------------------------------------- MultiPoly


class MultiPoly:
    """Sparse polynomial in ``num_vars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms=None):
        self.num_vars = int(num_vars)
        clean = {}
        if terms:
            items = list(terms.items())
            coeffs = _unify([c for _, c in items])
            for (exp, _), c in zip(items, coeffs):
                exp = tuple(int(e) for e in exp)
                if len(exp) != self.num_vars:
                    raise DimensionMismatch(
                        f"exponent {exp} has length {len(exp)}, expected {self.num_vars}")
                if any(e < 0 for e in exp):
                    raise ContractError(f"negative exponent in {exp}")
                if exp in clean:
                    c = clean[exp] + c
                if _is_zero(c):
                    clean.pop(exp, None)
                else:
                    clean[exp] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def const(cls, c, num_vars):
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def var(cls, i, num_vars, coeff=1):
        exp = [0] * num_vars
        exp[i] = 1
        return cls(num_vars, {tuple(exp): coeff})

    @classmethod
    def linear(cls, coeffs, const=0):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        terms[(0,) * n] = const
        return cls(n, terms)

    # -- structure
    @property
    def coeff_mode(self) -> str:
        return _mode_of(self.terms.values())

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def max_norm(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def to_float(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: complex(c) for e, c in self.terms.items()})

    def to_exact(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: to_exact(c) for e, c in self.terms.items()})

    def used_vars(self):
        return sorted({i for e in self.terms for i, k in enumerate(e) if k})

    # -- arithmetic
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise DimensionMismatch("polynomials in different numbers of variables")
            return other
        return MultiPoly.const(other, self.num_vars)

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ContractError("negative power of a polynomial")
        result = MultiPoly.const(1, self.num_vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and (self - other).is_zero()

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.num_vars}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _exact_point(point):
    return all(isinstance(x, (QQi, Rational)) for x in point)


def eval_poly(p: MultiPoly, point):
    """Value of ``p`` at ``point``; exact when both are exact."""
    if len(point) != p.num_vars:
        raise DimensionMismatch(f"point has length {len(point)}, polynomial has {p.num_vars} variables")
    if p.coeff_mode == "exact" and _exact_point(point):
        pt = [to_exact(x) for x in point]
        total = QQi(0)
    else:
        pt = [complex(x) if not isinstance(x, (mpmath.mpc, mpmath.mpf)) else x for x in point]
        total = 0j if not any(isinstance(x, (mpmath.mpc, mpmath.mpf)) for x in pt) else mpmath.mpc(0)
    for exp, c in p.terms.items():
        term = c if not isinstance(total, mpmath.mpc) else to_mpc(c)
        for x, k in zip(pt, exp):
            if k:
                term = term * x ** k
        total = total + term
    return total


def partial(p: MultiPoly, var: int) -> MultiPoly:
    if not 0 <= var < p.num_vars:
        raise ContractError(f"variable index {var} out of range for {p.num_vars} variables")
    terms = {}
    for e, c in p.terms.items():
        k = e[var]
        if k:
            ne = list(e)
            ne[var] = k - 1
            terms[tuple(ne)] = c * k
    return MultiPoly(p.num_vars, terms)


def directional_derivative(p: MultiPoly, v) -> MultiPoly:
    out = MultiPoly(p.num_vars)
    for i, vi in enumerate(v):
        if vi:
            out = out + partial(p, i) * vi
    return out


def gradient(p: MultiPoly):
    return [partial(p, i) for i in range(p.num_vars)]


def substitute_linear(p: MultiPoly, images) -> MultiPoly:
    """Compose ``p`` with the affine map sending ``x_j`` to ``images[j]`` (MultiPolys)."""
    if len(images) != p.num_vars:
        raise DimensionMismatch("one image per variable required")
    m = images[0].num_vars
    cache = {}

    def power(j, k):
        key = (j, k)
        if key not in cache:
            cache[key] = images[j] if k == 1 else power(j, k - 1) * images[j]
        return cache[key]

    out = MultiPoly(m)
    for exp, c in p.terms.items():
        term = MultiPoly.const(c, m)
        for j, k in enumerate(exp):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


def restrict_line(p: MultiPoly, base, direction) -> "UniPoly":
    """g(lam) = p(base + lam * direction)."""
    if len(base) != p.num_vars or len(direction) != p.num_vars:
        raise DimensionMismatch("base and direction must have one entry per variable")
    if not any(complex(x) != 0 for x in direction):
        raise ContractError("zero direction")
    images = [MultiPoly(1, {(0,): b, (1,): v}) for b, v in zip(base, direction)]
    q = substitute_linear(p, images)
    d = max(q.degree(), 0)
    return UniPoly([q.terms.get((k,), 0) for k in range(d + 1)])


def _independent(vectors) -> bool:
    if all(_exact_point(v) for v in vectors):
        return linalg.rank(vectors) == len(vectors)
    a = np.array([[complex(x) for x in v] for v in vectors])
    s = np.linalg.svd(a, compute_uv=False)
    return s[-1] > 1e-12 * s[0]


def restrict_plane(p: MultiPoly, frame) -> MultiPoly:
    """q(s0, s1, s2) = p(s0*v0 + s1*v1 + s2*v2) for a frame of independent vectors."""
    frame = list(frame)
    if len(frame) != 3 or any(len(v) != p.num_vars for v in frame):
        raise DimensionMismatch("frame must be three vectors of length num_vars")
    if not _independent(frame):
        raise ContractError("dependent frame")
    return substitute_frame(p, frame)


def substitute_frame(p: MultiPoly, columns) -> MultiPoly:
    """p(sum_i s_i * columns[i]) as a polynomial in len(columns) variables."""
    m = len(columns)
    images = [MultiPoly(m, {tuple(1 if i == k else 0 for i in range(m)): columns[k][j]
                            for k in range(m)}) for j in range(p.num_vars)]
    return substitute_linear(p, images)


# --------------------------------------------------------------------------- text grammar


def _fmt_coeff(c) -> str:
    if isinstance(c, QQi):
        def fr(q):
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if c.im == 0:
            return fr(c.re)
        if c.re == 0:
            return f"{fr(c.im)}i" if c.im.denominator == 1 else f"({fr(c.im)})*i"
        im = abs(c.im)
        sign = "+" if c.im > 0 else "-"
        ims = f"{fr(im)}i" if im.denominator == 1 else f"({fr(im)})*i"
        return f"({fr(c.re)}{sign}{ims})"
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i)"


def to_text(p: MultiPoly, names=None) -> str:
    """Serialize in the input grammar (``3*x0^2*x1 - (1+2i)*x2^4``)."""
    if names is None:
        names = [f"x{i}" for i in range(p.num_vars)]
    if not p.terms:
        return "0"
    parts = []
    for exp in sorted(p.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
        c = p.terms[exp]
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exp) if k)
        cs = _fmt_coeff(c)
        neg = cs.startswith("-") and not cs.startswith("(")
        if neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# --------------------------------------------------------------------------- UniPoly


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first.

    Exact trailing zeros are trimmed; the zero polynomial has ``coeffs == []``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        if any(isinstance(c, (mpmath.mpc, mpmath.mpf)) for c in cs):
            cs = [to_mpc(c) for c in cs]
        else:
            cs = _unify(cs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @property
    def coeff_mode(self) -> str:
        if self.coeffs and isinstance(self.coeffs[0], mpmath.mpc):
            return "mp"
        return _mode_of(self.coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self, k: int = 1) -> "UniPoly":
        cs = self.coeffs
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return UniPoly(cs)

    def max_norm(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def to_float(self) -> "UniPoly":
        return UniPoly([complex(c) for c in self.coeffs])

    def to_exact(self) -> "UniPoly":
        return UniPoly([to_exact(c) for c in self.coeffs])

    def to_mp(self) -> "UniPoly":
        return UniPoly([to_mpc(c) for c in self.coeffs])

    def __add__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"UniPoly({self.coeffs!r})"

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        lead = other.leading()
        if len(rem) - 1 < dq:
            return UniPoly([]), UniPoly(rem)
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] = rem[k - dq + j] - c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def monic(self) -> "UniPoly":
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs])

    def taylor(self, c):
        """Taylor coefficients at ``c``: entry k is g^(k)(c) / k!."""
        b = list(self.coeffs)
        n = len(b)
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                b[k] = b[k] + c * b[k + 1]
        return b


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; intended for exact polynomials."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
        if not b.is_zero() and b.coeff_mode == "exact":
            b = b.monic()
    return a.monic() if not a.is_zero() else a


def squarefree_part(a: UniPoly) -> UniPoly:
    g = poly_gcd(a, a.deriv())
    return a.divmod(g)[0].monic()


def interpolate(xs, ys) -> UniPoly:
    """Newton divided-difference interpolation; exact for exact data."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * UniPoly([-xs[i], 1]) + UniPoly([coef[i]])
    return out


# --------------------------------------------------------------------------- roots


@dataclass
class RootCluster:
    center: complex
    multiplicity: int
    radius: float
    confirmed: bool = True
    center_mp: object = field(default=None, repr=False, compare=False)


def _aberth_mp(coeffs, roots, maxiter, tol):
    """Aberth iteration in mpmath at the current working precision.

    Roots whose residual reaches rounding level stop moving (multiple roots).
    """
    d = len(roots)
    z = list(roots)
    absc = [abs(c) for c in coeffs]
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec)
    for it in range(1, maxiter + 1):
        done = True
        for i in range(d):
            p = mpmath.mpc(0)
            dp = mpmath.mpc(0)
            for c in reversed(coeffs):
                dp = dp * z[i] + p
                p = p * z[i] + c
            if p == 0:
                continue
            az = abs(z[i])
            mag = mpmath.mpf(0)
            for a in reversed(absc):
                mag = mag * az + a
            if abs(p) <= 8 * eps * mag:
                continue
            s = mpmath.mpc(0)
            for j in range(d):
                if j != i and z[i] != z[j]:
                    s += 1 / (z[i] - z[j])
            den = dp - p * s
            w = p / den if den != 0 else mpmath.mpf(10) ** -8 * (1 + abs(z[i]))
            z[i] -= w
            if abs(w) >= tol * (1 + abs(z[i])):
                done = False
        if done:
            return z, it, True
    return z, maxiter, False


def raw_roots(g: UniPoly, dps=None, maxiter=None):
    """All roots of ``g`` (with repetition), double or ``dps``-digit precision."""
    d = g.degree()
    if d < 1:
        raise ContractError("roots of a constant polynomial")
    if dps is None:
        c = g.to_numpy()
        z0 = kernels.initial_guesses(c)
        z, it, ok = kernels.aberth(c, z0, maxiter or ABERTH_MAXITER, ABERTH_TOL)
        if not ok:
            res = [abs(g(complex(x))) for x in z]
            raise NonConvergence("Aberth iteration did not converge", residuals=res, iterations=it)
        return [complex(x) for x in z]
    with mpmath.workdps(dps):
        cs = [to_mpc(c) for c in g.coeffs]
        z0 = kernels.initial_guesses(np.array([complex(c) for c in cs]))
        z, it, ok = _aberth_mp(cs, [mpmath.mpc(x) for x in z0], maxiter or 4 * dps + 200,
                               mpmath.mpf(10) ** (-(dps // 3)))
        if not ok:
            res = [float(abs(UniPoly(cs)(x))) for x in z]
            raise NonConvergence("extended-precision Aberth did not converge",
                                 residuals=res, iterations=it)
        return z


def _cluster_indices(roots, scale):
    n = len(roots)
    assigned = [False] * n
    groups = []
    for i in range(n):
        if assigned[i]:
            continue
        assigned[i] = True
        group = [i]
        k = 0
        while k < len(group):
            a = roots[group[k]]
            for j in range(n):
                if not assigned[j] and abs(roots[j] - a) <= scale:
                    assigned[j] = True
                    group.append(j)
            k += 1
        groups.append(group)
    return groups


def _confirmed_multiplicity(g: UniPoly, center, norm):
    tay = g.taylor(center)
    for k in range(1, len(tay)):
        if abs(tay[k]) > DERIV_THRESHOLD * norm:
            return k
    return len(tay) - 1


def roots_with_multiplicity(g: UniPoly, cluster_tol: float = DEFAULT_CLUSTER_TOL, dps=None):
    """Roots of ``g`` grouped into clusters with multiplicities.

    Roots come from simultaneous (Aberth) iteration, in double precision or at
    ``dps`` digits.  Roots closer than ``cluster_tol * (1 + max|root|)`` are
    grouped; the group size is checked against the smallest ``k >= 1`` with
    ``|g^(k)(center)| / k! > 1e-6 * ||g||``.  When the derivative test reports
    a larger multiplicity than the group size, nearest groups are merged while
    that improves agreement.  Multiplicities always sum to ``deg g``.
    """
    d = g.degree()
    if d < 1:
        raise ContractError("degree-0 input has no roots")
    roots = raw_roots(g, dps)
    if dps is None:
        num = [complex(r) for r in roots]
        ctx_g = g.to_float()
    else:
        num = roots
        with mpmath.workdps(dps):
            ctx_g = g.to_mp()
    scale = cluster_tol * (1 + max(abs(complex(r)) for r in roots))

    def run():
        groups = _cluster_indices(num, scale)
        norm = g.max_norm()
        out = []
        for grp in groups:
            pts = [num[i] for i in grp]
            center = sum(pts) / len(pts)
            out.append([grp, center])
        # merge pass driven by the derivative test
        changed = True
        while changed:
            changed = False
            for entry in out:
                grp, center = entry
                k = _test(center, norm)
                if k > len(grp) and len(out) > 1:
                    others = [e for e in out if e is not entry]
                    nearest = min(others, key=lambda e: abs(e[1] - center))
                    if abs(nearest[1] - center) <= 1e-3 * (1 + abs(center)):
                        merged = grp + nearest[0]
                        entry[0] = merged
                        entry[1] = sum(num[i] for i in merged) / len(merged)
                        out.remove(nearest)
                        changed = True
                        break
        return out, norm

    def _test(center, norm):
        if dps is None:
            return _confirmed_multiplicity(ctx_g, complex(center), norm)
        with mpmath.workdps(dps):
            return _confirmed_multiplicity(ctx_g, center, norm)

    if dps is None:
        groups, norm = run()
    else:
        with mpmath.workdps(dps):
            groups, norm = run()

    clusters = []
    for grp, center in groups:
        k = _test(center, norm)
        c = complex(center)
        radius = max(abs(complex(num[i]) - c) for i in grp)
        clusters.append(RootCluster(c, len(grp), float(radius), k == len(grp),
                                    center if dps is not None else None))
    clusters.sort(key=lambda cl: (-cl.multiplicity, cl.center.real, cl.center.imag))
    return clusters


def squarefree_decomposition(D: UniPoly):
    """Square-free decomposition D = c * prod_k A_k^k (Yun); returns {k: A_k}."""
    out = {}
    a = D.monic()
    b = a.deriv()
    c = poly_gcd(a, b)
    w = a.divmod(c)[0]
    y = b.divmod(c)[0]
    z = y - w.deriv()
    k = 1
    while w.degree() > 0:
        g = poly_gcd(w, z)
        if g.degree() > 0:
            out[k] = g
        w = w.divmod(g)[0]
        y = z.divmod(g)[0]
        z = y - w.deriv()
        k += 1
    return out


def refine_root(A: UniPoly, z0: complex, dps: int):
    """Newton-polish a root of ``A`` to about ``dps`` digits (mpmath)."""
    with mpmath.workdps(dps + 10):
        cs = [to_mpc(c) for c in A.coeffs]
        dcs = [c * i for i, c in enumerate(cs)][1:]
        z = mpmath.mpc(z0)
        tol = mpmath.mpf(10) ** (-dps)
        for _ in range(200):
            p = mpmath.polyval(cs[::-1], z)
            dp = mpmath.polyval(dcs[::-1], z)
            if dp == 0:
                break
            step = p / dp
            z -= step
            if abs(step) <= tol * (1 + abs(z)):
                break
        return z


def exact_roots_with_multiplicity(g: UniPoly, dps: int = 60):
    """Clusters of an exact polynomial with multiplicities from its square-free decomposition."""
    if g.coeff_mode != "exact":
        raise ContractError("exact multiplicities need exact coefficients")
    if g.degree() < 1:
        raise ContractError("degree-0 input has no roots")
    clusters = []
    for k, A in sorted(squarefree_decomposition(g).items()):
        for z in raw_roots(A):
            zm = refine_root(A, z, dps)
            clusters.append(RootCluster(complex(zm), k, 0.0, True, zm))
    clusters.sort(key=lambda cl: (-cl.multiplicity, cl.center.real, cl.center.imag))
    return clusters


# --------------------------------------------------------------------------- resultants


def sylvester_matrix(g: UniPoly, h: UniPoly):
    m, n = g.degree(), h.degree()
    size = m + n
    gc = list(reversed(g.coeffs))
    hc = list(reversed(h.coeffs))
    zero = QQi(0) if g.coeff_mode == "exact" and h.coeff_mode == "exact" else 0j
    rows = []
    for i in range(n):
        rows.append([zero] * i + gc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + hc + [zero] * (size - n - 1 - i))
    return rows


def resultant(g: UniPoly, h: UniPoly):
    """Sylvester resultant (g rows first).  Exact when both inputs are exact."""
    if g.is_zero() or h.is_zero():
        raise ContractError("resultant of a zero polynomial")
    if g.degree() < 1 or h.degree() < 1:
        raise ContractError("resultant needs both degrees >= 1")
    if g.coeff_mode == "exact" and h.coeff_mode == "exact":
        return linalg.det(sylvester_matrix(g, h))
    gf, hf = g.to_float(), h.to_float()
    ng, nh = gf.max_norm(), hf.max_norm()
    gs = UniPoly([c / ng for c in gf.coeffs])
    hs = UniPoly([c / nh for c in hf.coeffs])
    a = np.array(sylvester_matrix(gs, hs), dtype=complex)
    return complex(np.linalg.det(a)) * ng ** h.degree() * nh ** g.degree()


def discriminant_like(g: UniPoly):
    """Res(g, g'), the (unnormalized) discriminant used for branch detection."""
    return resultant(g, g.deriv())
