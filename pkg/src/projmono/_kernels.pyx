# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Horner evaluation, Aberth iteration, fiber tracking.

Mirror of ``_kernels_py``; both must stay semantically identical.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, pow, cos, sin, M_PI, INFINITY

cnp.import_array()

cdef double EPS = 2.220446049250313e-16

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef inline void _horner(const double complex[:] c, double complex x,
                         double complex* p, double complex* dp) noexcept nogil:
    cdef Py_ssize_t k
    cdef double complex pv = 0, dv = 0
    for k in range(c.shape[0] - 1, -1, -1):
        dv = dv * x + pv
        pv = pv * x + c[k]
    p[0] = pv
    dp[0] = dv


def horner(coeffs, x):
    """Value and first derivative of sum(coeffs[k] * x**k)."""
    cdef double complex[:] c = np.ascontiguousarray(coeffs, dtype=complex)
    cdef double complex p, dp
    _horner(c, x, &p, &dp)
    return complex(p), complex(dp)


def initial_guesses(coeffs):
    cdef double complex[:] c = np.ascontiguousarray(coeffs, dtype=complex)
    cdef Py_ssize_t d = c.shape[0] - 1, k
    cdef double complex lead = c[d]
    cdef double complex center = -c[d - 1] / (d * lead)
    cdef double radius = 0.0, a
    for k in range(d):
        a = cabs(c[k] / lead)
        if a > 0:
            a = pow(a, 1.0 / (d - k))
            if a > radius:
                radius = a
    if radius == 0.0:
        radius = 1.0
    ang = 2 * np.pi * np.arange(d) / d + 0.4
    return center + radius * np.exp(1j * ang)


def aberth(coeffs, roots, int maxiter=200, double tol=1e-13):
    """Simultaneous Aberth-Ehrlich iteration; returns (roots, iterations, converged).

    A root stops moving once its update is below ``tol * (1 + |z|)`` or its
    residual is at rounding level (``|p(z)| <= 8 eps sum |c_k| |z|^k``), which
    is what multiple roots reach in double precision.
    """
    cdef double complex[:] c = np.ascontiguousarray(coeffs, dtype=complex)
    z_arr = np.array(roots, dtype=complex)
    cdef double complex[:] z = z_arr
    cdef Py_ssize_t d = z.shape[0], i, j, k
    cdef int it
    cdef bint done
    cdef double complex p, dp, s, diff, den, w
    cdef double az, mag
    for it in range(1, maxiter + 1):
        done = True
        for i in range(d):
            _horner(c, z[i], &p, &dp)
            if p == 0:
                continue
            az = cabs(z[i])
            mag = 0.0
            for k in range(c.shape[0] - 1, -1, -1):
                mag = mag * az + cabs(c[k])
            if cabs(p) <= 8 * EPS * mag:
                continue
            s = 0
            for j in range(d):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s = s + 1.0 / diff
            den = dp - p * s
            if den == 0:
                w = 1e-8 * (1 + az)
            else:
                w = p / den
            z[i] = z[i] - w
            if cabs(w) >= tol * (1 + cabs(z[i])):
                done = False
        if done:
            return z_arr, it, True
    return z_arr, maxiter, False


cdef void _fiber_coeffs(const double complex[:, :] C, double complex t,
                        double complex[:] out) noexcept nogil:
    cdef Py_ssize_t nj = C.shape[0], nk = C.shape[1], j, k
    for k in range(nk):
        out[k] = C[nj - 1, k]
    for j in range(nj - 2, -1, -1):
        for k in range(nk):
            out[k] = out[k] * t + C[j, k]


def fiber_coeffs(C, t):
    """Row j of C multiplies t**j; returns coefficients in lambda, low first."""
    cdef double complex[:, :] Cv = np.ascontiguousarray(C, dtype=complex)
    out = np.empty(Cv.shape[1], dtype=complex)
    _fiber_coeffs(Cv, t, out)
    return out


cdef inline double _bound(const double complex[:] c, double complex y, double res_rel,
                          double norm) noexcept nogil:
    cdef double ay = cabs(y), mag = 0.0, b1, b2
    cdef Py_ssize_t k
    for k in range(c.shape[0] - 1, -1, -1):
        mag = mag * ay + cabs(c[k])
    b1 = res_rel * (1 + ay) * norm
    b2 = 64 * EPS * mag
    return b1 if b1 > b2 else b2


cdef double _min_sep(double complex[:] x) noexcept nogil:
    cdef Py_ssize_t n = x.shape[0], i, j
    cdef double m = INFINITY, a
    for i in range(n):
        for j in range(i + 1, n):
            a = cabs(x[i] - x[j])
            if a < m:
                m = a
    return m


cdef bint _correct(const double complex[:] c, double complex[:] x, double complex[:] y,
                   double res_rel, int max_newton, double move_frac, double minsep,
                   double* maxres) noexcept nogil:
    cdef Py_ssize_t d = x.shape[0], i, k
    cdef int it
    cdef double norm = 0.0, prev, a, bnd
    cdef double complex yi, p, dp, step
    cdef bint ok
    for k in range(c.shape[0]):
        a = cabs(c[k])
        if a > norm:
            norm = a
    maxres[0] = 0.0
    for i in range(d):
        yi = x[i]
        prev = INFINITY
        ok = False
        for it in range(max_newton + 1):
            _horner(c, yi, &p, &dp)
            bnd = _bound(c, yi, res_rel, norm)
            if cabs(p) <= bnd:
                ok = True
                a = cabs(p) / (norm * (1 + cabs(yi)))
                if a > maxres[0]:
                    maxres[0] = a
                break
            if it == max_newton or dp == 0:
                break
            step = p / dp
            if cabs(step) > 0.5 * prev:
                break
            prev = cabs(step)
            yi = yi - step
        if not ok or cabs(yi - x[i]) >= move_frac * minsep:
            return False
        y[i] = yi
    return True


def newton_correct(coeffs, x, double res_rel, int max_newton, double move_frac, double minsep):
    """Newton-correct every root of a fiber.  Returns (y, ok, max_residual)."""
    cdef double complex[:] c = np.ascontiguousarray(coeffs, dtype=complex)
    xa = np.array(x, dtype=complex)
    ya = xa.copy()
    cdef double res = 0.0
    ok = _correct(c, xa, ya, res_rel, max_newton, move_frac, minsep, &res)
    return ya, bool(ok), res


def track_segment(C, double complex t0, double complex t1, roots, double max_step,
                  double res_rel=1e-10, double min_step=1e-12, int max_newton=5,
                  double move_frac=0.3):
    """Continue the fiber from t0 to t1 along the straight segment.

    Returns ``(roots, steps, rejected, max_residual, status, s_fail)``.
    """
    cdef double complex[:, :] Cv = np.ascontiguousarray(C, dtype=complex)
    xa = np.array(roots, dtype=complex)
    ya = xa.copy()
    ca = np.empty(Cv.shape[1], dtype=complex)
    cdef double complex[:] x = xa, y = ya, c = ca
    cdef double length = cabs(t1 - t0), s = 0.0, h, s_new, res, maxres = 0.0, minsep
    cdef Py_ssize_t d = x.shape[0], i
    cdef int steps = 0, rejected = 0
    cdef double complex direction, t
    if length == 0:
        return xa, 0, 0, 0.0, 0, 0.0
    direction = (t1 - t0) / length
    h = max_step if max_step < length else length
    with nogil:
        while s < length:
            if h > length - s:
                h = length - s
            if length - s - h <= 1e-15 * length:
                s_new = length
            else:
                s_new = s + h
            t = t0 + s_new * direction
            _fiber_coeffs(Cv, t, c)
            minsep = _min_sep(x)
            if _correct(c, x, y, res_rel, max_newton, move_frac, minsep, &res):
                for i in range(d):
                    x[i] = y[i]
                s = s_new
                steps += 1
                if res > maxres:
                    maxres = res
                h = 2 * h
                if h > max_step:
                    h = max_step
            else:
                rejected += 1
                h *= 0.5
                if h < min_step:
                    break
    if s < length:
        return xa, steps, rejected, maxres, 1, s
    return xa, steps, rejected, maxres, 0, length
