"""Pure-Python/numpy implementations of the hot kernels.

Semantics match ``_kernels.pyx`` exactly; the compiled module is preferred
when it is importable (see ``projmono.kernels``).
"""
import numpy as np

EPS = np.finfo(float).eps


def horner(coeffs, x):
    """Value and first derivative of sum(coeffs[k] * x**k)."""
    p = 0j
    dp = 0j
    for k in range(len(coeffs) - 1, -1, -1):
        dp = dp * x + p
        p = p * x + coeffs[k]
    return p, dp


def initial_guesses(coeffs):
    d = len(coeffs) - 1
    lead = coeffs[d]
    center = -coeffs[d - 1] / (d * lead)
    radius = 0.0
    for k in range(d):
        c = abs(coeffs[k] / lead)
        if c > 0:
            radius = max(radius, c ** (1.0 / (d - k)))
    if radius == 0.0:
        radius = 1.0
    ang = 2 * np.pi * np.arange(d) / d + 0.4
    return center + radius * np.exp(1j * ang)


def aberth(coeffs, roots, maxiter=200, tol=1e-13):
    """Simultaneous Aberth-Ehrlich iteration.

    Returns ``(roots, iterations, converged)``.  A root stops moving once its
    update is below ``tol * (1 + |z|)`` or its residual is at rounding level
    (``|p(z)| <= 8 eps sum |c_k| |z|^k``), which is what multiple roots reach
    in double precision.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    absc = np.abs(coeffs)
    z = np.array(roots, dtype=complex)
    d = len(z)
    for it in range(1, maxiter + 1):
        done = True
        for i in range(d):
            p, dp = horner(coeffs, z[i])
            if p == 0:
                continue
            az = abs(z[i])
            mag = 0.0
            for k in range(len(coeffs) - 1, -1, -1):
                mag = mag * az + absc[k]
            if abs(p) <= 8 * EPS * mag:
                continue
            s = 0j
            for j in range(d):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            den = dp - p * s
            if den == 0:
                w = 1e-8 * (1 + az)
            else:
                w = p / den
            z[i] -= w
            if abs(w) >= tol * (1 + abs(z[i])):
                done = False
        if done:
            return z, it, True
    return z, maxiter, False


def fiber_coeffs(C, t):
    """Row j of C multiplies t**j; returns coefficients in lambda, low first."""
    C = np.asarray(C)
    out = C[-1].astype(complex)
    for j in range(C.shape[0] - 2, -1, -1):
        out = out * t + C[j]
    return out


def _residual_bounds(coeffs, y, res_rel):
    ay = np.abs(y)
    absc = np.abs(coeffs)
    norm = absc.max()
    mag = np.zeros_like(ay)
    for k in range(len(coeffs) - 1, -1, -1):
        mag = mag * ay + absc[k]
    return np.maximum(res_rel * (1 + ay) * norm, 64 * EPS * mag)


def _min_separation(x):
    diff = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(diff, np.inf)
    return diff.min()


def newton_correct(coeffs, x, res_rel, max_newton, move_frac, minsep):
    """Newton-correct every root of a fiber.  Returns (y, ok, max_residual)."""
    y = x.copy()
    d = len(y)
    maxres = 0.0
    for i in range(d):
        yi = y[i]
        prev = np.inf
        ok = False
        for it in range(max_newton + 1):
            p, dp = horner(coeffs, yi)
            bound = _residual_bounds(coeffs, np.array([yi]), res_rel)[0]
            if abs(p) <= bound:
                ok = True
                maxres = max(maxres, abs(p) / (np.abs(coeffs).max() * (1 + abs(yi))))
                break
            if it == max_newton or dp == 0:
                break
            step = p / dp
            if abs(step) > 0.5 * prev:
                break
            prev = abs(step)
            yi = yi - step
        if not ok or abs(yi - x[i]) >= move_frac * minsep:
            return y, False, maxres
        y[i] = yi
    return y, True, maxres


def track_segment(C, t0, t1, roots, max_step, res_rel=1e-10, min_step=1e-12,
                  max_newton=5, move_frac=0.3):
    """Continue the fiber from t0 to t1 along the straight segment.

    Returns ``(roots, steps, rejected, max_residual, status, s_fail)`` with
    status 0 on success and 1 when the step size fell below ``min_step``.
    """
    C = np.asarray(C, dtype=complex)
    x = np.array(roots, dtype=complex)
    length = abs(t1 - t0)
    steps = rejected = 0
    maxres = 0.0
    if length == 0:
        return x, 0, 0, 0.0, 0, 0.0
    direction = (t1 - t0) / length
    s = 0.0
    h = min(max_step, length)
    while s < length:
        h = min(h, length - s)
        s_new = length if length - s - h <= 1e-15 * length else s + h
        t = t0 + s_new * direction
        coeffs = fiber_coeffs(C, t)
        minsep = _min_separation(x)
        y, ok, res = newton_correct(coeffs, x, res_rel, max_newton, move_frac, minsep)
        if ok:
            x = y
            s = s_new
            steps += 1
            maxres = max(maxres, res)
            h = min(2 * h, max_step)
        else:
            rejected += 1
            h *= 0.5
            if h < min_step:
                return x, steps, rejected, maxres, 1, s
    return x, steps, rejected, maxres, 0, length
