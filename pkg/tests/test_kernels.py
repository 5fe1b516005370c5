import os
import subprocess
import sys

import numpy as np
import pytest

from projmono import kernels

BACKENDS = kernels.backends()


def random_poly(rng, d):
    return rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)


def test_compiled_backend_available():
    assert "cython" in BACKENDS, "the compiled extension did not build"
    forced = os.environ.get("PROJMONO_PURE_PYTHON", "") not in ("", "0")
    assert kernels.BACKEND == ("python" if forced else "cython")


def test_env_var_forces_fallback():
    out = subprocess.run([sys.executable, "-c", "import projmono.kernels as k; print(k.BACKEND)"],
                         env={**os.environ, "PROJMONO_PURE_PYTHON": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("seed", range(5))
def test_aberth_parity(seed):
    rng = np.random.default_rng(seed)
    c = random_poly(rng, 3 + seed)
    results = {}
    for name, mod in BACKENDS.items():
        z, it, ok = mod.aberth(c, mod.initial_guesses(c))
        assert ok
        results[name] = np.sort_complex(np.asarray(z))
        assert np.allclose([mod.horner(c, x)[0] for x in z], 0, atol=1e-9)
    ref = np.sort_complex(np.roots(c[::-1]))
    for z in results.values():
        assert np.allclose(z, ref, atol=1e-8)


def test_aberth_multiple_root():
    c = np.array([0, 0, 1, 0, 0, 0, 1], dtype=complex)  # lam^2 (1 + lam^4)
    for mod in BACKENDS.values():
        z, _, ok = mod.aberth(c, mod.initial_guesses(c))
        assert ok
        assert sum(abs(x) < 1e-6 for x in z) == 2


def test_track_segment_parity():
    rng = np.random.default_rng(11)
    C = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    C[:, -1] = 1.0   # monic in lambda for every t
    x0 = np.roots(kernels.fiber_coeffs(C, 0.1)[::-1])
    outs = {}
    for name, mod in BACKENDS.items():
        x, steps, rej, res, status, _ = mod.track_segment(C, 0.1, 0.1 + 0.5j, x0, 0.02)
        assert status == 0 and steps >= 25
        outs[name] = (np.asarray(x), steps, rej)
    if len(outs) == 2:
        (xa, sa, ra), (xb, sb, rb) = outs.values()
        assert (sa, ra) == (sb, rb)
        assert np.allclose(xa, xb, atol=1e-12)
    end = np.asarray(outs["python"][0])
    target = np.roots(kernels.fiber_coeffs(C, 0.1 + 0.5j)[::-1])
    assert all(np.abs(target - x).min() < 1e-8 for x in end)
