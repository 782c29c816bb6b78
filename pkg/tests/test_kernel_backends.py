import random
from fractions import Fraction

import pytest

from tyang import _kernel
from tyang._kernel import pure

try:
    from tyang._kernel import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled kernel not built")


def rand_fraction(rng):
    return Fraction(rng.randint(-40, 40), rng.randint(1, 23))


def rand_poly(rng, maxdeg=8, nonzero=False):
    out = [rand_fraction(rng) for _ in range(rng.randint(1 if nonzero else 0, maxdeg))]
    while out and not out[-1]:
        out.pop()
    if nonzero and not out:
        out = [Fraction(1)]
    return out


class TestBackendSelection:
    def test_backend_reported(self):
        assert _kernel.BACKEND in ("c", "pure")

    def test_pure_env_forces_fallback(self, tmp_path):
        import os
        import subprocess
        import sys

        src = tmp_path / "probe.py"
        src.write_text(
            "import sys\n"
            f"sys.path.insert(0, {str(tmp_path.parent)!r})\n"
            "from tyang import _kernel\n"
            "print(_kernel.BACKEND)\n"
        )
        env = dict(os.environ, TYANG_PURE="1")
        here = os.path.join(os.path.dirname(__file__), "..", "src")
        env["PYTHONPATH"] = here
        proc = subprocess.run(
            [sys.executable, "-c", "from tyang import _kernel; print(_kernel.BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.stdout.strip() == "pure"


@needs_ext
class TestBackendsAgree:
    def test_poly_ops(self):
        rng = random.Random(99)
        for _ in range(200):
            a = rand_poly(rng)
            b = rand_poly(rng, nonzero=True)
            assert pure.poly_mul(a, b) == _speedups.poly_mul(a, b)
            assert pure.poly_divmod(a, b) == _speedups.poly_divmod(a, b)
            assert pure.poly_gcd(a, b) == _speedups.poly_gcd(a, b)
            x = rand_fraction(rng)
            assert pure.poly_eval(a, x) == _speedups.poly_eval(a, x)

    def test_shared_factor_gcd(self):
        rng = random.Random(7)
        for _ in range(50):
            g = rand_poly(rng, 4, nonzero=True)
            a = pure.poly_mul(g, rand_poly(rng, 4, nonzero=True))
            b = pure.poly_mul(g, rand_poly(rng, 4, nonzero=True))
            assert pure.poly_gcd(a, b) == _speedups.poly_gcd(a, b)

    def test_matrix_ops(self):
        rng = random.Random(55)
        for _ in range(100):
            n, m, p = rng.randint(1, 7), rng.randint(1, 7), rng.randint(1, 7)
            A = [[rand_fraction(rng) for _ in range(m)] for _ in range(n)]
            B = [[rand_fraction(rng) for _ in range(p)] for _ in range(m)]
            assert pure.mat_mul(A, B) == _speedups.mat_mul(A, B)
            assert pure.mat_rref([r[:] for r in A]) == _speedups.mat_rref(
                [r[:] for r in A]
            )

    def test_rank_deficient_rref(self):
        rng = random.Random(31)
        for _ in range(40):
            n, m = rng.randint(2, 5), rng.randint(2, 5)
            A = [[rand_fraction(rng) for _ in range(m)] for _ in range(n)]
            A.append([2 * x for x in A[0]])
            A.append([Fraction(0)] * m)
            assert pure.mat_rref([r[:] for r in A]) == _speedups.mat_rref(
                [r[:] for r in A]
            )
