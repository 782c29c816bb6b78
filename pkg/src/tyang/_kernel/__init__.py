"""Hot arithmetic kernels with a compiled/pure backend switch.

The compiled Cython backend is used when present; setting TYANG_PURE=1
forces the pure-Python backend.  Both backends implement the same six
functions with bit-identical outputs.
"""

import os

if os.environ.get("TYANG_PURE") == "1":
    from tyang._kernel import pure as _impl
else:
    try:
        from tyang._kernel import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from tyang._kernel import pure as _impl

BACKEND = _impl.BACKEND

poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
poly_gcd = _impl.poly_gcd
poly_eval = _impl.poly_eval
mat_mul = _impl.mat_mul
mat_rref = _impl.mat_rref
