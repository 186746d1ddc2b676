"""JIT shim for the hot kernels.

The accelerated lane compiles ``wiretap.kernels`` with numba. Setting the
environment variable ``WIRETAP_NUMBA=0`` (or ``false``/``off``/``no``) before
import selects the pure-numpy lane instead; the same kernel source runs under
the plain interpreter, which is convenient for debugging and for machines
without a working numba install.
"""

import os


def _env_enabled():
    flag = os.environ.get("WIRETAP_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


JIT_ENABLED = _env_enabled()

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

if not JIT_ENABLED:

    def njit(func=None, **kwargs):
        if func is None:

            def wrap(f):
                return f

            return wrap
        return func


def pure(fn):
    """Underlying Python implementation of a (possibly jitted) kernel."""
    return getattr(fn, "py_func", fn)
