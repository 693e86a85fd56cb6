"""Backend switch for the hot kernels.

Set ``NORMLAB_BACKEND=numpy`` to force the vectorised numpy path; the default
uses numba when it is importable.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

REQUESTED = os.environ.get("NORMLAB_BACKEND", "numba").strip().lower()
HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and REQUESTED != "numpy"


def njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
