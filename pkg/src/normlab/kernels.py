"""Public entry points for the hot kernels.

The implementation is chosen once at import time: numba loops by default,
vectorised numpy when ``NORMLAB_BACKEND=numpy`` or numba is missing. Both
produce identical arrays; the wrappers only normalise dtypes and layout.
"""

import numpy as np

from . import _kernels_np
from ._accel import USE_NUMBA

if USE_NUMBA:
    from . import _kernels_nb as _impl
else:
    _impl = _kernels_np

BACKEND = "numba" if USE_NUMBA else "numpy"


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def vecmat(vecs, mat, add, mul):
    """Row vectors times a matrix over a small field: (N, r) @ (r, c)."""
    return _impl.vecmat(_i64(vecs), _i64(mat), add, mul)


def rank_batch(mats, add, mul, neg, inv):
    mats = _i64(mats)
    if mats.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return _impl.rank_batch(mats, add, mul, neg, inv)


def orbit(vec0, mat, count, add, mul):
    """Rows ``vec0 @ mat**s`` for s in range(count)."""
    return _impl.orbit(_i64(vec0), _i64(mat), int(count), add, mul)


def digit_add(a, b, p, ndigits):
    """Add field encodings digit-wise in base p (characteristic-p addition)."""
    a, b = np.broadcast_arrays(_i64(a), _i64(b))
    shape = a.shape
    out = _impl.digit_add(_i64(a.ravel()), _i64(b.ravel()), int(p), int(ndigits))
    return out.reshape(shape)


def digit_neg(a, p, ndigits):
    a = _i64(a)
    return _impl.digit_neg(a.ravel(), int(p), int(ndigits)).reshape(a.shape)


def struct_mul(x, y, consts, add, mul):
    """Products x[n] * y[n] in an algebra with structure constants ``consts``."""
    x, y = np.broadcast_arrays(_i64(np.atleast_2d(x)), _i64(np.atleast_2d(y)))
    return _impl.struct_mul(_i64(x), _i64(y), _i64(consts), add, mul)


def left_mult(x, consts, add, mul):
    """Left-multiplication matrices; ``out[n] @ y`` equals ``x[n] * y``."""
    return _impl.left_mult(_i64(np.atleast_2d(x)), _i64(consts), add, mul)


def all_vectors(base, width):
    """Every vector in base**width, row s holding the base-``base`` digits of s."""
    s = np.arange(base ** width, dtype=np.int64)
    return to_digits(s, base, width)


def to_digits(values, base, width):
    values = np.asarray(values, dtype=np.int64)
    out = np.empty(values.shape + (width,), dtype=np.int64)
    rest = values.copy()
    for i in range(width):
        out[..., i] = rest % base
        rest //= base
    return out


def from_digits(digits, base):
    digits = np.asarray(digits, dtype=np.int64)
    out = np.zeros(digits.shape[:-1], dtype=np.int64)
    for i in range(digits.shape[-1] - 1, -1, -1):
        out = out * base + digits[..., i]
    return out
