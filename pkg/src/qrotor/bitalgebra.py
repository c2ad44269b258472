"""Index arithmetic on (Z_2)^n and the fast Walsh-Hadamard transform.

Index ``l`` is read as the bit string (lambda_n ... lambda_1) with lambda_1 the
least-significant bit, which also selects the rightmost tensor factor.

The transform is unnormalized::

    fwht(v)[k] = sum_l parity_sign(l, k) * v[l]

so applying it twice multiplies by ``N``. Two kernels implement the in-place
butterfly: a compiled Cython extension and a numpy fallback. The compiled one is
used when importable unless ``QROTOR_PURE_PYTHON=1`` is set in the environment.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _fwht_py
from .errors import InvalidInputError

try:
    if os.environ.get("QROTOR_PURE_PYTHON") == "1":
        raise ImportError("compiled kernel disabled by QROTOR_PURE_PYTHON")
    from . import _fwht_ext as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _fwht_py
    BACKEND = "numpy"

_KERNELS = {"numpy": _fwht_py.fwht_rows_inplace}
if BACKEND == "cython":
    _KERNELS["cython"] = _kernel.fwht_rows_inplace


def available_backends() -> tuple[str, ...]:
    return tuple(_KERNELS)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def num_qubits(length: int) -> int:
    """Return n for a length N = 2**n, rejecting anything else."""
    if not is_power_of_two(length):
        raise InvalidInputError(f"length {length} is not a power of two")
    return length.bit_length() - 1


def popcount(x: int) -> int:
    return bin(x).count("1")


def parity_sign(l: int, k: int) -> int:
    """(-1)**popcount(l & k): the Walsh character of ``l`` evaluated at ``k``."""
    if l < 0 or k < 0:
        raise InvalidInputError("group indices must be non-negative")
    return -1 if popcount(l & k) & 1 else 1


def parity_signs(l: int, n: int) -> np.ndarray:
    """Vector of parity_sign(l, k) for k = 0..2**n - 1, as float."""
    N = 1 << n
    if not 0 <= l < N:
        raise InvalidInputError(f"index {l} out of range for n={n}")
    k = np.arange(N, dtype=np.int64) & l
    bits = np.zeros(N, dtype=np.int64)
    while k.any():
        bits ^= k & 1
        k >>= 1
    return 1.0 - 2.0 * bits


@lru_cache(maxsize=16)
def walsh_matrix(n: int) -> np.ndarray:
    """Dense N x N character table W[l, k] = parity_sign(l, k) (read-only, cached)."""
    N = 1 << n
    idx = np.arange(N, dtype=np.int64)
    x = idx[:, None] & idx[None, :]
    bits = np.zeros((N, N), dtype=np.int64)
    while x.any():
        bits ^= x & 1
        x >>= 1
    W = 1.0 - 2.0 * bits
    W.setflags(write=False)
    return W


def _as_work_array(v) -> np.ndarray:
    a = np.asarray(v)
    if np.iscomplexobj(a):
        return np.array(a, dtype=np.complex128, order="C")
    return np.array(a, dtype=np.float64, order="C")


def fwht(v, axis: int = -1, backend: str | None = None) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along ``axis``.

    Real input gives a float64 result, complex input complex128. The input is
    never modified.
    """
    a = _as_work_array(v)
    if a.ndim == 0:
        raise InvalidInputError("fwht needs at least one dimension")
    num_qubits(a.shape[axis])
    kernel = _KERNELS[backend or BACKEND]
    if axis in (-1, a.ndim - 1):
        kernel(a.reshape(-1, a.shape[-1]))
        return a
    moved = np.ascontiguousarray(np.moveaxis(a, axis, -1))
    flat = moved.reshape(-1, moved.shape[-1])
    kernel(flat)
    return np.moveaxis(flat.reshape(moved.shape), -1, axis)


def fwht_naive(v) -> np.ndarray:
    """O(N^2) reference: the dense character table applied as a matrix."""
    a = _as_work_array(v)
    if a.ndim != 1:
        raise InvalidInputError("fwht_naive takes a 1-D vector")
    n = num_qubits(a.shape[0])
    return walsh_matrix(n) @ a
