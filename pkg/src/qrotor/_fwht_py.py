"""Numpy butterfly used when the compiled kernel is not available."""

import numpy as np


def fwht_rows_inplace(a: np.ndarray) -> None:
    rows, n = a.shape
    h = 1
    while h < n:
        v = a.reshape(rows, n // (2 * h), 2, h)
        lo = v[:, :, 0, :].copy()
        v[:, :, 0, :] += v[:, :, 1, :]
        np.subtract(lo, v[:, :, 1, :], out=v[:, :, 1, :])
        h *= 2
