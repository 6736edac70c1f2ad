"""Pure numpy fallback for the compiled hot loops.

Row blocks keep peak memory bounded for large inputs.  Block sizes are
fixed constants, and partial results are combined with Neumaier
compensation, so results are reproducible and agree across block sizes
to far better than 1e-12 relative.
"""

import numpy as np

PAIR_BLOCK = 1024
GRAM_BLOCK = 256


def _neumaier(total, comp, term):
    t = total + term
    if abs(total) >= abs(term):
        comp += (total - t) + term
    else:
        comp += (term - t) + total
    return t, comp


def pairwise_gauss_sum(y, gamma, block=PAIR_BLOCK):
    """Sum of exp(-gamma*(y[j]-y[k])^2) over all ordered pairs (j, k)."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    n = y.size
    total = 0.0
    comp = 0.0
    for start in range(0, n, block):
        rows = y[start:start + block, np.newaxis] - y[np.newaxis, :]
        np.square(rows, out=rows)
        rows *= -gamma
        np.exp(rows, out=rows)
        total, comp = _neumaier(total, comp, float(np.sum(rows)))
    return total + comp


def kernel_gram(y, block=GRAM_BLOCK):
    """Matrix K(y[i], y[j]) of the limit-null covariance kernel."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    n = y.size
    out = np.empty((n, n), dtype=np.float64)
    sq = y * y
    for start in range(0, n, block):
        s = y[start:start + block, np.newaxis]
        st = s * y[np.newaxis, :]
        out[start:start + block] = (
            np.exp(-0.5 * np.square(s - y[np.newaxis, :]))
            - (1.0 + st + 0.5 * st * st)
            * np.exp(-0.5 * (sq[start:start + block, np.newaxis] + sq[np.newaxis, :]))
        )
    return out
