"""Independent reference computations used only by the test suite."""
import math

import numpy as np
from scipy.special import eval_genlaguerre, gammaln


def displacement_laguerre(alpha, M):
    """<n|U_alpha|m> from the associated-Laguerre closed form.

    U_alpha coincides with the displacement D(beta) = exp(beta a^+ - conj(beta) a)
    for beta = -conj(alpha).
    """
    beta = -np.conj(complex(alpha))
    x = abs(beta) ** 2
    out = np.zeros((M, M), dtype=complex)
    for n in range(M):
        for m in range(M):
            lo, hi = min(n, m), max(n, m)
            pref = math.exp(0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) - x / 2)
            base = beta if n >= m else -np.conj(beta)
            out[n, m] = pref * base ** (hi - lo) * eval_genlaguerre(lo, hi - lo, x)
    return out
