"""Optional numba kernels for the path DP hot loops.

Pure-Python twins of these kernels live in path_solver; the test suite
asserts both lanes produce identical tables.  Everything here operates
on the positions of threshold-2 nodes (ks) of an already-pruned path:
position 0 and n-1 are threshold-2, everything else threshold 1.
"""

from __future__ import annotations

try:
    import numba as _numba
    from numba import njit
except ImportError:          # pragma: no cover - numba is a declared dep
    _numba = None

HAVE_NUMBA = _numba is not None

if HAVE_NUMBA:

    @njit(cache=True)
    def line_kernel(ks, n, lam, sigma, prec):  # pragma: no cover - jitted
        m = ks.shape[0]
        sigma[n - 1] = 1
        prec[n - 1] = n - 1
        writes = 1
        d = ks[m - 2]
        s = 2
        sigma[d] = 2
        prec[d] = d
        writes += 1
        for i in range(d + 1, n - 1):
            sigma[i] = 2
            prec[i] = d
            writes += 1
        for idx in range(m - 3, -1, -1):
            dprev = d
            d = ks[idx]
            DD = ks[idx + 2]
            sp = sigma[dprev]
            sm1 = s - 1
            writes += dprev - d
            if sp == sm1:
                for i in range(d, dprev):
                    sigma[i] = s
                    prec[i] = d
                prec[dprev] = dprev
                continue
            base_lo = 2 * dprev - lam + 1
            base_hi = 2 * dprev + lam - 1
            dp1 = dprev + 1
            s1 = s + 1
            any_high = False
            for i in range(d, dprev):
                lo = base_lo - i
                if lo < dp1:
                    lo = dp1
                hi = base_hi - i
                if hi > DD:
                    hi = DD
                if lo <= hi and (sigma[hi] == sm1 or prec[hi] >= lo):
                    sigma[i] = s
                else:
                    sigma[i] = s1
                    any_high = True
            if any_high:
                s = s1
            sm1 = s - 1
            prec[d] = d
            for i in range(d + 1, dprev + 1):
                if sigma[i] == sm1:
                    prec[i] = i
                else:
                    prec[i] = prec[i - 1]
        return writes

    @njit(cache=True)
    def backtrack_kernel(ks, sigma, lam, out):  # pragma: no cover - jitted
        n = sigma.shape[0]
        m = ks.shape[0]
        cur = 0
        out[0] = 0
        cnt = 1
        p = 0
        while cur < n - 1:
            while ks[p] <= cur:
                p += 1
            Dp = ks[p]
            DD = ks[p + 1] if p + 1 < m else ks[p]
            target = sigma[cur] - 1
            if sigma[Dp] == target:
                nxt = Dp
            else:
                jmin = Dp + 1
                lo2 = 2 * Dp - cur - lam + 1
                if lo2 > jmin:
                    jmin = lo2
                jmax = 2 * Dp - cur + lam - 1
                if DD < jmax:
                    jmax = DD
                nxt = -1
                for j in range(jmin, jmax + 1):
                    if sigma[j] == target:
                        nxt = j
                        break
                if nxt < 0:
                    return -1
            out[cnt] = nxt
            cnt += 1
            cur = nxt
        return cnt

    def warmup() -> None:
        """Trigger JIT compilation on a toy input (cached across runs)."""
        import numpy as np

        ks = np.array([0, 2, 4], dtype=np.int64)
        sigma = np.zeros(5, dtype=np.int64)
        prec = np.zeros(5, dtype=np.int64)
        line_kernel(ks, 5, 1, sigma, prec)
        out = np.zeros(5, dtype=np.int64)
        backtrack_kernel(ks, sigma, 1, out)

else:                         # pragma: no cover

    line_kernel = None
    backtrack_kernel = None

    def warmup() -> None:
        return None
