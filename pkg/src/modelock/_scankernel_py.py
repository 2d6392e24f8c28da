"""Pure-Python fallback for the scan hot loop.

Same contract as the compiled kernel in _scankernel.pyx: for each
selected candidate word, build the cycle matrix M and the forced
response p = P B mu, solve (I - M) x0 = p, and write the candidate's
admissibility margin into *out*.  NaN marks a singular I - M.  The
margin loop stops early once the margin is certainly below -tol, so
inadmissible candidates report some value < -tol rather than the exact
minimum; the compiled kernel exits at the same step.
"""

import numpy as np

COMPILED = False
_SINGULAR_RTOL = 1e-12


def scan_margins(AL, AR, Bmu, symbols, offs, lens, sel, tol, out):
    N = AL.shape[0]
    eye = np.eye(N)
    for pos, ci in enumerate(sel):
        o = offs[ci]
        n = lens[ci]
        word = symbols[o:o + n]
        M = eye
        p = np.zeros(N)
        for sym in word:
            A = AR if sym else AL
            M = A @ M
            p = A @ p + Bmu
        ImM = eye - M
        scale = max(np.max(np.abs(ImM)), 1e-300)
        if abs(np.linalg.det(ImM)) < _SINGULAR_RTOL * scale ** N:
            out[pos] = np.nan
            continue
        x = np.linalg.solve(ImM, p)
        margin = np.inf
        for sym in word:
            s = x[0]
            m = s if sym else -s
            if m < margin:
                margin = m
                if margin < -tol:
                    break
            x = (AR if sym else AL) @ x + Bmu
        out[pos] = margin
    return out
