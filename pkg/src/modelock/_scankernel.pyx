# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled scan hot loop.

For each selected candidate word over {L, R}: compose the cycle matrix
M and the forced response p = P B mu, solve (I - M) x0 = p by Gaussian
elimination, iterate the cycle and record the admissibility margin.
NaN marks a singular I - M.  The margin loop stops early once the
margin is certainly below -tol.  Mirrors _scankernel_py.scan_margins;
the 3x3 case (the common one) is fully unrolled.
"""

from libc.math cimport fabs, NAN, INFINITY

COMPILED = True

DEF MAXN = 8

cdef double _SINGULAR_RTOL = 1e-12


def scan_margins(double[:, ::1] AL, double[:, ::1] AR, double[::1] Bmu,
                 unsigned char[::1] symbols, long[::1] offs, long[::1] lens,
                 long[::1] sel, double tol, double[::1] out):
    cdef int N = AL.shape[0]
    cdef Py_ssize_t nsel = sel.shape[0]
    cdef double aL[MAXN * MAXN]
    cdef double aR[MAXN * MAXN]
    cdef double b[MAXN]
    cdef int i, j
    if N > MAXN:
        raise ValueError(f"dimension {N} exceeds kernel limit {MAXN}")
    for i in range(N):
        b[i] = Bmu[i]
        for j in range(N):
            aL[i * N + j] = AL[i, j]
            aR[i * N + j] = AR[i, j]
    if nsel == 0:
        return out
    with nogil:
        if N == 3:
            _scan3(aL, aR, b, &symbols[0], &offs[0], &lens[0],
                   &sel[0], nsel, tol, &out[0])
        else:
            _scan(aL, aR, b, N, &symbols[0], &offs[0], &lens[0],
                  &sel[0], nsel, tol, &out[0])
    return out


cdef inline double _solve_margin(double* M, double* p, double* aL,
                                 double* aR, double* b, int N,
                                 unsigned char* w, long n, double tol) nogil:
    """Solve (I - M) x = p, then the admissibility margin along w."""
    cdef double G[MAXN * (MAXN + 1)]
    cdef double x[MAXN]
    cdef double T[MAXN]
    cdef double* A
    cdef long step
    cdef int i, j, k, piv
    cdef double acc, det, scale, tmp, s, m, margin

    scale = 1e-300
    for i in range(N):
        for j in range(N):
            tmp = (1.0 if i == j else 0.0) - M[i * N + j]
            G[i * (N + 1) + j] = tmp
            if fabs(tmp) > scale:
                scale = fabs(tmp)
        G[i * (N + 1) + N] = p[i]

    det = 1.0
    for k in range(N):
        piv = k
        for i in range(k + 1, N):
            if fabs(G[i * (N + 1) + k]) > fabs(G[piv * (N + 1) + k]):
                piv = i
        if piv != k:
            det = -det
            for j in range(k, N + 1):
                tmp = G[k * (N + 1) + j]
                G[k * (N + 1) + j] = G[piv * (N + 1) + j]
                G[piv * (N + 1) + j] = tmp
        det *= G[k * (N + 1) + k]
        if G[k * (N + 1) + k] != 0.0:
            for i in range(k + 1, N):
                tmp = G[i * (N + 1) + k] / G[k * (N + 1) + k]
                if tmp != 0.0:
                    for j in range(k + 1, N + 1):
                        G[i * (N + 1) + j] -= tmp * G[k * (N + 1) + j]
    if fabs(det) < _SINGULAR_RTOL * scale ** N:
        return NAN
    for i in range(N - 1, -1, -1):
        acc = G[i * (N + 1) + N]
        for j in range(i + 1, N):
            acc -= G[i * (N + 1) + j] * x[j]
        x[i] = acc / G[i * (N + 1) + i]

    margin = INFINITY
    for step in range(n):
        s = x[0]
        m = s if w[step] else -s
        if m < margin:
            margin = m
            if margin < -tol:
                return margin
        A = aR if w[step] else aL
        for i in range(N):
            acc = b[i]
            for j in range(N):
                acc += A[i * N + j] * x[j]
            T[i] = acc
        for i in range(N):
            x[i] = T[i]
    return margin


cdef void _scan(double* aL, double* aR, double* b, int N,
                unsigned char* symbols, long* offs, long* lens,
                long* sel, Py_ssize_t nsel, double tol, double* out) nogil:
    cdef double M[MAXN * MAXN]
    cdef double T[MAXN * MAXN]
    cdef double p[MAXN]
    cdef double q[MAXN]
    cdef double* A
    cdef Py_ssize_t pos
    cdef long ci, o, n, step
    cdef int i, j, k
    cdef double acc

    for pos in range(nsel):
        ci = sel[pos]
        o = offs[ci]
        n = lens[ci]
        for i in range(N * N):
            M[i] = 0.0
        for i in range(N):
            M[i * N + i] = 1.0
            p[i] = 0.0
        for step in range(n):
            A = aR if symbols[o + step] else aL
            for i in range(N):
                for j in range(N):
                    acc = 0.0
                    for k in range(N):
                        acc += A[i * N + k] * M[k * N + j]
                    T[i * N + j] = acc
            for i in range(N * N):
                M[i] = T[i]
            for i in range(N):
                acc = b[i]
                for j in range(N):
                    acc += A[i * N + j] * p[j]
                q[i] = acc
            for i in range(N):
                p[i] = q[i]
        out[pos] = _solve_margin(M, p, aL, aR, b, N, symbols + o, n, tol)


cdef void _scan3(double* aL, double* aR, double* b,
                 unsigned char* symbols, long* offs, long* lens,
                 long* sel, Py_ssize_t nsel, double tol, double* out) nogil:
    cdef double M[9]
    cdef double T[9]
    cdef double p[3]
    cdef double q0, q1, q2
    cdef double* A
    cdef Py_ssize_t pos
    cdef long ci, o, n, step
    cdef int i

    for pos in range(nsel):
        ci = sel[pos]
        o = offs[ci]
        n = lens[ci]
        M[0] = 1.0; M[1] = 0.0; M[2] = 0.0
        M[3] = 0.0; M[4] = 1.0; M[5] = 0.0
        M[6] = 0.0; M[7] = 0.0; M[8] = 1.0
        p[0] = 0.0; p[1] = 0.0; p[2] = 0.0
        for step in range(n):
            A = aR if symbols[o + step] else aL
            T[0] = A[0] * M[0] + A[1] * M[3] + A[2] * M[6]
            T[1] = A[0] * M[1] + A[1] * M[4] + A[2] * M[7]
            T[2] = A[0] * M[2] + A[1] * M[5] + A[2] * M[8]
            T[3] = A[3] * M[0] + A[4] * M[3] + A[5] * M[6]
            T[4] = A[3] * M[1] + A[4] * M[4] + A[5] * M[7]
            T[5] = A[3] * M[2] + A[4] * M[5] + A[5] * M[8]
            T[6] = A[6] * M[0] + A[7] * M[3] + A[8] * M[6]
            T[7] = A[6] * M[1] + A[7] * M[4] + A[8] * M[7]
            T[8] = A[6] * M[2] + A[7] * M[5] + A[8] * M[8]
            for i in range(9):
                M[i] = T[i]
            q0 = A[0] * p[0] + A[1] * p[1] + A[2] * p[2] + b[0]
            q1 = A[3] * p[0] + A[4] * p[1] + A[5] * p[2] + b[1]
            q2 = A[6] * p[0] + A[7] * p[1] + A[8] * p[2] + b[2]
            p[0] = q0; p[1] = q1; p[2] = q2
        out[pos] = _solve_margin(M, p, aL, aR, b, 3, symbols + o, n, tol)
