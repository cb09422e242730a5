# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: closed-form susceptibility grids and batched
trace-constrained steady-state solves of the three-level master equation.

Mirrors kernels._pure exactly (tolerances, flag bits); see that module for
the reference semantics.
"""

from libc.math cimport fabs, sqrt, NAN

BACKEND = "compiled"

cdef double _CLOSED_POLE_RTOL = 1e-12
cdef double _NDD_POLE_TOL = 1e-9
cdef double _RESIDUAL_RTOL = 1e-10

cdef int FLAG_NDD_POLE = 1
cdef int FLAG_DENOM_POLE = 2
cdef int FLAG_NONLINEAR = 4
cdef int FLAG_SOLVER = 8


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef inline double _max2(double a, double b) nogil:
    return a if a > b else b


def closed_chi_grid(double[::1] pump_r, double[::1] omega_mu,
                    double[::1] delta_p, double[::1] delta_mu,
                    double[::1] s0, double gamma,
                    int sign_omega2, int sign_overall,
                    double complex[::1] chi_p, double complex[::1] chi_ndd,
                    unsigned char[::1] flags):
    cdef Py_ssize_t n = pump_r.shape[0]
    cdef Py_ssize_t i
    cdef double r, omu, dp, dmu, scale
    cdef double complex big_r, big_b, big_g, den, num, chi, d
    cdef double complex nanc = NAN + NAN * 1j
    with nogil:
        for i in range(n):
            r = pump_r[i]
            omu = omega_mu[i]
            dp = delta_p[i]
            dmu = delta_mu[i]
            big_r = r - 2j * dmu
            big_b = (r + gamma) - 2j * (dp + dmu)
            big_g = gamma - 2j * dp
            den = big_r * (big_g * big_b + 4.0 * omu * omu)
            scale = _max2(_max2(gamma, r), _max2(omu, _max2(fabs(dp), fabs(dmu))))
            flags[i] = 0
            if _cabs(den) < _CLOSED_POLE_RTOL * scale * scale * scale:
                flags[i] = FLAG_DENOM_POLE
                chi_p[i] = nanc
                chi_ndd[i] = nanc
                continue
            num = sign_overall * (-s0[i] * gamma) * (
                2j * big_r * big_b + sign_omega2 * 8j * omu * omu)
            chi = num / den
            chi_p[i] = chi
            d = 1.0 - chi / 3.0
            if _cabs(d) <= _NDD_POLE_TOL:
                flags[i] = FLAG_NDD_POLE
                chi_ndd[i] = nanc
            else:
                chi_ndd[i] = chi / d


cdef void _build_liouvillian(double g1, double g2, double deph,
                             double r, double omu, double dp, double dmu,
                             double op, double complex* L) nogil:
    """Row-major-vec superoperator; see mitm_coupling.lindblad for the math."""
    cdef double H[3][3]
    cdef Py_ssize_t a, b, c, q
    cdef double rate
    for a in range(3):
        for b in range(3):
            H[a][b] = 0.0
    H[0][0] = -(dp + dmu)
    H[1][1] = -dp
    H[0][1] = omu
    H[1][0] = omu
    H[1][2] = op
    H[2][1] = op

    for a in range(81):
        L[a] = 0.0

    # -i (H x I) + i (I x H^T)
    for a in range(3):
        for c in range(3):
            if H[a][c] != 0.0:
                for b in range(3):
                    L[(3 * a + b) * 9 + (3 * c + b)] -= 1j * H[a][c]
    for b in range(3):
        for c in range(3):  # c plays the role of the column label d
            if H[c][b] != 0.0:
                for a in range(3):
                    L[(3 * a + b) * 9 + (3 * a + c)] += 1j * H[c][b]

    # dissipators: channels (rate, |p><q|) add rate at (vec pp, vec qq)
    # and -rate/2 on the diagonal for every row/column index touching q
    cdef double rates[4]
    cdef int ps[4]
    cdef int qs[4]
    rates[0] = g1; ps[0] = 0; qs[0] = 2
    rates[1] = g2; ps[1] = 1; qs[1] = 2
    rates[2] = r;  ps[2] = 2; qs[2] = 0
    rates[3] = deph; ps[3] = 1; qs[3] = 1
    for a in range(4):
        rate = rates[a]
        if rate == 0.0:
            continue
        q = qs[a]
        L[(3 * ps[a] + ps[a]) * 9 + (3 * q + q)] += rate
        for b in range(3):
            L[(3 * q + b) * 9 + (3 * q + b)] -= 0.5 * rate
            L[(3 * b + q) * 9 + (3 * b + q)] -= 0.5 * rate


cdef int _steady_rho23(double complex* L, double complex* rho23) nogil:
    """Solve the trace-constrained system; 0 on success, 1 on failure."""
    cdef double complex A[9][10]
    cdef double complex x[9]
    cdef double complex tmp, factor, acc
    cdef double best, mag, norm_inf, rowsum, res
    cdef Py_ssize_t i, j, k, piv

    for i in range(9):
        for j in range(9):
            A[i][j] = L[i * 9 + j]
        A[i][9] = 0.0
    # trace constraint replaces the first row
    for j in range(9):
        A[0][j] = 0.0
    A[0][0] = 1.0
    A[0][4] = 1.0
    A[0][8] = 1.0
    A[0][9] = 1.0

    for k in range(9):
        piv = k
        best = _cabs(A[k][k])
        for i in range(k + 1, 9):
            mag = _cabs(A[i][k])
            if mag > best:
                best = mag
                piv = i
        if best == 0.0:
            return 1
        if piv != k:
            for j in range(k, 10):
                tmp = A[k][j]
                A[k][j] = A[piv][j]
                A[piv][j] = tmp
        for i in range(k + 1, 9):
            factor = A[i][k] / A[k][k]
            if factor != 0.0:
                for j in range(k, 10):
                    A[i][j] = A[i][j] - factor * A[k][j]

    for k in range(8, -1, -1):
        acc = A[k][9]
        for j in range(k + 1, 9):
            acc = acc - A[k][j] * x[j]
        x[k] = acc / A[k][k]

    # residual against the unconstrained Liouvillian, infinity norms
    norm_inf = 0.0
    res = 0.0
    for i in range(9):
        rowsum = 0.0
        acc = 0.0
        for j in range(9):
            rowsum += _cabs(L[i * 9 + j])
            acc = acc + L[i * 9 + j] * x[j]
        if rowsum > norm_inf:
            norm_inf = rowsum
        mag = _cabs(acc)
        if mag > res:
            res = mag
    if res >= _RESIDUAL_RTOL * norm_inf:
        return 1
    rho23[0] = x[5]  # row-major index of rho[1, 2]
    return 0


def steady_chi_grid(double gamma1, double gamma2, double dephasing,
                    double[::1] pump_r, double[::1] omega_mu,
                    double[::1] delta_p, double[::1] delta_mu,
                    double[::1] s0, double gamma_ref, double probe,
                    bint check_linearity, double linearity_rtol,
                    double complex[::1] chi_out, unsigned char[::1] flags):
    cdef Py_ssize_t n = pump_r.shape[0]
    cdef Py_ssize_t i
    cdef double complex L[81]
    cdef double complex rho23, rho23_10, value, weaker
    cdef double denom
    cdef int bad, bad10
    cdef double complex nanc = NAN + NAN * 1j
    with nogil:
        for i in range(n):
            flags[i] = 0
            _build_liouvillian(gamma1, gamma2, dephasing, pump_r[i],
                               omega_mu[i], delta_p[i], delta_mu[i],
                               probe, L)
            bad = _steady_rho23(L, &rho23)
            value = s0[i] * gamma_ref * rho23 / probe
            if check_linearity and bad == 0:
                _build_liouvillian(gamma1, gamma2, dephasing, pump_r[i],
                                   omega_mu[i], delta_p[i], delta_mu[i],
                                   probe / 10.0, L)
                bad10 = _steady_rho23(L, &rho23_10)
                if bad10 == 0:
                    weaker = s0[i] * gamma_ref * rho23_10 / (probe / 10.0)
                    denom = _max2(_cabs(value), _cabs(weaker))
                    if denom > 0 and _cabs(value - weaker) > linearity_rtol * denom:
                        flags[i] |= FLAG_NONLINEAR
                else:
                    bad = 1
            if bad:
                flags[i] |= FLAG_SOLVER
                chi_out[i] = nanc
            else:
                chi_out[i] = value
