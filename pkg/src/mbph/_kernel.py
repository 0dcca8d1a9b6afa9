"""Optional compiled inner loop for the time integrator.

The exact element-average closure makes the semi-discrete operator
stiff (spectral radius growing like N^2), so production runs take
millions of RK4 steps.  This module holds an allocation-free batched
stepper compiled with numba; :mod:`mbph.timeloop` falls back to the
pure-numpy reference loop when numba is unavailable.  Both paths share
the same arithmetic per step; a regression test pins their agreement.
"""

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _rhs(x, f, e, m, nodes, Q, Qinv, J1, lc, rc, w, da, db, bcl, bcr):
    N = x.shape[0]
    for i in range(N):
        m[i, 0] = N * (Q[0, 0] * x[i, 0] + Q[0, 1] * x[i, 1])
        m[i, 1] = N * (Q[1, 0] * x[i, 0] + Q[1, 1] * x[i, 1])
    e[0, lc] = bcl
    for i in range(N):
        e[i + 1, lc] = 2.0 * m[i, lc] - e[i, lc]
    e[N, rc] = bcr
    for i in range(N - 1, -1, -1):
        e[i, rc] = 2.0 * m[i, rc] - e[i + 1, rc]
    dv = db - da
    comp = -0.5 * dv / w
    for i in range(N):
        a_lo = (da + dv * nodes[i]) / w
        a_hi = (da + dv * nodes[i + 1]) / w
        d0 = e[i + 1, 0] - e[i, 0]
        d1 = e[i + 1, 1] - e[i, 1]
        xe_lo0 = Qinv[0, 0] * e[i, 0] + Qinv[0, 1] * e[i, 1]
        xe_lo1 = Qinv[1, 0] * e[i, 0] + Qinv[1, 1] * e[i, 1]
        xe_hi0 = Qinv[0, 0] * e[i + 1, 0] + Qinv[0, 1] * e[i + 1, 1]
        xe_hi1 = Qinv[1, 0] * e[i + 1, 0] + Qinv[1, 1] * e[i + 1, 1]
        f[i, 0] = comp * x[i, 0] + (a_hi * xe_hi0 - a_lo * xe_lo0) + (J1[0, 0] * d0 + J1[0, 1] * d1) / w
        f[i, 1] = comp * x[i, 1] + (a_hi * xe_hi1 - a_lo * xe_lo1) + (J1[1, 0] * d0 + J1[1, 1] * d1) / w


@njit(cache=True)
def rk4_batch(x, nodes, Q, Qinv, J1, lc, rc, w_st, da_st, db_st, bcl_st, bcr_st, dt, n_steps):
    """Advance n_steps RK4 steps in place.

    Stage data arrays hold values on the half-step grid: index 2k is the
    start of step k, 2k+1 its midpoint, 2k+2 its end.  Returns the number
    of completed steps (== n_steps unless the state left finite range).
    """
    N = x.shape[0]
    e = np.empty((N + 1, 2))
    m = np.empty((N, 2))
    k1 = np.empty((N, 2))
    k2 = np.empty((N, 2))
    k3 = np.empty((N, 2))
    k4 = np.empty((N, 2))
    xt = np.empty((N, 2))
    for k in range(n_steps):
        s0, s1, s2 = 2 * k, 2 * k + 1, 2 * k + 2
        _rhs(x, k1, e, m, nodes, Q, Qinv, J1, lc, rc,
             w_st[s0], da_st[s0], db_st[s0], bcl_st[s0], bcr_st[s0])
        for i in range(N):
            xt[i, 0] = x[i, 0] + 0.5 * dt * k1[i, 0]
            xt[i, 1] = x[i, 1] + 0.5 * dt * k1[i, 1]
        _rhs(xt, k2, e, m, nodes, Q, Qinv, J1, lc, rc,
             w_st[s1], da_st[s1], db_st[s1], bcl_st[s1], bcr_st[s1])
        for i in range(N):
            xt[i, 0] = x[i, 0] + 0.5 * dt * k2[i, 0]
            xt[i, 1] = x[i, 1] + 0.5 * dt * k2[i, 1]
        _rhs(xt, k3, e, m, nodes, Q, Qinv, J1, lc, rc,
             w_st[s1], da_st[s1], db_st[s1], bcl_st[s1], bcr_st[s1])
        for i in range(N):
            xt[i, 0] = x[i, 0] + dt * k3[i, 0]
            xt[i, 1] = x[i, 1] + dt * k3[i, 1]
        _rhs(xt, k4, e, m, nodes, Q, Qinv, J1, lc, rc,
             w_st[s2], da_st[s2], db_st[s2], bcl_st[s2], bcr_st[s2])
        ok = True
        for i in range(N):
            x[i, 0] = x[i, 0] + (dt / 6.0) * (k1[i, 0] + 2.0 * k2[i, 0] + 2.0 * k3[i, 0] + k4[i, 0])
            x[i, 1] = x[i, 1] + (dt / 6.0) * (k1[i, 1] + 2.0 * k2[i, 1] + 2.0 * k3[i, 1] + k4[i, 1])
            if not (np.isfinite(x[i, 0]) and np.isfinite(x[i, 1])):
                ok = False
        if not ok:
            return k + 1
    return n_steps
