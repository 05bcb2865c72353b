"""Pure numpy versions of the integration kernels in ``_kernels.pyx``.

Both modules expose the same two functions with the same argument order.
"""
import numpy as np

TWO_PI = 2 * np.pi


def _antiderivative(c0, c1, c2, beta):
    # ∫ (c0 + c1 cos β + c2 sin β) sin β dβ
    s = np.sin(beta)
    return -c0 * np.cos(beta) + 0.5 * c1 * s * s + c2 * (0.5 * beta - 0.25 * np.sin(2 * beta))


def abs_line_integral(c0, c1, c2):
    """Exact ``∫_0^π |c0 + c1 cos β + c2 sin β| sin β dβ`` elementwise.

    The sinusoid has at most two zeros in (0, π); the integral is split there
    and each signed piece comes from the antiderivative.
    """
    c0, c1, c2 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (c0, c1, c2)))
    amp = np.hypot(c1, c2)
    crosses = amp > np.abs(c0)
    ratio = np.divide(-c0, amp, out=np.zeros_like(amp), where=crosses)
    half = np.arccos(np.clip(ratio, -1.0, 1.0))
    phase = np.arctan2(c2, c1)
    roots = []
    for sign in (1.0, -1.0):
        z = np.mod(phase + sign * half, TWO_PI)
        roots.append(np.where(crosses & (z > 0) & (z < np.pi), z, np.pi))
    lo = np.minimum(*roots)
    hi = np.maximum(*roots)
    f0 = _antiderivative(c0, c1, c2, 0.0)
    flo = _antiderivative(c0, c1, c2, lo)
    fhi = _antiderivative(c0, c1, c2, hi)
    fpi = _antiderivative(c0, c1, c2, np.pi)
    return np.abs(flo - f0) + np.abs(fhi - flo) + np.abs(fpi - fhi)


def line_coefficients(r, pis, gamma, theta, a, b):
    """β-line coefficients (C0, C1, C2) of W for a diagonal qutrit state.

    W(β) = C0 + C1 cos β + C2 sin β at fixed (γ, θ, a, b); the angles broadcast.
    """
    r1, r2, r3 = r
    eg = np.exp(0.5j * gamma)
    ea = np.exp(0.5j * a)
    ct, st = np.cos(theta), np.sin(theta)
    cb, sb = np.cos(0.5 * b), np.sin(0.5 * b)
    zero = np.zeros(np.broadcast(gamma, theta, a, b).shape)
    # M = D(γ) R5(θ) D(a) R2(b), rows written out explicitly.
    m1 = (eg * ct * ea * cb + zero, eg * ct * ea * sb + zero, eg * st + zero)
    m2 = (-sb / (eg * ea) + zero, cb / (eg * ea) + zero, zero + 0j)
    m3 = (-st * ea * cb + zero, -st * ea * sb + zero, ct + zero)
    p1, p2, p3 = pis
    a11 = p1 * abs(m1[0]) ** 2 + p2 * abs(m1[1]) ** 2 + p3 * abs(m1[2]) ** 2
    a22 = p1 * abs(m2[0]) ** 2 + p2 * abs(m2[1]) ** 2 + p3 * abs(m2[2]) ** 2
    a33 = p1 * abs(m3[0]) ** 2 + p2 * abs(m3[1]) ** 2 + p3 * abs(m3[2]) ** 2
    a12 = (p1 * m1[0] * m2[0].conj() + p2 * m1[1] * m2[1].conj() + p3 * m1[2] * m2[2].conj()).real
    c0 = r3 * a33 + 0.5 * (r1 + r2) * (a11 + a22)
    c1 = 0.5 * (r1 - r2) * (a11 - a22)
    c2 = (r1 - r2) * a12
    return c0, c1, c2


def qutrit_grid_sum(r, pis, g_x, g_w, t_x, t_w, a_x, a_w, b_x, b_w, t_start, t_stop):
    """Weighted sum of the exact β-line integrals over a (γ, θ, a, b) tensor grid.

    Only θ indices in ``[t_start, t_stop)`` are visited; summation is ordered
    θ-major so a fixed partition of θ gives reproducible partial sums.
    """
    g = np.asarray(g_x)[:, None, None]
    a = np.asarray(a_x)[None, :, None]
    b = np.asarray(b_x)[None, None, :]
    wgab = np.asarray(g_w)[:, None, None] * np.asarray(a_w)[None, :, None] * np.asarray(b_w)[None, None, :]
    total = 0.0
    for k in range(t_start, t_stop):
        c0, c1, c2 = line_coefficients(r, pis, g, t_x[k], a, b)
        total += t_w[k] * float(np.sum(wgab * abs_line_integral(c0, c1, c2)))
    return total
