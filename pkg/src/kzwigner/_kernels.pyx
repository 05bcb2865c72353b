# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernels; see ``_fallback.py`` for the numpy reference."""
import numpy as np

from libc.math cimport atan2, cos, fabs, fmax, hypot, sin, sqrt, M_PI

cdef inline double _anti_cs(double c0, double c1, double c2, double z, double c, double s) nogil:
    # antiderivative of (c0 + c1 cos + c2 sin) sin at z, given c = cos z, s = sin z
    return -c0 * c + 0.5 * c1 * s * s + c2 * (0.5 * z - 0.5 * s * c)


cdef inline double _line(double c0, double c1, double c2) nogil:
    """Same integral as the fallback; root cosines and sines come from the
    angle-sum formulas, so only the roots inside (0, π) need an atan2."""
    cdef double amp = hypot(c1, c2)
    cdef double f0 = -c0, fpi = c0 + 0.5 * M_PI * c2
    cdef double ch, sh, cp, sp, ca, sa, cb, sb, za, zb, fa, fb, t
    if not amp > fabs(c0):
        return fabs(fpi - f0)
    ch = -c0 / amp
    sh = sqrt(fmax(0.0, 1.0 - ch * ch))
    cp = c1 / amp
    sp = c2 / amp
    ca = cp * ch - sp * sh
    sa = sp * ch + cp * sh
    cb = cp * ch + sp * sh
    sb = sp * ch - cp * sh
    za = M_PI
    zb = M_PI
    fa = fpi
    fb = fpi
    if sa > 0:
        za = atan2(sa, ca)
        fa = _anti_cs(c0, c1, c2, za, ca, sa)
    if sb > 0:
        zb = atan2(sb, cb)
        fb = _anti_cs(c0, c1, c2, zb, cb, sb)
    if zb < za:
        t = za; za = zb; zb = t
        t = fa; fa = fb; fb = t
    return fabs(fa - f0) + fabs(fb - fa) + fabs(fpi - fb)


def abs_line_integral(c0, c1, c2):
    """Exact ``∫_0^π |c0 + c1 cos β + c2 sin β| sin β dβ`` elementwise."""
    b0, b1, b2 = np.broadcast_arrays(*(np.asarray(x, dtype=np.float64) for x in (c0, c1, c2)))
    shape = b0.shape
    cdef double[::1] x0 = np.ascontiguousarray(b0).reshape(-1)
    cdef double[::1] x1 = np.ascontiguousarray(b1).reshape(-1)
    cdef double[::1] x2 = np.ascontiguousarray(b2).reshape(-1)
    out = np.empty(x0.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(x0.shape[0]):
            o[i] = _line(x0[i], x1[i], x2[i])
    return out.reshape(shape)


def qutrit_grid_sum(r, pis, g_x, g_w, t_x, t_w, a_x, a_w, b_x, b_w, Py_ssize_t t_start, Py_ssize_t t_stop):
    """Weighted sum of exact β-line integrals over a (γ, θ, a, b) tensor grid."""
    cdef double r1 = r[0], r2 = r[1], r3 = r[2]
    cdef double p1 = pis[0], p2 = pis[1], p3 = pis[2]
    cdef double[::1] gx = np.ascontiguousarray(g_x, dtype=np.float64)
    cdef double[::1] gw = np.ascontiguousarray(g_w, dtype=np.float64)
    cdef double[::1] tx = np.ascontiguousarray(t_x, dtype=np.float64)
    cdef double[::1] tw = np.ascontiguousarray(t_w, dtype=np.float64)
    cdef double[::1] ax = np.ascontiguousarray(a_x, dtype=np.float64)
    cdef double[::1] aw = np.ascontiguousarray(a_w, dtype=np.float64)
    cdef double[::1] bx = np.ascontiguousarray(b_x, dtype=np.float64)
    cdef double[::1] bw = np.ascontiguousarray(b_w, dtype=np.float64)
    cdef double[::1] cbs = np.cos(0.5 * np.asarray(bx))
    cdef double[::1] sbs = np.sin(0.5 * np.asarray(bx))
    cdef Py_ssize_t k, i, j, l
    cdef double total = 0.0, tsum, ct, st, cb, sb, psi, cpsi, spsi
    cdef double m11r, m11i, m12r, m12i, m13, m21r, m21i, m22r, m22i
    cdef double m31 , m32, m33, a11, a22, a33, a12, c0, c1, c2, w
    with nogil:
        for k in range(t_start, t_stop):
            ct = cos(tx[k])
            st = sin(tx[k])
            tsum = 0.0
            for i in range(gx.shape[0]):
                for j in range(ax.shape[0]):
                    # entries 1,2 of rows 1 and 2 carry the phases e^{±i(γ+a)/2}
                    psi = 0.5 * (gx[i] + ax[j])
                    cpsi = cos(psi)
                    spsi = sin(psi)
                    for l in range(bx.shape[0]):
                        cb = cbs[l]
                        sb = sbs[l]
                        m11r = ct * cb * cpsi
                        m11i = ct * cb * spsi
                        m12r = ct * sb * cpsi
                        m12i = ct * sb * spsi
                        m13 = st  # times e^{iγ/2}; cancels in |.|² and in row 1·row 2* (m23 = 0)
                        m21r = -sb * cpsi
                        m21i = sb * spsi
                        m22r = cb * cpsi
                        m22i = -cb * spsi
                        m31 = st * cb  # moduli only
                        m32 = st * sb
                        m33 = ct
                        a11 = p1 * (m11r * m11r + m11i * m11i) + p2 * (m12r * m12r + m12i * m12i) + p3 * m13 * m13
                        a22 = p1 * (m21r * m21r + m21i * m21i) + p2 * (m22r * m22r + m22i * m22i)
                        a33 = p1 * m31 * m31 + p2 * m32 * m32 + p3 * m33 * m33
                        a12 = p1 * (m11r * m21r + m11i * m21i) + p2 * (m12r * m22r + m12i * m22i)
                        c0 = r3 * a33 + 0.5 * (r1 + r2) * (a11 + a22)
                        c1 = 0.5 * (r1 - r2) * (a11 - a22)
                        c2 = (r1 - r2) * a12
                        w = gw[i] * aw[j] * bw[l]
                        tsum = tsum + w * _line(c0, c1, c2)
            total = total + tw[k] * tsum
    return total
