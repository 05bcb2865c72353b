"""Independent reference computations used only by the tests.

For a diagonal state ϱ = diag(r) and a kernel with one isolated eigenvalue,
W depends on a single column p = (|U_1k|², |U_2k|², |U_3k|²) of the Haar
unitary, and p is uniformly distributed on the probability simplex.  For the
ζ = 0 kernel W = 1 - 2 r·p, for ζ = π/3 W = 2 r·p - 1/3, both linear in p, so
E|W| reduces to exact integrals of a linear function over a clipped triangle.
"""
import numpy as np
from scipy import integrate, optimize


def clip_polygon(poly, f):
    """Part of ``poly`` where the affine function ``f`` is nonnegative."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = np.asarray(poly[i], float), np.asarray(poly[(i + 1) % n], float)
        fp, fq = f(p), f(q)
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def integrate_linear(poly, f):
    """Exact ∫ f over a convex polygon for affine ``f`` (centroid rule per triangle)."""
    total = 0.0
    for i in range(1, len(poly) - 1):
        a, b, c = poly[0], poly[i], poly[i + 1]
        area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
        total += area * f((a + b + c) / 3)
    return total


def dirichlet_positive_part(coef, const):
    """E[max(0, coef·p + const)] for p uniform on the 2-simplex."""
    c1, c2, c3 = coef

    def f(x):
        # p = (x0, x1, 1 - x0 - x1)
        return c1 * x[0] + c2 * x[1] + c3 * (1 - x[0] - x[1]) + const

    tri = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    clipped = clip_polygon(tri, f)
    if len(clipped) < 3:
        return 0.0
    return 2.0 * integrate_linear(clipped, f)  # uniform density 2 on area 1/2


def kz_zeta0_oracle(r):
    r = np.asarray(r, float)
    return 6.0 * dirichlet_positive_part(2 * r, -1.0)


def kz_zetapi3_oracle(r):
    r = np.asarray(r, float)
    return 6.0 * dirichlet_positive_part(-2 * r, 1.0 / 3.0)


def kz_qubit_oracle(r):
    """δ from the sphere integral: cos β is uniform on [-1, 1], total mass 2."""
    w = lambda u: abs(0.5 + np.sqrt(3) / 2 * r * u)  # noqa: E731
    pts = [-1 / (np.sqrt(3) * r)] if r > 1 / np.sqrt(3) else None
    val, _ = integrate.quad(w, -1, 1, points=pts, epsabs=1e-13, epsrel=1e-12)
    return val - 1.0


def xi_to_r(xi3, xi8):
    s3 = np.sqrt(3)
    return np.array([1 / 3 + xi3 / s3 + xi8 / 3, 1 / 3 - xi3 / s3 + xi8 / 3, 1 / 3 - 2 * xi8 / 3])


def char_poly_eigenvalues(m):
    """Eigenvalues of a Hermitian 3x3 matrix from its characteristic polynomial."""
    m = np.asarray(m, complex)
    c2 = -np.trace(m).real
    c1 = 0.5 * (np.trace(m).real ** 2 - np.trace(m @ m).real)
    c0 = -np.linalg.det(m).real
    return np.sort(np.roots([1.0, c2, c1, c0]).real)[::-1]


def brute_line_integral(c0, c1, c2):
    """Adaptive quadrature split at sign changes located by bracketing on a fine grid."""
    g = lambda b: c0 + c1 * np.cos(b) + c2 * np.sin(b)  # noqa: E731
    grid = np.linspace(0, np.pi, 4001)
    vals = g(grid)
    cuts = [0.0]
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        cuts.append(optimize.brentq(g, grid[i], grid[i + 1], xtol=1e-15))
    cuts.append(np.pi)
    f = lambda b: abs(g(b)) * np.sin(b)  # noqa: E731
    return sum(integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=1e-13)[0] for lo, hi in zip(cuts, cuts[1:]))


def random_density(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_su(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return q / np.linalg.det(q) ** (1 / dim)
