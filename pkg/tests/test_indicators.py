import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kzwigner.indicators import (
    _branch_arqs,
    _branch_cqr,
    REGIONS,
    VERTICES,
    IntegratorConfig,
    classify_region,
    euclidean_positive_fraction,
    global_indicator,
    hs_density,
    hs_orbit_integral,
    kz_closed,
    kz_closed_qubit,
    kz_closed_qutrit_zeta0,
    kz_closed_qutrit_zetapi3,
    kz_numeric,
    parse_degenerate_zeta,
    region_polygon,
)
from kzwigner.states import BlochState, SimplexDomainError, qutrit_diagonal_state
from kzwigner.swkernel import KernelModuli
from oracles import kz_qubit_oracle, kz_zeta0_oracle, kz_zetapi3_oracle, random_su, xi_to_r

S3 = np.sqrt(3)
simplex_points = st.tuples(st.floats(0, 1), st.floats(0, 1)).map(
    lambda uv: (uv[0] * S3 / 2, uv[0] / 2 + uv[1] * (0.5 - uv[0] / 2))
)


def test_qubit_closed_examples():
    assert kz_closed_qubit(1 / S3) == pytest.approx(0, abs=1e-15)
    assert kz_closed_qubit(1.0) == pytest.approx(2 / S3 - 1, abs=1e-15)
    assert kz_closed_qubit(0.0) == 0
    with pytest.raises(ValueError):
        kz_closed_qubit(1.1)


@pytest.mark.parametrize("r", np.linspace(0.05, 1, 20))
def test_qubit_closed_vs_oracle(r):
    assert kz_closed_qubit(r) == pytest.approx(kz_qubit_oracle(r), abs=1e-10)


@pytest.mark.parametrize("zeta_fn, point, value", [
    (kz_closed_qutrit_zeta0, (0, 0), 0),
    (kz_closed_qutrit_zeta0, (S3 / 2, 0.5), 0.5),
    (kz_closed_qutrit_zeta0, (S3 / 8, 1 / 8), 0),
    (kz_closed_qutrit_zetapi3, (0, 0), 0),
    (kz_closed_qutrit_zetapi3, (S3 / 2, 0.5), 17 / 54),
    (kz_closed_qutrit_zetapi3, (0.2, 0.25), 0),
])
def test_closed_examples(zeta_fn, point, value):
    assert zeta_fn(*point) == pytest.approx(value, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(simplex_points)
def test_closed_forms_match_oracles(pt):
    r = xi_to_r(*pt)
    assert abs(kz_closed_qutrit_zeta0(*pt) - kz_zeta0_oracle(r)) < 1e-5
    assert abs(kz_closed_qutrit_zetapi3(*pt) - kz_zetapi3_oracle(r)) < 1e-5


def test_closed_forms_match_oracles_away_from_singular_edges(rng):
    # interior points: agreement to roundoff
    for _ in range(500):
        u, v = rng.uniform(0.02, 0.98, 2)
        pt = (u * S3 / 2, u / 2 + v * (0.5 - u / 2))
        r = xi_to_r(*pt)
        assert abs(kz_closed_qutrit_zeta0(*pt) - kz_zeta0_oracle(r)) < 1e-12
        assert abs(kz_closed_qutrit_zetapi3(*pt) - kz_zetapi3_oracle(r)) < 1e-12


def test_singular_vertices_flagged():
    # next to vertex A inside APC, where ξ₃(ξ₃+√3ξ₈) → 0
    res = kz_closed(1e-12, 0.5 - 1e-12, 0.0)
    assert "boundary-limit" in res.flags and res.value == pytest.approx(0, abs=1e-5)
    assert kz_closed(0.0, 0.5, 0.0).value == 0
    res = kz_closed(S3 / 2, 0.5, np.pi / 3)
    assert res.flags == () and res.method == "closed-form" and res.stratum == "(12|3)"
    edge = kz_closed(S3 * 0.4, 0.4, np.pi / 3)  # on ξ₃ = √3ξ₈, ARQS denominator vanishes
    r = xi_to_r(S3 * 0.4, 0.4)
    assert edge.value == pytest.approx(kz_zetapi3_oracle(r), abs=1e-5)


def test_outside_simplex():
    with pytest.raises(SimplexDomainError):
        kz_closed_qutrit_zeta0(0.5, 0.1)
    with pytest.raises(SimplexDomainError):
        classify_region(-0.1, 0.2, 0)


def test_parse_zeta():
    assert parse_degenerate_zeta("pi/3") == 1
    assert parse_degenerate_zeta(0) == 0
    with pytest.raises(ValueError):
        parse_degenerate_zeta(0.5)


def test_classify_examples():
    assert classify_region(0.1, 0.4, 0) == "APC"
    assert classify_region(0, 0, 0) == "OAP"
    assert classify_region(0, 0, np.pi / 3) == "OSQ"
    assert classify_region(0, 0.2, np.pi / 3) == "OSQ"
    assert classify_region(0.1, 0.4, np.pi / 3) == "ARQS"
    assert classify_region(0.8, 0.49, np.pi / 3) == "CQR"
    # boundary points go to the zero region
    assert classify_region(*VERTICES["P"], 0) == "OAP"
    assert classify_region(0.1, 0.25, np.pi / 3) == "OSQ"


@settings(max_examples=300, deadline=None)
@given(simplex_points)
def test_zero_region_iff_zero_indicator(pt):
    r = xi_to_r(*pt)
    # depth inside the negative region in eigenvalue terms; δ grows like depth³
    cases = ((0, kz_zeta0_oracle, r[0] - 0.5), (np.pi / 3, kz_zetapi3_oracle, 1 / 6 - r[2]))
    for zeta, oracle, depth in cases:
        zero = classify_region(*pt, zeta) in ("OAP", "OSQ")
        val = oracle(r)
        assert val >= -1e-15
        if abs(depth) > 1e-12:
            assert zero == (depth < 0)
        if zero:
            assert val < 1e-12
        elif depth > 1e-4:
            assert val > 0


def test_vertex_r_from_branch_matching():
    # R lies on AC (ξ₈ = 1/2) where the ARQS and CQR branch values coincide.
    x = VERTICES["R"][0]
    assert _branch_arqs(x, 0.5) == pytest.approx(_branch_cqr(x, 0.5), abs=1e-12)
    h = 1e-5
    d1 = (_branch_arqs(x + h, 0.5) - _branch_arqs(x - h, 0.5)) / (2 * h)
    d2 = (_branch_cqr(x + h, 0.5) - _branch_cqr(x - h, 0.5)) / (2 * h)
    assert d1 == pytest.approx(d2, abs=1e-6)


def test_regions_partition_simplex(rng):
    def area(poly):
        p = np.array(poly)
        return 0.5 * abs(np.dot(p[:, 0], np.roll(p[:, 1], -1)) - np.dot(p[:, 1], np.roll(p[:, 0], -1)))

    total = area(region_polygon("OAC"))
    assert total == pytest.approx(S3 / 8, rel=1e-14)
    assert area(region_polygon("OAP")) + area(region_polygon("APC")) == pytest.approx(total, rel=1e-14)
    parts = sum(area(region_polygon(k)) for k in ("OSQ", "ARQS", "CQR"))
    assert parts == pytest.approx(total, rel=1e-14)
    assert area(region_polygon("OAP")) == pytest.approx(S3 / 32, rel=1e-14)
    assert area(region_polygon("OSQ")) == pytest.approx(S3 / 32, rel=1e-14)


@pytest.mark.parametrize("zeta", [0, np.pi / 3])
def test_euclidean_fraction(zeta):
    assert euclidean_positive_fraction(zeta) == 0.25


@pytest.mark.parametrize("region, value", [("OAC", 1 / 10080), ("OAP", 1 / 2580480), ("OSQ", 1 / 2580480)])
def test_hs_orbit_integrals(region, value):
    assert hs_orbit_integral(region) == pytest.approx(value, rel=1e-9)


def test_hs_regions_add_up():
    neg = hs_orbit_integral("ARQS") + hs_orbit_integral("CQR") + hs_orbit_integral("OSQ")
    assert neg == pytest.approx(hs_orbit_integral("OAC"), rel=1e-9)
    with pytest.raises(ValueError):
        hs_orbit_integral("XYZ")


def test_hs_density_ginibre_cross_check():
    # Ginibre G G† / tr has the Hilbert-Schmidt law; compare ordered-spectrum
    # histogram mass in △OAP with the w₃ ratio.
    rng = np.random.default_rng(9)
    n = 200_000
    g = rng.normal(size=(n, 3, 3)) + 1j * rng.normal(size=(n, 3, 3))
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    ev = np.sort(np.linalg.eigvalsh(rho), axis=1)[:, ::-1]
    ev /= ev.sum(axis=1, keepdims=True)
    p = np.mean(ev[:, 0] <= 0.5)
    expected = 1 / 256
    assert abs(p - expected) < 4 * np.sqrt(expected * (1 - expected) / n)


def test_hs_density_formula():
    assert hs_density(0.5, 0.5) == pytest.approx(8 / (9 * S3) / 144, rel=1e-14)


@pytest.mark.parametrize("zeta, measure, value", [
    (0, "euclidean", 0.25), (np.pi / 3, "euclidean", 0.25),
    (0, "hs", 1 / 256), (np.pi / 3, "hilbert-schmidt", 1 / 256),
])
def test_global_exact(zeta, measure, value):
    assert global_indicator(zeta, measure).value == value


@pytest.mark.parametrize("zeta, measure, value", [(0, "euclidean", 0.25), (np.pi / 3, "hs", 1 / 256)])
def test_global_sampling(zeta, measure, value):
    res = global_indicator(zeta, measure, method="sampling", samples=200_000, seed=1)
    assert abs(res.value - value) <= 3 * res.error_estimate
    again = global_indicator(zeta, measure, method="sampling", samples=200_000, seed=1)
    assert again == res


def test_global_errors():
    with pytest.raises(ValueError):
        global_indicator(0, "bures")
    with pytest.raises(ValueError):
        global_indicator(0, method="guess")


BOUNDARIES = [(0.0, "A", "P"), (np.pi / 3, "S", "Q"), (np.pi / 3, "Q", "R")]


def boundary_pairs(zeta, a, b, count=25):
    """Points 1e-6 either side of segment ab, along its normal."""
    pa, pb = np.array(VERTICES[a]), np.array(VERTICES[b])
    d = pb - pa
    n = np.array([d[1], -d[0]]) / np.hypot(*d)
    for t in np.linspace(0.02, 0.98, count):
        base = pa + t * d
        yield base + 1e-6 * n, base - 1e-6 * n


@pytest.mark.parametrize("zeta, a, b", BOUNDARIES)
def test_continuity_across_boundaries(zeta, a, b):
    for p, q in boundary_pairs(zeta, a, b):
        assert classify_region(*p, zeta) != classify_region(*q, zeta)
        assert abs(kz_closed(*p, zeta).value - kz_closed(*q, zeta).value) <= 1e-9


def test_numeric_trivial_cases():
    cfg = IntegratorConfig(nodes=16)
    assert kz_numeric(BlochState(2, [0, 0, 0.3]), KernelModuli.qubit(), cfg).value == pytest.approx(0, abs=1e-8)
    for zeta in (0.0, 0.5, np.pi / 3):
        res = kz_numeric(BlochState(3, np.zeros(8)), KernelModuli.qutrit(zeta), cfg)
        assert res.value == pytest.approx(0, abs=1e-8)


def test_numeric_vertex_c():
    res = kz_numeric(qutrit_diagonal_state(S3 / 2, 0.5), KernelModuli.qutrit(0))
    assert res.value == pytest.approx(0.5, abs=1e-6)
    assert res.method == "quadrature" and res.stratum == "(1|23)" and res.converged


def test_numeric_mc_path(rng):
    res = kz_numeric(qutrit_diagonal_state(S3 / 2, 0.5), KernelModuli.qutrit(np.pi / 3),
                     IntegratorConfig(method="mc", samples=50_000, seed=3))
    assert res.method == "monte-carlo"
    assert abs(res.value - 17 / 54) < 4 * res.error_estimate


def test_numeric_rejects_mismatch():
    with pytest.raises(ValueError):
        kz_numeric(BlochState(2, [0, 0, 0]), KernelModuli.qutrit(0))


def test_region_table_complete():
    assert set(REGIONS) == {"OAC", "OAP", "APC", "OSQ", "ARQS", "CQR"}


def test_mc_invariance_under_conjugation(rng):
    r = np.array([0.7, 0.2, 0.1])
    m = KernelModuli.qutrit(0.0)
    ref = kz_numeric(BlochState.from_matrix(np.diag(r)), m).value
    g = random_su(rng, 3)
    res = kz_numeric(BlochState.from_matrix(g @ np.diag(r) @ g.conj().T), m,
                     IntegratorConfig(method="mc", samples=50_000, seed=8))
    assert abs(res.value - ref) < 4 * res.error_estimate
