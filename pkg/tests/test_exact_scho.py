import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import simpson

import _oracles as O
from confosc.exact_scho import (RootSearchError, kummer_1f1, pib_energy,
                                pib_measures, scho_eigenvalue,
                                scho_wavefunction)
from confosc.model import DomainError, box_grid

# Native-units quantization roots, frozen from tests/_oracles.mp_scho_eigenvalue
# (dps=40; dps=50 agrees on every printed digit).
ROOT_TRUTHS = {
    (0, 0.25): 19.74329275027983,
    (1, 0.25): 78.96566859568605,
    (0, 1.0): 1.298459832032057,
    (2, 1.0): 11.25882578148291,
    (0, 2.0): 0.5374612092816752,
    (1, 2.0): 1.764816438780637,
    (2, 2.0): 3.399788241107422,
    (3, 2.0): 5.584639079031242,
    (0, 5.0): 0.5000000000767171,
    (0, 6.0): 0.5000000000000016,
    (2, 6.0): 2.500000000003671,
    (4, 6.0): 4.500000001280182,
}

# Reduced-units level ladder, frozen from mp_scho_dimensionless (dps=40).
DIMENSIONLESS_TRUTHS = {
    0.001: (1.23376589502694, 4.93494353635755, 11.1034603601007,
            19.7393691364263, 30.8426763673508),
    0.01: (1.23435394574692, 4.93621550846509, 11.1048590505769,
           19.740812158593, 30.844139904321),
    0.1: (1.24022918197255, 4.94893026009375, 11.1188469995053,
          19.7552437590409, 30.8587764074198),
}


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


@given(a=st.floats(0.1, 2.0), b=st.floats(2.5, 5.0), z=st.floats(-3.0, 3.0))
def test_kummer_against_exact_rational_series(a, b, z):
    # b > a > 0: every term positive for z > 0, mild alternation for z < 0,
    # so the exact-rational series is the reference to nearly full precision
    ours = kummer_1f1(a, b, z)
    exact = float(O.frac_1f1(repr(a), repr(b), repr(z)))
    assert math.isclose(ours, exact, rel_tol=1e-12)


@pytest.mark.parametrize("a,b,z,rel", [
    (-3.7, 0.5, 9.0, 1e-9),       # oscillatory regime used by the root scans
    (-0.95, 1.5, 25.0, 1e-8),
    (-2.25, 0.5, 36.0, 1e-7),     # x_c = 6 wall argument
    (0.25, 0.5, 4.0, 1e-12),
])
def test_kummer_oscillatory_spot_checks(a, b, z, rel):
    assert math.isclose(kummer_1f1(a, b, z), O.mp_1f1(a, b, z), rel_tol=rel)


def test_kummer_negative_argument_transform():
    # 1F1(a;b;-z) = e^{ -z } 1F1(b-a;b;z): check against mpmath directly
    assert math.isclose(kummer_1f1(0.75, 1.5, -20.0),
                        O.mp_1f1(0.75, 1.5, -20.0), rel_tol=1e-11)


def test_kummer_domain_cap():
    with pytest.raises(DomainError):
        kummer_1f1(0.3, 0.5, 50.0001)
    with pytest.raises(DomainError):
        kummer_1f1(0.3, 0.5, -50.0001)


@given(a=st.floats(-4.0, 2.0), z=st.floats(0.1, 10.0))
def test_kummer_contiguous_identity(a, z):
    # a 1F1(a+1;b;z) = a 1F1(a;b;z) + z (a/b) 1F1(a+1;b+1;z) with b = 1/2:
    # a three-point consistency relation the series must satisfy
    b = 0.5
    lhs = a * kummer_1f1(a + 1.0, b, z)
    rhs = a * kummer_1f1(a, b, z) + z * (a / b) * kummer_1f1(a + 1.0, b + 1.0, z)
    scale = max(1.0, abs(lhs), abs(rhs))
    assert abs(lhs - rhs) / scale < 5e-9


# ---------------------------------------------------------------------------
# quantization roots
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("key", sorted(ROOT_TRUTHS))
def test_eigenvalue_against_oracle_truths(key):
    n, x_c = key
    assert math.isclose(scho_eigenvalue(n, x_c), ROOT_TRUTHS[key],
                        rel_tol=0, abs_tol=5e-11)


def test_eigenvalue_live_oracle_link():
    # one live multiprecision comparison so the frozen table stays honest
    ours = scho_eigenvalue(1, 1.3)
    truth = O.mp_scho_eigenvalue(1, 1.3, dps=25)
    assert math.isclose(ours, truth, abs_tol=1e-10)


@pytest.mark.parametrize("eta", sorted(DIMENSIONLESS_TRUTHS))
def test_dimensionless_ladder(eta):
    x_c = eta ** 0.25
    for n, truth in enumerate(DIMENSIONLESS_TRUTHS[eta]):
        val = x_c * x_c * scho_eigenvalue(n, x_c)
        assert math.isclose(val, truth, rel_tol=0, abs_tol=5e-9)


def test_reduced_ground_reference_value():
    # published five-state reference, weakest well: 1.2337658950 +- 1e-7
    x_c = 0.001 ** 0.25
    assert abs(x_c * x_c * scho_eigenvalue(0, x_c) - 1.2337658950) < 1e-7


def test_levels_increase_and_clear_open_line_bound():
    # gaps never fall below the open-line spacing 1 and every level clears
    # (n + 1/2); slack 1e-9 covers the bisection tolerance on the roots
    for x_c in (0.5, 2.0, 6.0):
        eps = [scho_eigenvalue(n, x_c) for n in range(5)]
        assert all(b - a >= 1.0 - 1e-9 for a, b in zip(eps, eps[1:]))
        assert all(e > n + 0.5 - 1e-9 for n, e in enumerate(eps))


def test_root_scan_failure_is_reported():
    with pytest.raises((RootSearchError, DomainError)):
        scho_eigenvalue(0, 7.5)      # wall argument z = 56.25 beyond the cap


# ---------------------------------------------------------------------------
# wavefunctions
# ---------------------------------------------------------------------------


def test_wavefunction_normalized_nodes_parity(xc2_grid, xc2_exact):
    x = xc2_grid.points
    for n, state in enumerate(xc2_exact):
        vals = state.values
        assert len(vals) == xc2_grid.n_points
        assert abs(vals[0]) < 1e-9 and abs(vals[-1]) < 1e-9
        assert math.isclose(simpson(vals ** 2, x=x), 1.0, abs_tol=1e-10)
        interior = vals[1:-1]
        signs = np.sign(interior[np.abs(interior) > 1e-8])
        nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))
        assert nodes == n
        mirrored = vals[::-1]
        if n % 2 == 0:
            assert np.allclose(vals, mirrored, atol=1e-9)
        else:
            assert np.allclose(vals, -mirrored, atol=1e-9)


def test_wavefunction_gram_identity(xc2_grid, xc2_exact):
    x = xc2_grid.points
    gram = np.array([[simpson(a.values * b.values, x=x) for b in xc2_exact]
                     for a in xc2_exact])
    assert np.max(np.abs(gram - np.eye(len(xc2_exact)))) < 1e-9


def test_wavefunction_centre_positive_convention(xc2_exact):
    # sign fixed so every state is positive just right of the box centre
    # (the fixture grid has an even point count, so the middle sample sits
    # at +h/2 where odd states are already nonzero)
    for state in xc2_exact:
        vals = state.values
        assert vals[len(vals) // 2] > 0


# ---------------------------------------------------------------------------
# flat-box closed forms
# ---------------------------------------------------------------------------


@given(n=st.integers(0, 5), x_c=st.floats(0.3, 6.0))
def test_pib_closed_forms_match_oracle_forms(n, x_c):
    # pib_measures counts states from 1, pib_energy from 0 (documented)
    s_x, e_x, i_x = pib_measures(n + 1, x_c)
    assert math.isclose(e_x, O.pib_onicescu_x(x_c), rel_tol=1e-13)
    assert math.isclose(i_x, O.pib_fisher_x(n, x_c), rel_tol=1e-13)
    assert math.isclose(s_x, math.log(4.0 * x_c) - 1.0, rel_tol=0,
                        abs_tol=1e-13)
    assert math.isclose(pib_energy(n, x_c), O.pib_energy(n, x_c),
                        rel_tol=1e-14)


def test_pib_measures_rejects_zero_index():
    with pytest.raises(DomainError):
        pib_measures(0, 1.0)


def test_pib_entropy_form_against_quadrature():
    # multiprecision quadrature pins the ln(4 x_c) - 1 closed form; the
    # integrand has log kinks at the interior nodes, so split there
    for n, x_c in ((0, 1.0), (3, 2.5)):
        nodes = [-x_c + j * 2.0 * x_c / (n + 1) for j in range(n + 2)]
        s_quad = O.mp_entropy_split(O.pib_density(n, x_c), nodes)
        assert math.isclose(s_quad, math.log(4.0 * x_c) - 1.0, abs_tol=1e-12)


def test_pib_ground_energy_value():
    assert math.isclose(pib_energy(2, 1.0), 9.0 * math.pi ** 2 / 8.0,
                        rel_tol=1e-15)
