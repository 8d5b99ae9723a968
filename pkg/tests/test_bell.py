import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phasebell import bell
from phasebell.errors import DomainError
from phasebell.phasespace import Annulus, Disk, WignerState

HEADLINE = 4 / math.sqrt(math.e) - 1
R_HALF = 1 / math.sqrt(2)

# Frozen from the independent polar-grid oracle (tests/oracles.py).
ABS_W5 = 2.383438522309581
ABS_W10 = 3.152523130008895


def lambda1_closed(R):
    return 1 - math.exp(-R * R) - 2 * R * R * math.exp(-R * R)


class TestEigenvalues:
    @pytest.mark.parametrize("R", [0.3, R_HALF, 1.0, 3.5, 5.5])
    def test_closed_forms(self, R):
        assert abs(bell.lambda_quadrature(0, R) - (1 - math.exp(-R * R))) < 1e-12
        assert abs(bell.lambda_quadrature(1, R) - lambda1_closed(R)) < 1e-12
        gen = bell.lambda_generating(1, R)
        assert abs(gen[0] - (1 - math.exp(-R * R))) < 1e-12
        assert abs(gen[1] - lambda1_closed(R)) < 1e-12

    def test_headline_eigenvalue(self):
        assert bell.lambda_quadrature(1, R_HALF) == pytest.approx(1 - 2 * math.exp(-0.5),
                                                                 abs=1e-14)
        assert bell.lambda_quadrature(1, R_HALF) == pytest.approx(-0.21306131942526685,
                                                                 abs=1e-14)

    def test_empty_disk(self):
        assert bell.lambda_interval(2, 0.0, 0.0) == 0.0
        assert np.all(bell.lambda_recurrence(40, 1e-9).values < 1e-15)

    @pytest.mark.parametrize("R", [R_HALF, 1.0, 3.5, 5.5])
    def test_three_routes_agree(self, R):
        quad = bell.lambda_series_quadrature(40, R).values
        gen = bell.lambda_generating(40, R).values
        rec = bell.lambda_recurrence(40, R).values
        assert np.max(np.abs(quad - gen)) < 1e-10
        assert np.max(np.abs(quad - rec)) < 1e-10
        assert np.max(np.abs(gen - rec)) < 1e-10

    def test_large_radius_limit(self):
        vals = bell.lambda_recurrence(10, 12.0).values
        assert np.max(np.abs(vals - 1)) < 1e-8

    def test_geometric_consistency(self):
        for m in range(11):
            for R in (R_HALF, 1.3, 2.6):
                assert abs(bell.lambda_quadrature(m, R) - oracles.disk_wigner_grid(m, R)) < 1e-6

    def test_annulus_additivity(self):
        for m in (0, 3, 8):
            got = bell.lambda_region(m, Annulus(0.9, 2.2))
            expected = bell.lambda_quadrature(m, 2.2) - bell.lambda_quadrature(m, 0.9)
            assert abs(got - expected) < 1e-10

    def test_series_container(self):
        series = bell.lambda_recurrence(5, 1.0)
        assert len(series) == 6 and series.method == "recurrence"
        assert np.allclose(series.bell_values, 1 - 2 * series.values)

    def test_guards(self):
        with pytest.raises(DomainError):
            bell.lambda_quadrature(101, 1.0)
        with pytest.raises(DomainError):
            bell.lambda_quadrature(-1, 1.0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 30), st.floats(0.05, 6.0))
    def test_recurrence_matches_quadrature(self, m, R):
        assert abs(bell.lambda_recurrence(m, R).values[m] - bell.lambda_quadrature(m, R)) < 1e-10


class TestBellValues:
    def test_headline(self):
        res = bell.bell_value_disk(1, R_HALF)
        assert res.value == pytest.approx(HEADLINE, abs=1e-12)
        assert res.violated and res.lhv_bound == 1.0

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.01, 8.0))
    def test_ground_state_never_violates(self, R):
        res = bell.bell_value_disk(0, R)
        assert res.value == pytest.approx(2 * math.exp(-R * R) - 1, abs=1e-12)
        assert -1 <= res.value <= 1 and not res.violated

    def test_large_radius(self):
        res = bell.bell_value_disk(4, 12.0)
        assert res.value == pytest.approx(-1.0, abs=1e-8) and not res.violated

    def test_violation_margin(self):
        assert not bell.BellResult.from_value(1.0 + 1e-13).violated
        assert bell.BellResult.from_value(1.0 + 1e-11).violated

    def test_figure1_rows(self):
        rows = bell.figure1_data()
        assert len(rows) == 31 * 3
        assert [r.R for r in rows] == sorted(r.R for r in rows)
        head = next(r for r in rows if r.m == 1 and r.R == R_HALF)
        assert head.abs_bell_value == pytest.approx(HEADLINE, abs=1e-12) and head.violated
        ground = next(r for r in rows if r.m == 0 and r.R == R_HALF)
        assert ground.abs_bell_value == pytest.approx(0.21306131942526696, abs=1e-12)
        for R in (3.5, 5.5):
            assert any(r.violated for r in rows if r.R == R)
        assert not any(r.violated for r in rows if r.m == 0)

    def test_abs_wigner_values(self):
        assert abs(bell.abs_wigner_integral(0) - 1) < 1e-11
        assert abs(bell.abs_wigner_integral(1) - HEADLINE) < 1e-10
        assert bell.abs_wigner_integral(5) == pytest.approx(ABS_W5, abs=1e-9)
        assert bell.abs_wigner_integral(10) == pytest.approx(ABS_W10, abs=1e-9)

    def test_abs_wigner_against_grid(self):
        for m in range(11):
            assert abs(bell.abs_wigner_integral(m) - oracles.abs_wigner_grid(m)) < 1e-6

    def test_abs_wigner_lower_bound(self):
        values = [v for _, v in bell.figure2_data(40)]
        assert values[0] == pytest.approx(1.0, abs=1e-11)
        assert all(v > 1 for v in values[1:])
        assert all(b > a for a, b in zip(values, values[1:]))


class TestBellState:
    def test_routes_agree(self):
        values = {route: bell.bell_state_value(route)
                  for route in ("lambda", "series", "abs-wigner", "factorized")}
        for v in values.values():
            assert abs(v - HEADLINE) < 1e-10

    def test_grid_route(self):
        assert abs(bell.bell_state_value("grid") - HEADLINE) < 1e-6

    def test_single_mode_general(self):
        res = bell.bell_expectation_general(WignerState.fock(0), Disk(1.4))
        assert res.value == pytest.approx(2 * math.exp(-1.96) - 1, abs=1e-8)
        assert not res.violated

    def test_unknown_route(self):
        with pytest.raises(DomainError):
            bell.bell_state_value("magic")


class TestCirelson:
    def test_bell_state_exceeds(self):
        cmp_ = bell.cirelson_ratio(bell.bell_value_disk(1, R_HALF))
        assert cmp_.flag == "exceeds" and cmp_.ratio == pytest.approx(HEADLINE)

    def test_flags(self):
        assert bell.cirelson_ratio(bell.BellResult.from_value(1.0)).flag == "below"
        assert bell.cirelson_ratio(bell.BellResult.from_value(math.sqrt(2))).flag == "equal"
        assert bell.cirelson_ratio(bell.BellResult.from_value(-1.5)).flag == "exceeds"


class TestCHSH:
    def test_commuting_observables(self):
        rng = np.random.default_rng(0)
        X1, X2 = bell.random_dichotomic(rng), bell.random_dichotomic(rng)
        state = bell.random_state(rng)
        B = bell.chsh_operator(X1, X1, X2, X2)
        assert abs(np.vdot(state, B @ B @ state) - 4) < 1e-12
        assert bell.chsh_identity_check(X1, X1, X2, X2, state) < 1e-12

    def test_random_suite(self):
        assert bell.chsh_random_suite(1000, 42) < 1e-12
        assert bell.chsh_random_suite(1000, 7) < 1e-12

    def test_standard_angles(self):
        value = bell.singlet_chsh_value((0.0, math.pi / 2, math.pi / 4, -math.pi / 4))
        assert abs(abs(value) - 2 * math.sqrt(2)) < 1e-12

    def test_optimizer(self):
        value, _ = bell.optimize_singlet_chsh(42)
        assert abs(value - 2 * math.sqrt(2)) < 1e-6

    def test_non_dichotomic_rejected(self):
        eye = np.eye(2)
        with pytest.raises(DomainError):
            bell.chsh_identity_check(0.5 * eye, eye, eye, eye, bell.SINGLET)

    def test_dichotomic_draws(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            X = bell.random_dichotomic(rng)
            assert np.allclose(X @ X, np.eye(2), atol=1e-14)
            assert np.allclose(X, X.conj().T, atol=1e-14)
