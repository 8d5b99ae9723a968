import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from phasebell.errors import ConfigurationError, DomainError
from phasebell.moyal import symbol_fock_diag
from phasebell.phasespace import (ORIGIN, Annulus, Complement, Disk, HalfPlane, PhaseGrid,
                                  PhasePoint, Predicate, WeylSymbol, WignerState,
                                  bell_symbol, characteristic_symbol, com_coords,
                                  com_transform, expectation, fock_projector_kernel,
                                  read_grid_csv, weyl_symbol_from_kernel, wigner_bell,
                                  wigner_fock, write_grid_csv)

HEADLINE = 4 / math.sqrt(math.e) - 1
finite = st.floats(-4.0, 4.0, allow_nan=False)


class TestPointsAndGrids:
    def test_point_validation(self):
        with pytest.raises(DomainError):
            PhasePoint(math.nan, 0.0)
        assert PhasePoint(3.0, 4.0).s == 25.0

    def test_com_examples(self):
        xc, dx = com_coords(PhasePoint(1, 0), PhasePoint(1, 0))
        assert xc.q == pytest.approx(math.sqrt(2)) and xc.p == 0.0
        assert dx == ORIGIN
        xc, _ = com_coords(PhasePoint(0.3, -1.2), PhasePoint(-0.3, 1.2))
        assert xc == ORIGIN

    def test_com_norm_preservation(self):
        rng = np.random.default_rng(0)
        for a, b in rng.normal(size=(100, 2, 2)):
            x1, x2 = PhasePoint(*a), PhasePoint(*b)
            xc, dx = com_coords(x1, x2)
            assert xc.s + dx.s == pytest.approx(x1.s + x2.s, rel=1e-14)

    @settings(max_examples=50)
    @given(st.lists(finite, min_size=4, max_size=4))
    def test_com_transform_is_involution(self, v):
        x = np.array(v)
        assert np.allclose(com_transform(com_transform(x)), x, atol=1e-14)

    def test_grid_validation(self):
        with pytest.raises(ConfigurationError):
            PhaseGrid(5.0, n=4)
        with pytest.raises(ConfigurationError):
            PhaseGrid(-1.0)

    def test_grid_csv_round_trip(self, tmp_path):
        grid = PhaseGrid(3.0, n=9)
        values = grid.sample(lambda x: wigner_fock(2, x))
        path = tmp_path / "w.csv"
        write_grid_csv(path, grid, values)
        grid2, values2 = read_grid_csv(path)
        assert grid2.n == grid.n and grid2.extent == pytest.approx(grid.extent)
        assert np.allclose(values2, values, rtol=1e-15)


class TestRegions:
    def test_disk_membership_and_boundary(self):
        d = Disk(1.0)
        assert d.contains([0.5, 0.0]) and not d.contains([2.0, 0.0])
        assert d.contains([1.0, 0.0])

    def test_validation(self):
        with pytest.raises(DomainError):
            Disk(0.0)
        with pytest.raises(DomainError):
            Annulus(2.0, 1.0)
        with pytest.raises(DomainError):
            HalfPlane("r")

    def test_double_complement(self):
        rng = np.random.default_rng(1)
        pts = rng.normal(scale=2, size=(500, 2))
        for region in (Disk(1.3), Annulus(0.5, 2.0), HalfPlane("p", 0.2)):
            assert np.array_equal(Complement(Complement(region)).contains(pts),
                                  region.contains(pts))

    def test_predicate(self):
        square = Predicate(lambda x: np.max(np.abs(x), axis=-1) <= 1)
        assert square.contains([0.9, -0.9]) and not square.contains([1.1, 0])
        assert not square.radial
        with pytest.raises(DomainError):
            square.intervals()


class TestCharacteristicSymbols:
    def test_examples(self):
        chi = characteristic_symbol(Disk(1.0), "-")
        assert chi([0.5, 0.0]) == 1.0         # x^2 = 0.25
        assert chi([2.0, 0.0]) == 0.0         # x^2 = 4

    def test_partition_of_unity(self):
        pts = np.random.default_rng(2).normal(scale=1.5, size=(1000, 2))
        for region in (Disk(1.0), Annulus(0.4, 1.7), HalfPlane("q", -0.3)):
            total = characteristic_symbol(region, "+")(pts) + characteristic_symbol(region, "-")(pts)
            assert np.all(total == 1.0)

    def test_boundary_inside(self):
        pt = [1.0, 0.0]
        assert characteristic_symbol(Disk(1.0), "-")(pt) == 1.0
        assert characteristic_symbol(Disk(1.0), "+")(pt) == 0.0

    def test_bell_symbol_dichotomic(self):
        b = bell_symbol(Disk(0.8))
        vals = b(np.random.default_rng(3).normal(size=(300, 2)))
        assert set(np.unique(vals.real)) <= {-1.0, 1.0} and b.bound == 1.0 and b.dichotomic

    def test_dichotomic_guard(self):
        bad = WeylSymbol.radial_profile(lambda s: 0.5 + 0 * s, dichotomic=True)
        with pytest.raises(DomainError):
            bad([0.1, 0.1])

    def test_radial_matches_analytic(self):
        rng = np.random.default_rng(4)
        pts = rng.normal(size=(50, 2))
        radial = WeylSymbol.radial_profile(lambda s: np.exp(-s) * (1 - s))
        analytic = WeylSymbol.analytic(lambda x: np.exp(-(x ** 2).sum(-1)) * (1 - (x ** 2).sum(-1)))
        assert np.allclose(radial(pts), analytic(pts), atol=1e-14, rtol=0)

    def test_symbol_algebra(self):
        f = WeylSymbol.polynomial({(1, 0): 1.0})
        g = WeylSymbol.polynomial({(0, 1): 2.0})
        x = np.array([0.7, -0.4])
        assert (f + g)(x) == pytest.approx(0.7 - 0.8)
        assert (f * g)(x) == pytest.approx(0.7 * -0.8)
        assert (f - g).conj()(x) == pytest.approx(0.7 + 0.8)
        assert f.shifted([1.0, 0.0])(x) == pytest.approx(1.7)


class TestWigner:
    def test_origin_values(self):
        assert wigner_fock(0, ORIGIN) == pytest.approx(1 / math.pi, rel=1e-15)
        assert wigner_fock(1, ORIGIN) == pytest.approx(-1 / math.pi, rel=1e-15)

    def test_against_definition_integral(self):
        # W_m = Smb[|m><m|] / (2 pi) with Smb from the position-space integral
        rng = np.random.default_rng(5)
        for m in (0, 1, 3):
            for q, p in rng.uniform(-2, 2, (4, 2)):
                ref = oracles.definition_symbol(m, m, q, p).real / (2 * math.pi)
                assert wigner_fock(m, (q, p)) == pytest.approx(ref, abs=1e-12)

    def test_library_kernel_route(self):
        for m in (0, 2, 5):
            got = weyl_symbol_from_kernel(fock_projector_kernel(m, m), 0.4, -0.9)
            assert got.real == pytest.approx(symbol_fock_diag(m, (0.4, -0.9)), abs=1e-12)

    @pytest.mark.parametrize("m", [0, 1, 5])
    def test_normalization(self, m):
        assert expectation(WignerState.fock(m), WeylSymbol.constant(1.0)).real == \
            pytest.approx(1.0, abs=1e-10)

    def test_normalization_grid_rule_to_m30(self):
        one = WeylSymbol.analytic(lambda x: np.ones(x.shape[:-1]), decays=False)
        for m in (0, 7, 18, 30):
            assert abs(expectation(WignerState.fock(m), one, tol=1e-8) - 1) < 1e-8

    def test_parity(self):
        rng = np.random.default_rng(6)
        r = 1.37
        angles = rng.uniform(0, 2 * math.pi, 100)
        pts = np.stack([r * np.cos(angles), r * np.sin(angles)], axis=-1)
        for m in (1, 4, 9):
            vals = wigner_fock(m, pts)
            assert np.max(np.abs(vals - vals[0])) < 1e-13

    @settings(max_examples=100)
    @given(finite, finite)
    def test_zero_locus(self, q, p):
        s = q * q + p * p
        if abs(s - 0.5) > 1e-12:
            assert (wigner_fock(1, (q, p)) < 0) == (s < 0.5)

    def test_bell_state_values(self):
        assert wigner_bell(ORIGIN, ORIGIN) == pytest.approx(-1 / math.pi ** 2)
        assert wigner_bell(ORIGIN, (math.sqrt(0.5), 0.0)) == pytest.approx(0.0, abs=1e-16)

    def test_bell_state_factorizes(self):
        rng = np.random.default_rng(7)
        xc, dx = rng.normal(size=(2, 100, 2))
        assert np.allclose(wigner_bell(xc, dx), wigner_fock(0, xc) * wigner_fock(1, dx),
                           rtol=1e-13, atol=1e-16)

    def test_bell_state_lab_frame(self):
        x1, x2 = PhasePoint(0.3, -0.5), PhasePoint(1.1, 0.2)
        xc, dx = com_coords(x1, x2)
        state = WignerState.bell()
        assert state([x1.q, x1.p, x2.q, x2.p]) == pytest.approx(wigner_bell(xc, dx))

    def test_bell_state_normalization(self):
        one = WeylSymbol.constant(1.0, modes=2)
        assert abs(expectation(WignerState.bell(), one, tol=1e-6) - 1) < 1e-6


class TestExpectation:
    def test_ground_state_energy(self):
        energy = WeylSymbol.polynomial({(2, 0): 0.5, (0, 2): 0.5})
        assert expectation(WignerState.fock(0), energy).real == pytest.approx(0.5, abs=1e-10)
        assert expectation(WignerState.fock(3), energy).real == pytest.approx(3.5, abs=1e-9)

    def test_radial_vs_grid(self):
        state = WignerState.fock(2)
        chi = characteristic_symbol(Disk(1.1), "-")
        radial = expectation(state, chi, tol=1e-12)
        plain = WeylSymbol.analytic(chi.func, decays=False)
        cartesian = expectation(state, plain, tol=1e-2, n=400)
        assert abs(radial - cartesian) < 5e-3
        assert radial.real == pytest.approx(oracles.disk_wigner_grid(2, 1.1), abs=1e-12)

    def test_bell_state_headline(self):
        b = WeylSymbol.radial_profile(lambda s: np.sign(2 * s - 1) + 0j, breaks=(0.5,),
                                      dichotomic=True)
        from phasebell.phasespace import relative_symbol
        value = expectation(WignerState.bell(), relative_symbol(b), tol=1e-7)
        assert value.real == pytest.approx(HEADLINE, abs=1e-6)

    def test_product_state(self):
        state = WignerState.product([WignerState.fock(0), WignerState.fock(1)])
        q1sq = WeylSymbol.polynomial({(2, 0, 0, 0): 1.0, (0, 0, 2, 0): 1.0}, modes=2)
        # <q^2> = (2m+1)/2 per mode
        assert expectation(state, q1sq, tol=1e-8).real == pytest.approx(0.5 + 1.5, abs=1e-8)

    def test_grid_state(self):
        grid = PhaseGrid(7.0, n=161)
        state = WignerState.from_grid(grid, grid.sample(lambda x: wigner_fock(0, x)))
        assert expectation(state, WeylSymbol.constant()).real == pytest.approx(1.0, abs=1e-8)

    def test_mode_mismatch(self):
        with pytest.raises(DomainError):
            expectation(WignerState.bell(), WeylSymbol.constant())
