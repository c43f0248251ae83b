"""Henon certification: data integrity, chain, cones, disks, full driver."""

import pytest

from tangency.covering import VerificationInconclusive
from tangency.henon import (
    A0,
    B0,
    DIAM_ROWS,
    FORM_ROWS,
    LAM,
    MU,
    HenonConfig,
    build_chain,
    eigen_data,
    fixed_point,
    henon_family,
    projected_disk_data,
    run_proof,
    seed_quality,
    tangent_alignment,
)
from tangency.interval import Interval
from tangency.jets import Jet
from tangency.linalg import IntervalVector
from tangency.projective import check_inverse_consistency


class TestFamily:
    def test_forward_inverse_consistency(self):
        fam = henon_family()
        for box in (
            (Interval(-2.0, -1.9), Interval(-2.0, -1.9), Interval(A0)),
            (Interval(0.4, 0.5), Interval(-0.1, 0.0), Interval(A0)),
        ):
            assert check_inverse_consistency(fam, box) == 0.0

    def test_second_derivative_constant(self):
        # d^2(first component)/dx^2 = -2 everywhere, exactly.
        fam = henon_family()
        x = Jet.variable(0, Interval(-5.0, 5.0), 3)
        y = Jet.variable(1, Interval(-5.0, 5.0), 3)
        a = Jet.variable(2, Interval(1.0, 1.6), 3)
        fx, fy = fam.forward(x, y, a)
        assert fx.hess[0][0] == Interval(-2.0)
        assert fy.hess[0][0] == Interval(0.0)

    def test_zero_b_rejected(self):
        with pytest.raises(Exception):
            henon_family(0.0)


class TestFixedPointAndEigen:
    def test_fixed_point_value(self):
        x0, y0 = fixed_point()
        assert x0 == y0
        assert x0.contains(-1.9679632427827796)
        assert x0.width < 1e-13

    def test_fixed_point_residual(self):
        # ||H(z0) - z0|| encloses 0 with width below 1e-10.
        fam = henon_family()
        x0, y0 = fixed_point()
        fx, fy = fam.forward(x0, y0, Interval(A0))
        rx, ry = fx - x0, fy - y0
        assert rx.contains(0.0) and ry.contains(0.0)
        assert rx.width < 1e-10 and ry.width < 1e-10

    def test_eigenvalues_match_reference_decimals(self):
        # the reference decimals carry 10 significant digits
        eig = eigen_data()
        assert abs(eig["lam"].mid - LAM) < 5e-10
        assert abs(eig["mu"].mid - MU) < 5e-12
        assert eig["lam"].width < 1e-11
        assert eig["mu"].width < 1e-11

    def test_eigenvector_residuals(self):
        # DH(z0) u0 - lam u0 with the reference eigenvalue as input stays
        # below 1e-6 componentwise; same for s0, mu.
        eig = eigen_data()
        x0 = eig["x0"]
        for vec, val in ((eig["u0"], LAM), (eig["s0"], MU)):
            rx = (-2.0 * x0) * vec[0] + B0 * vec[1] - val * vec[0]
            ry = vec[0] - val * vec[1]
            assert rx.mag < 1e-6
            assert ry.mag < 1e-6

    def test_reference_eigenvector_components(self):
        eig = eigen_data()
        u0, s0 = eig["u0_mid"], eig["s0_mid"]
        assert abs(u0[0] - 0.9680131177714217873) < 1e-15
        assert abs(u0[1] - 0.250899589123719882) < 1e-15
        assert abs(s0[0] + 0.07752307795993337433) < 1e-15
        assert abs(s0[1] + 0.996990557820693689) < 1e-15


class TestSeedQuality:
    def test_reference_norm_bounds(self):
        back, forward = seed_quality()
        assert back <= 5.2e-5
        assert forward <= 1.2e-5

    def test_tangent_alignment(self):
        # The 14-step image of the unstable direction is microradian-close
        # to the stable direction; the exact value is seed-representation
        # sensitive, so only the magnitude scale is asserted.
        (u_lo, u_hi), (s_lo, s_hi) = tangent_alignment()
        assert u_hi - u_lo < 1e-12  # 240-bit evaluation is essentially exact
        assert abs(u_lo) < 5e-6
        assert 0.999999 < s_lo <= s_hi <= 1.0 + 1e-12


class TestChainData:
    def test_determinism(self, henon_chain):
        again = build_chain()
        assert again.centers == henon_chain.centers
        assert again.frames == henon_chain.frames

    def test_diameter_table_row9(self):
        d9 = DIAM_ROWS[9]
        assert d9 == (0.5, 1.25, 0.25, 1.01)
        chain_set = build_chain().sets[9]
        assert chain_set.unstable == (0, 2)
        assert chain_set.diam[0] == 0.5e-5
        assert chain_set.diam[3] == 1.01 * 1e-5

    def test_unstable_axis_split(self, henon_chain):
        for i, h in enumerate(henon_chain.sets):
            assert h.unstable == ((0, 3) if i <= 8 else (0, 2))

    def test_form_signs_follow_axes(self, henon_chain):
        for h, q in zip(henon_chain.sets, henon_chain.forms):
            assert q.unstable == h.unstable

    def test_step_enclosures_are_thin(self, henon_chain):
        for img in henon_chain.step_images:
            assert max(img.x.width, img.y.width, img.t.width) < 1e-12

    def test_orbit_consistency_interior(self, henon_chain):
        # The one-step image of each orbit center lands inside the next
        # orbit-centered set with positive margin (i = 1..13).
        for i in range(1, 14):
            img = henon_chain.step_images[i - 1]
            mid = IntervalVector(
                [img.x.mid, img.y.mid, img.t.mid, img.a.mid]
            )
            z = henon_chain.sets[i + 1].to_normalized(mid)
            for c in z:
                assert c.mag < 1.0

    def test_orbit_consistency_endpoint(self, henon_chain):
        # N15 is pinned at the fixed point, not at the 15th orbit point; the
        # image of c14 must enter through its stable direction (the covering
        # takes care of the expanding ones).
        img = henon_chain.step_images[13]
        mid = IntervalVector([img.x.mid, img.y.mid, img.t.mid, img.a.mid])
        z = henon_chain.sets[15].to_normalized(mid)
        assert z[1].mag < 1.0  # stable axis
        assert z[3].mag < 1.0  # parameter axis

    def test_frames_have_reference_structure(self, henon_chain):
        for m in henon_chain.frames:
            assert m[0][2] == m[0][3] == 0.0
            assert m[1][2] == m[1][3] == 0.0
            assert m[2] == (0.0, 0.0, 1.0, 0.0)
            assert m[3] == (0.0, 0.0, 0.0, 1.0)

    def test_param_radius_scales_only_parameter_column(self):
        base = build_chain()
        scaled = build_chain(param_radius=2e-5)
        for h1, h2 in zip(base.sets, scaled.sets):
            assert h2.diam[3] == pytest.approx(2.0 * h1.diam[3])
            assert h2.diam[:3] == h1.diam[:3]


class TestProofStages:
    def test_all_coverings_certified(self, henon_proof):
        cert, _ = henon_proof
        assert len(cert.coverings) == 15
        for c in cert.coverings:
            assert c.min_exit_margin() > 0.0
            assert c.entry_margin > 0.0
            assert c.grid == 1

    def test_switch_link_correspondence(self, henon_proof):
        cert, _ = henon_proof
        c8 = cert.coverings[8]
        pairing = {i: j for i, j, _ in c8.correspondence}
        assert pairing == {0: 2, 3: 0}

    def test_all_cone_links_certified(self, henon_proof):
        cert, _ = henon_proof
        assert len(cert.cones) == 15
        for c in cert.cones:
            assert c.rump.positive_definite
            assert len(c.rump.vertex_margins) == 8
            assert c.rump.min_margin() > 0.0

    def test_stable_disk_constants_in_bands(self, henon_proof):
        cert, _ = henon_proof
        c = cert.stable_disk.constants
        assert c.a_lower >= 0.9 * 0.099394300936541294
        assert c.m_upper <= 1.2 * 0.084042214456891598
        assert c.l_upper <= 1.5 * 0.0070394636406844067
        assert c.gamma_check > 0.0
        assert cert.stable_disk.comparison_lower > 1.0
        assert cert.stable_disk.param_coefficient == 2.0 * 1.5**-6

    def test_unstable_disk_constants_in_bands(self, henon_proof):
        cert, _ = henon_proof
        c = cert.unstable_disk.constants
        assert c.a_lower >= 0.9 * 0.1877584261322994
        assert c.m_upper <= 1.2 * 0.2795983187542756
        assert c.l_upper <= 1.5 * 0.015049353557694945
        assert cert.unstable_disk.comparison_lower > 1.0
        assert cert.unstable_disk.param_coefficient == 2.0 * 1.5**-8

    def test_delta_alpha_consistency(self, henon_proof):
        cert, _ = henon_proof
        for disk, alpha in (
            (cert.stable_disk, 0.3 / LAM**2),
            (cert.unstable_disk, MU**2),
        ):
            gamma_sq = disk.constants.gamma ** 2
            lo, hi = disk.constants.delta
            assert lo <= gamma_sq / alpha <= hi

    def test_conclusion_statement(self, henon_proof):
        cert, _ = henon_proof
        s = cert.conclusion["statement"]
        assert "1.3145271093265" in s
        assert "1e-05" in s
        assert "-0.3" in s

    def test_projected_sets_are_minors(self, henon_chain):
        for side, idx in (("stable", 15), ("unstable", 0)):
            ntilde, qtilde, param, p_coeff = projected_disk_data(
                henon_chain, side
            )
            big = henon_chain.sets[idx]
            assert ntilde.diam == big.diam[:3]
            assert ntilde.center == big.center[:3]
            assert param.contains(A0)
            assert p_coeff == abs(FORM_ROWS[idx][3])


class TestPerturbations:
    def test_inflated_radius_fails_loudly(self):
        with pytest.raises(VerificationInconclusive) as err:
            run_proof(HenonConfig(param_radius=1e-3))
        assert err.value.stage in ("covering", "cones", "manifold")

    def test_grid_two_reproduces_with_margins(self, henon_proof):
        cert1, _ = henon_proof
        cert2 = run_proof(HenonConfig(grid=2))
        for c1, c2 in zip(cert1.coverings, cert2.coverings):
            assert c2.correspondence == c1.correspondence
            # refinement keeps success and (up to midpoint rounding noise)
            # only tightens the margins
            assert c2.min_exit_margin() > 0.0 and c2.entry_margin > 0.0
            assert c2.min_exit_margin() >= c1.min_exit_margin() - 1e-9
            assert c2.entry_margin >= c1.entry_margin - 1e-9

    def test_determinism_of_full_run(self, henon_proof):
        cert1, _ = henon_proof
        cert2 = run_proof()
        d1, d2 = cert1.to_dict(), cert2.to_dict()
        d1.pop("timings")
        d2.pop("timings")
        assert d1 == d2

    def test_threaded_run_matches(self, henon_proof):
        cert1, _ = henon_proof
        cert2 = run_proof(HenonConfig(threads=3))
        d1, d2 = cert1.to_dict(), cert2.to_dict()
        d1.pop("timings")
        d2.pop("timings")
        assert d1 == d2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            HenonConfig(param_radius=0.0).validate()
        with pytest.raises(ValueError):
            HenonConfig(grid=0).validate()
        with pytest.raises(ValueError):
            HenonConfig(gamma_safety=1.5).validate()
        with pytest.raises(ValueError):
            HenonConfig(grids={"3": 0}).validate()
        with pytest.raises(ValueError):
            HenonConfig(grids={"99": 2}).validate()

    def test_per_link_grid_override(self, henon_proof):
        cert1, _ = henon_proof
        cert2 = run_proof(HenonConfig(grids={"8": 2}))
        assert cert2.coverings[8].grid == 2
        for i in (0, 7, 14):
            assert cert2.coverings[i].grid == 1
        assert cert2.coverings[8].min_exit_margin() >= (
            cert1.coverings[8].min_exit_margin() - 1e-9
        )
