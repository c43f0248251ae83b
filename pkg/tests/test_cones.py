"""Cone machinery: Rump's vertex reduction, interval Cholesky, cone matrices."""

import random

import numpy as np
import pytest

from tangency.cones import (
    cone_matrix,
    interval_cholesky_min_pivot,
    midrad_split,
    rump_positive_definite,
    symmetrize,
)
from tangency.interval import Interval
from tangency.linalg import IntervalMatrix, IntervalVector
from tangency.toy import ToyParams, switch_cone_blocks, switch_cone_matrix


def _sym_interval_matrix(rng, n, scale=2.0, rad=0.3):
    c = [[rng.uniform(-scale, scale) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            c[i][j] = c[j][i]
        c[i][i] += n * scale * 0.6  # push toward diagonal dominance sometimes
    r = [[rng.uniform(0.0, rad) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            r[i][j] = r[j][i]
    rows = [
        [Interval(c[i][j] - r[i][j], c[i][j] + r[i][j]) for j in range(n)]
        for i in range(n)
    ]
    return IntervalMatrix(rows), c, r


def _vertex_matrices(c, r):
    n = len(c)
    out = []
    from itertools import product

    for tail in product((1, -1), repeat=n - 1):
        z = (1,) + tail
        out.append(
            np.array(
                [[c[i][j] - z[i] * z[j] * r[i][j] for j in range(n)] for i in range(n)]
            )
        )
    return out


class TestRump:
    def test_diagonal_interval_matrix(self):
        m = IntervalMatrix(
            [[Interval(1, 2), Interval(0.0)], [Interval(0.0), Interval(3, 4)]]
        )
        res = rump_positive_definite(m)
        assert res.positive_definite
        assert len(res.vertex_margins) == 2
        assert res.min_margin() > 0.0

    def test_identity_with_rank_one_radius(self):
        # A_c = I, A_0 = 0.6 * ones: vertices I -+ 0.6 D(z) J D(z); decided
        # and cross-checked against an eigenvalue oracle per vertex.
        n = 2
        rows = [
            [Interval(1.0 - 0.6, 1.0 + 0.6) if i == j else Interval(-0.6, 0.6)
             for j in range(n)]
            for i in range(n)
        ]
        m = IntervalMatrix(rows)
        res = rump_positive_definite(m)
        c = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
        r = [[0.6] * n for _ in range(n)]
        eigs = [np.linalg.eigvalsh(v).min() for v in _vertex_matrices(c, r)]
        assert res.positive_definite == all(e > 0 for e in eigs)

    def test_vertex_count_is_half(self):
        m, _, _ = _sym_interval_matrix(random.Random(5), 4)
        res = rump_positive_definite(m)
        assert len(res.vertex_margins) == 8  # 2^(4-1)

    def test_agreement_with_eigenvalue_oracle(self, rng):
        # Acceptance runs the full 1e3-sample version.
        for _ in range(200):
            n = rng.choice([2, 3])
            m, c, r = _sym_interval_matrix(rng, n)
            res = rump_positive_definite(m)
            mins = [np.linalg.eigvalsh(v).min() for v in _vertex_matrices(c, r)]
            if res.positive_definite:
                # no sampled point matrix may contradict the certificate
                assert all(e > 0 for e in mins)
            else:
                # inconclusive: some vertex must be near-singular or worse
                assert min(mins) < 1e-8

    def test_split_is_outward(self, rng):
        m, _, _ = _sym_interval_matrix(rng, 3)
        c, r = midrad_split(m)
        for i in range(3):
            for j in range(3):
                assert c[i][j] - r[i][j] <= m[i, j].lo
                assert m[i, j].hi <= c[i][j] + r[i][j]


class TestCholesky:
    def test_certified_pivots_imply_positivity(self, rng):
        for _ in range(100):
            m, c, r = _sym_interval_matrix(rng, 3, rad=0.05)
            pivot = interval_cholesky_min_pivot(m)
            if pivot is None:
                continue
            assert pivot > 0.0
            for _ in range(20):
                x = np.array([rng.uniform(-1, 1) for _ in range(3)])
                a = np.array([[m[i, j].mid for j in range(3)] for i in range(3)])
                if np.linalg.norm(x) > 1e-9:
                    assert x @ a @ x > 0.0

    def test_zero_pivot_inconclusive(self):
        m = IntervalMatrix(
            [[Interval(1.0), Interval(1.0)], [Interval(1.0), Interval(1.0)]]
        )
        assert interval_cholesky_min_pivot(m) is None


class TestSymmetrize:
    def test_quadratic_form_unchanged(self, rng):
        m, _, _ = _sym_interval_matrix(rng, 3)
        skew = IntervalMatrix(
            [
                [
                    m[i, j] + Interval(-abs(i - j) * 0.01, abs(i - j) * 0.01)
                    for j in range(3)
                ]
                for i in range(3)
            ]
        )
        sym = symmetrize(skew)
        for _ in range(30):
            x = IntervalVector([rng.uniform(-1, 1) for _ in range(3)])
            before = x.dot(skew.mat_vec(x))
            after = x.dot(sym.mat_vec(x))
            assert before.intersects(after)


class TestToyConeMatrices:
    def test_switch_matrix_matches_block_structure(self):
        # At the tangency point the 4x4 cone matrix in (x, a, y, v) source
        # coordinates has the reference entries.
        v = switch_cone_matrix(ToyParams(), x=0.0)
        expected = [
            [4 * 1.0 - 1.0 - 1.0, 0.0, 0.0, 2.0],
            [0.0, 1.0 - 0.5 - 0.25, 1.0, 0.0],
            [0.0, 1.0, 1.0 + 4.0, 0.0],
            [2.0, 0.0, 0.0, 1.0 + 2.0],
        ]
        for i in range(4):
            for j in range(4):
                assert v[i, j].contains(expected[i][j]), (i, j)
                assert v[i, j].width < 1e-12

    def test_blocks_positive_definite_at_reference_coefficients(self):
        q1, q2 = switch_cone_blocks(alpha=1.0, beta=0.25, gamma=4.0, delta=2.0)
        assert q1[0, 0] == Interval(2.0)
        assert q2[0, 0] == Interval(0.25)
        assert rump_positive_definite(q1).positive_definite
        assert rump_positive_definite(q2).positive_definite
        # determinants 2 and 1/4 via direct 2x2 arithmetic
        d1 = q1[0, 0] * q1[1, 1] - q1[0, 1] * q1[1, 0]
        d2 = q2[0, 0] * q2[1, 1] - q2[0, 1] * q2[1, 0]
        assert d1 == Interval(2.0)
        assert d2 == Interval(0.25)

    def test_gamma_boundary_fails(self):
        _, q2 = switch_cone_blocks(gamma=3.0)
        d2 = q2[0, 0] * q2[1, 1] - q2[0, 1] * q2[1, 0]
        assert d2.contains(0.0)
        assert not rump_positive_definite(q2).positive_definite

    def test_whole_box_switch_matrix_inconclusive(self):
        # Positive definiteness is claimed only near the tangency point; over
        # the full switch box the interval matrix is not certified.
        v = switch_cone_matrix(ToyParams(), x=Interval(-0.25, 0.25))
        assert not rump_positive_definite(v).positive_definite


class TestSubdivisionRefinement:
    def test_refinement_rescues_a_wide_single_shot(self):
        # A derivative evaluator whose whole-box enclosure is uselessly fat
        # but whose sub-box enclosures are tight: one-shot fails, the hulled
        # refinement certifies.
        from tangency.cones import check_cone_link
        from tangency.covering import VerificationInconclusive
        from tangency.hset import HSet, QuadraticForm
        from tangency.linalg import IntervalVector

        h = HSet("R", (0, 0), [[1, 0], [0, 1]], (1, 1), (0,))
        qn = QuadraticForm((1.0, -1.0), (0,))
        qm = QuadraticForm((1.0, -1.0), (0,))

        def deriv(box):
            # artificial width tied to the box size
            w = box[0].width + box[1].width
            slack = 0.6 if w > 3.0 else 0.01
            return IntervalMatrix(
                [
                    [Interval(2.0 - slack, 2.0 + slack), Interval(0.0)],
                    [Interval(0.0), Interval(0.5 - slack, 0.5 + slack)],
                ]
            )

        cert = check_cone_link(h, h, qn, qm, deriv)
        assert cert.rump.positive_definite
        with pytest.raises(VerificationInconclusive):
            check_cone_link(h, h, qn, qm, deriv, refine_grid=1)


class TestConeMatrixGeneric:
    def test_identity_map_counterexample(self):
        # Q_M = 2 Q_N with Q_N = diag(1, -1) under the identity map:
        # V = diag(1, -1), not positive definite.
        from tangency.hset import HSet, QuadraticForm

        h = HSet("I", (0, 0), [[1, 0], [0, 1]], (1, 1), (0,))
        qn = QuadraticForm((1.0, -1.0), (0,))
        qm = QuadraticForm((2.0, -2.0), (0,))
        v = cone_matrix(h, h, qn, qm, IntervalMatrix.identity(2))
        assert v[0, 0] == Interval(1.0)
        assert v[1, 1] == Interval(-1.0)
        assert not rump_positive_definite(v).positive_definite

    def test_linear_toy_link_diagonal(self):
        # V = diag(a(l^2-1), g(1-m^2), d(1-(m/l)^2), beta_{i+1}-beta_i) for
        # one chain-start link, exactly, in ambient order (x, y, v, a).
        from tangency.toy import build_toy_chain, linear_start_map

        params = ToyParams()
        chain = build_toy_chain(params)
        src, tgt = chain.sets[1], chain.sets[2]
        qn, qm = chain.forms[1], chain.forms[2]
        fmap = linear_start_map(params)
        v = cone_matrix(src, tgt, qn, qm, fmap.derivative(src.box()))
        lam, mu = params.lam, params.mu
        assert v[0, 0].contains(1.0 * lam**2 - 1.0)
        assert v[1, 1].contains(4.0 - mu**2 * 4.0)
        assert v[2, 2].contains(2.0 - (mu / lam) ** 2 * 2.0)
        assert v[3, 3].contains(qm.coeffs[3] - qn.coeffs[3])
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert v[i, j].contains(0.0)
