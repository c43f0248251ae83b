"""Cone-condition verification via interval positive definiteness.

For a covering link (N, Q_N) => (M, Q_M) under f, the cone conditions hold
whenever the symmetric interval matrix

    V = [Df(N)]^T Q_M [Df(N)] - Q_N

(in the un-normalized local frames of N and M) is positive definite.  An
interval symmetric matrix A_c + [-1,1] A_0 is positive definite iff all
2^(n-1) vertex matrices A_c - D(z) A_0 D(z) are (z and -z coincide, so the
first component is pinned to +1); each vertex is decided by a rigorous
Cholesky factorization run in interval arithmetic: every pivot must be
certified strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from tangency import kernels as _k
from tangency.covering import VerificationInconclusive
from tangency.interval import Interval, IntervalError
from tangency.linalg import IntervalMatrix


@dataclass(frozen=True)
class RumpResult:
    positive_definite: bool
    vertex_margins: tuple  # ((z, min_pivot_lower_bound_or_None), ...)

    def min_margin(self):
        vals = [m for _, m in self.vertex_margins if m is not None]
        return min(vals) if vals else None

    def to_dict(self):
        return {
            "positive_definite": self.positive_definite,
            "vertices": [
                {"z": list(z), "min_pivot": m} for z, m in self.vertex_margins
            ],
        }


@dataclass(frozen=True)
class ConeCertificate:
    link: str
    matrix: IntervalMatrix = field(compare=False)
    rump: RumpResult = field(compare=False)

    def to_dict(self):
        return {
            "type": "cone",
            "link": self.link,
            "V": [[[e.lo, e.hi] for e in row] for row in self.matrix.rows],
            "rump": self.rump.to_dict(),
        }


def symmetrize(m):
    """Average an interval matrix with its transpose enclosure."""
    return (m + m.transpose()).scale(0.5)


def interval_cholesky_min_pivot(a):
    """Smallest certified pivot of an interval Cholesky run, or None.

    Returns a strictly positive lower bound on every pivot if the
    factorization certifies positive definiteness of all point matrices in
    a; None as soon as some pivot cannot be certified positive.
    """
    n = a.nrows
    if a.ncols != n:
        raise IntervalError("cholesky requires a square matrix")
    low = [[Interval(0.0)] * n for _ in range(n)]
    min_pivot = None
    for j in range(n):
        acc = a[j, j]
        for k in range(j):
            acc = acc - low[j][k].sqr()
        if acc.lo <= 0.0:
            return None
        if min_pivot is None or acc.lo < min_pivot:
            min_pivot = acc.lo
        ljj = acc.sqrt()
        low[j][j] = ljj
        for i in range(j + 1, n):
            s = a[i, j]
            for k in range(j):
                s = s - low[i][k] * low[j][k]
            low[i][j] = s / ljj
    return min_pivot


def midrad_split(a):
    """Symmetric midpoint/radius split with outward rounding: the returned
    (C, R) satisfy a[i][j] within [C - R, C + R] entrywise."""
    n = a.nrows
    c = [[0.0] * n for _ in range(n)]
    r = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            e = a[i, j]
            m = e.mid
            rad = max(_k.sub_up(e.hi, m), _k.sub_up(m, e.lo))
            c[i][j] = c[j][i] = m
            r[i][j] = r[j][i] = rad
    return c, r


def rump_positive_definite(a):
    """Decide positive definiteness of a symmetric interval matrix.

    True iff every vertex matrix passes the rigorous Cholesky; False means
    inconclusive/indefinite, never a disproof of the original enclosure.
    """
    n = a.nrows
    c, r = midrad_split(a)
    outcomes = []
    ok = True
    for tail in product((1, -1), repeat=n - 1):
        z = (1,) + tail
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                zz = z[i] * z[j]
                # enclosure of the exact real c_ij - zz * r_ij
                row.append(Interval(c[i][j]) - Interval(zz * r[i][j]))
            rows.append(row)
        margin = interval_cholesky_min_pivot(IntervalMatrix(rows))
        outcomes.append((z, margin))
        if margin is None:
            ok = False
    return RumpResult(positive_definite=ok, vertex_margins=tuple(outcomes))


def local_derivative(src, tgt, deriv_chart):
    """Chart-coordinate derivative enclosure sandwiched into local frames."""
    return tgt.inv_coord.mat_mul(deriv_chart).mat_mul(src.coord_matrix())


def cone_matrix(src, tgt, q_src, q_tgt, deriv_chart, inflate_src=1.0):
    """V = D^T Q_M D - c Q_N over the source set, symmetrized.

    deriv_chart must enclose the chart-coordinate Jacobian over all of src;
    inflate_src scales Q_N (used as (1+eps) by the manifold constants).
    """
    d_loc = local_derivative(src, tgt, deriv_chart)
    v = d_loc.transpose().mat_mul(q_tgt.matrix()).mat_mul(d_loc)
    qn = q_src.matrix() if inflate_src == 1.0 else q_src.matrix().scale(inflate_src)
    return symmetrize(v - qn)


def _hull_matrices(mats):
    n, m = mats[0].nrows, mats[0].ncols
    rows = []
    for i in range(n):
        row = []
        for j in range(m):
            e = mats[0][i, j]
            for other in mats[1:]:
                e = e.hull(other[i, j])
            row.append(e)
        rows.append(row)
    return IntervalMatrix(rows)


def check_cone_link(src, tgt, q_src, q_tgt, derivative_fn, link=None,
                    refine_grid=2):
    """Certify the cone condition on one covering link.

    derivative_fn maps the ambient source box to a chart-derivative
    enclosure (4x4 for the extended map, 3x3 for projected sets).  The
    whole set is evaluated in one shot first; if that is inconclusive and
    refine_grid > 1, the derivative enclosure is refined as the hull of
    per-sub-box evaluations and the test retried once.
    """
    link = link or f"{src.name}=>{tgt.name}"

    def attempt(deriv):
        v = cone_matrix(src, tgt, q_src, q_tgt, deriv)
        return v, rump_positive_definite(v)

    try:
        v, rump = attempt(derivative_fn(src.box()))
        if not rump.positive_definite and refine_grid > 1:
            refined = _hull_matrices(
                [derivative_fn(src.from_normalized(z))
                 for z in src.subboxes(refine_grid)]
            )
            v, rump = attempt(refined)
    except IntervalError as exc:
        raise VerificationInconclusive("cones", link, str(exc))
    if not rump.positive_definite:
        raise VerificationInconclusive(
            "cones", link, "interval matrix not certified positive definite"
        )
    return ConeCertificate(link=link, matrix=v, rump=rump)


def check_cone_chain(sets, forms, derivative_fn, links=None):
    """Cone certificates for every consecutive pair of (h-set, form)."""
    if len(sets) != len(forms):
        raise IntervalError("one form per h-set required")
    if len(sets) < 2:
        raise IntervalError("a chain needs at least two h-sets")
    n_links = len(sets) - 1
    fns = (
        derivative_fn
        if isinstance(derivative_fn, (list, tuple))
        else [derivative_fn] * n_links
    )
    certs = []
    for idx in range(n_links):
        name = None if links is None else links[idx]
        certs.append(
            check_cone_link(
                sets[idx], sets[idx + 1], forms[idx], forms[idx + 1], fns[idx], name
            )
        )
    return certs
