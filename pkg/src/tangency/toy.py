"""Analytically solvable model with a quadratic tangency unfolding generically.

The planar model is linear, (x, y) -> (lam x, mu y) with |lam| > 1 > |mu|,
near the fixed point, and acts as (1 + x, y) -> (x^2 + y + a, 1 - x) near the
tangency point (1, 0).  Projectivized in slope charts, the dynamics and the
whole heteroclinic chain construction have closed forms, which makes this
module the oracle corpus for the covering and cone machinery: every
certificate produced here is checkable against explicit inequalities.

Chart/coordinate conventions (4D ambient):

* chain-start sets N_0..N_k use (x, y, v, a), v the slope of [(1, v)];
  unstable axes (x, a);
* chain-end sets M_s..M_0 use (x, y, w, a), w the slope of [(w, 1)];
  unstable axes (x, w);
* the switch map takes N-coordinates to M-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from tangency.covering import BoxMap
from tangency.hset import HSet, QuadraticForm
from tangency.interval import Interval, IntervalError
from tangency.jets import Jet
from tangency.linalg import IntervalMatrix, IntervalVector, det4


@dataclass(frozen=True)
class ToyParams:
    lam: float = 2.0
    mu: float = 0.5
    delta: float = 0.5
    eps: float = 0.01

    def validate(self):
        if abs(self.lam) <= 1.0:
            raise IntervalError("|lam| > 1 required")
        if not 0.0 < abs(self.mu) < 1.0:
            raise IntervalError("0 < |mu| < 1 required")
        if not 0.0 < self.delta < 1.0:
            raise IntervalError("delta in (0, 1) required")
        if not 0.0 < self.eps < 0.2:
            raise IntervalError("eps in (0, 0.2) required")
        return self


def _boxmap(evaluator):
    """Wrap a generic 4-scalar evaluator as a BoxMap (values + jets)."""

    def value(box):
        return IntervalVector(evaluator(*box.entries))

    def deriv(box):
        jets = [Jet.variable(i, box[i], 4, order=1) for i in range(4)]
        return IntervalMatrix([out.grad for out in evaluator(*jets)])

    return BoxMap(value, deriv)


def linear_start_map(params):
    """Projectivized linear dynamics near (p, E^u): (x,y,v,a) coordinates."""
    lam, mu = params.lam, params.mu
    ratio = mu / lam

    def run(x, y, v, a):
        return (lam * x, mu * y, ratio * v, a)

    return _boxmap(run)


def linear_end_map(params):
    """Projectivized linear dynamics near (p, E^s): (x,y,w,a) coordinates."""
    lam, mu = params.lam, params.mu
    ratio = lam / mu

    def run(x, y, w, a):
        return (lam * x, mu * y, ratio * w, a)

    return _boxmap(run)


def switch_map(params):
    """The tangency-neighborhood map from N- to M-coordinates.

    Planar action (1 + x, y) -> (x^2 + y + a, 1 - x); the slope v of [(1, v)]
    maps to the slope w = -(2x + v) of [(w, 1)] since the image direction is
    (2x + v, -1).
    """

    def run(x, y, v, a):
        u = x - 1.0
        return (u.sqr() + y + a, 2.0 - x, -2.0 * u - v, a)

    return _boxmap(run)


@dataclass(frozen=True)
class ToyChain:
    params: ToyParams
    sets: tuple  # N_0..N_k, M_s..M_0
    forms: tuple
    maps: tuple  # one BoxMap per link
    k: int
    s: int
    flags: tuple = ()

    @property
    def n_links(self):
        return len(self.sets) - 1


def _chain_sizes(params, k):
    lam_abs = abs(params.lam)
    delta = params.delta
    x_sizes = [0.0] * (k + 1)
    x_sizes[k] = delta / 2.0
    shrink = max(0.8, 1.1 / lam_abs)
    for i in range(k - 1, 0, -1):
        x_sizes[i] = x_sizes[i + 1] * shrink
    return x_sizes


def _pick_end_length(params):
    # |mu|^s must be well below (1 - |mu|) * ybar for the last entry check.
    mu_abs = abs(params.mu)
    ybar = (0.5 + params.eps) * params.delta
    target = 0.45 * (1.0 - mu_abs) * ybar
    s = 4
    while mu_abs**s >= target and s < 200:
        s += 1
    return s


def build_toy_chain(params=None, k=4, s=None, beta_growth=1.05, d_growth=1.05):
    """Concrete h-sets, cone forms and per-link maps for the full chain.

    The reference inequality system pins the switch-link sizes; the interior
    sizes are geometric choices satisfying the strict wall inequalities for
    any valid parameters.  The reference size recursions for the chain-end
    sets are indexed opposite to the chain direction; the geometry here
    follows the chain direction and the mismatch is recorded as a flag
    rather than reinterpreted silently.
    """
    params = (params or ToyParams()).validate()
    if k < 1:
        raise IntervalError("k >= 1 required")
    lam, mu = params.lam, params.mu
    delta, eps = params.delta, params.eps
    if s is None:
        s = _pick_end_length(params)

    # Start sets N_0..N_k along the unstable axis, centers lam^(i-k).
    x_sizes = _chain_sizes(params, k)
    y_size = delta / 3.0
    v_size = (1.0 - eps) * delta / 2.0
    centers_x = [0.0] * (k + 1)
    centers_x[k] = 1.0
    for i in range(k - 1, 0, -1):
        centers_x[i] = centers_x[i + 1] / lam
    x_sizes[0] = 1.1 * (abs(centers_x[1]) + x_sizes[1]) / abs(lam)

    n_sets = []
    n_forms = []
    eye4 = [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]]
    for i in range(k + 1):
        diam = (x_sizes[i], y_size, v_size, delta * 1.1 ** (k - i))
        n_sets.append(
            HSet(f"N{i}", (centers_x[i], 0.0, 0.0, 0.0), eye4, diam, (0, 3))
        )
        beta_i = 0.25 * beta_growth ** (i - k)
        n_forms.append(QuadraticForm((1.0, -4.0, -2.0, beta_i), (0, 3)))

    # End sets M_s..M_0 along the stable axis, centers mu^(s-j) (0 for M_0).
    xbar = delta / 3.0
    ybar = (0.5 + eps) * delta
    wbar = (1.0 - eps) * delta / 2.0
    centers_y = [0.0] * (s + 1)
    centers_y[s] = 1.0
    for j in range(s - 1, 0, -1):
        centers_y[j] = centers_y[j + 1] * mu
    m_sets = []
    m_forms = []
    for j in range(s, -1, -1):
        diam = (xbar, ybar, wbar, (1.0 + eps) * delta * 1.1 ** (s - j))
        m_sets.append(
            HSet(f"M{j}", (0.0, centers_y[j], 0.0, 0.0), eye4, diam, (0, 2))
        )
        d_j = 0.5 * d_growth ** (j - s)
        m_forms.append(QuadraticForm((1.0, -1.0, 1.0, -d_j), (0, 2)))

    start = linear_start_map(params)
    end = linear_end_map(params)
    switch = switch_map(params)
    maps = [start] * k + [switch] + [end] * s

    flags = (
        "reference chain-end size recursion is indexed opposite to the chain "
        "direction; sizes here follow the chain direction",
    )
    return ToyChain(
        params=params,
        sets=tuple(n_sets + m_sets),
        forms=tuple(n_forms + m_forms),
        maps=tuple(maps),
        k=k,
        s=s,
        flags=flags,
    )


def linear_link_indices(chain):
    """Indices of the chain links with linear dynamics (all but the switch)."""
    return [i for i in range(chain.n_links) if i != chain.k]


def switch_cone_blocks(a_coef=1.0, b_coef=1.0, c_coef=1.0, d_coef=0.5,
                       alpha=1.0, beta=0.25, gamma=4.0, delta=2.0):
    """The two 2x2 blocks deciding the switch-link cone condition at x = 0.

    With forms Q_N = alpha x^2 + beta a^2 - gamma y^2 - delta v^2 and
    Q_M = A x^2 + B w^2 - C y^2 - D a^2, the cone matrix at the tangency
    point block-diagonalizes into

        [[4B - C - alpha, 2B], [2B, B + delta]]   and
        [[A - D - beta, A], [A, A + gamma]].
    """
    q1 = IntervalMatrix(
        [
            [4.0 * b_coef - c_coef - alpha, 2.0 * b_coef],
            [2.0 * b_coef, b_coef + delta],
        ]
    )
    q2 = IntervalMatrix(
        [
            [a_coef - d_coef - beta, a_coef],
            [a_coef, a_coef + gamma],
        ]
    )
    return q1, q2


def switch_cone_matrix(params, x=0.0, a_coef=1.0, b_coef=1.0, c_coef=1.0,
                       d_coef=0.5, alpha=1.0, beta=0.25, gamma=4.0, delta=2.0):
    """Full 4x4 cone matrix of the switch link in the unstable-first source coordinates
    (x, a, y, v), evaluated on a box with the given x-range."""
    x = x if isinstance(x, Interval) else Interval(float(x))
    jx = Jet.variable(0, x, 4, order=1)
    ja = Jet.variable(1, Interval(0.0), 4, order=1)
    jy = Jet.variable(2, Interval(0.0), 4, order=1)
    jv = Jet.variable(3, Interval(0.0), 4, order=1)
    # Switch dynamics in centered coordinates, target order (x, w, y, a).
    f1 = jx.sqr() + jy + ja
    f2 = -2.0 * jx - jv
    f3 = -jx
    f4 = ja
    df = IntervalMatrix([f1.grad, f2.grad, f3.grad, f4.grad])
    qm = IntervalMatrix(
        [
            [Interval(a_coef), 0, 0, 0],
            [0, Interval(b_coef), 0, 0],
            [0, 0, Interval(-c_coef), 0],
            [0, 0, 0, Interval(-d_coef)],
        ]
    )
    qn = IntervalMatrix(
        [
            [Interval(alpha), 0, 0, 0],
            [0, Interval(beta), 0, 0],
            [0, 0, Interval(-gamma), 0],
            [0, 0, 0, Interval(-delta)],
        ]
    )
    v = df.transpose().mat_mul(qm).mat_mul(df) - qn
    return (v + v.transpose()).scale(0.5)


def transversality_determinant(g_a, g_tt, g_ta):
    """Enclosure of the 4x4 transversality determinant.

    The surfaces swept by the two parameterized curves in
    parameter x plane x direction space meet transversally iff

        det [[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, g_a, 0], [0, 0, g_ta, g_tt]]

    is nonzero; the determinant always equals g_a * g_tt, independent of the
    mixed term g_ta.
    """
    g_a = g_a if isinstance(g_a, Interval) else Interval(float(g_a))
    g_tt = g_tt if isinstance(g_tt, Interval) else Interval(float(g_tt))
    g_ta = g_ta if isinstance(g_ta, Interval) else Interval(float(g_ta))
    zero = Interval(0.0)
    one = Interval(1.0)
    m = IntervalMatrix(
        [
            [one, zero, one, zero],
            [zero, one, zero, one],
            [zero, zero, g_a, zero],
            [zero, zero, g_ta, g_tt],
        ]
    )
    return det4(m)
