"""Projectivized dynamics of a planar map family in the angle chart.

Directions [v] in the projective line over a planar tangent space are
parameterized by an angle t in (0, pi) through (cos t, sin t); the chart
excludes the horizontal direction, and any enclosure touching it is a hard
error.  The extended map acts on chart coordinates (x, y, t, a) by

    (x, y, t, a) |-> (f_a(x, y), angle(Df_a(x, y) . (cos t, sin t)), a)

and its rigorous 4x4 derivative is assembled from order-2 jets of f (the
angle component needs the second derivatives of f).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from tangency.covering import BoxMap
from tangency.interval import HALF_PI, PI, Interval, IntervalError
from tangency.jets import Jet
from tangency.linalg import IntervalMatrix, IntervalVector


class ChartError(IntervalError):
    """Direction enclosure leaves the angle chart (touches t = 0 or pi)."""


def _as_interval(x):
    return x if isinstance(x, Interval) else Interval(float(x))


@dataclass(frozen=True)
class ChartPoint:
    x: Interval
    y: Interval
    t: Interval
    a: Interval

    def __post_init__(self):
        if not (self.t.lo > 0.0 and self.t.hi < PI.lo):
            raise ChartError(f"angle enclosure {self.t!r} leaves the chart (0, pi)")

    @classmethod
    def make(cls, x, y, t, a):
        return cls(_as_interval(x), _as_interval(y), _as_interval(t), _as_interval(a))

    def as_vector(self):
        return IntervalVector([self.x, self.y, self.t, self.a])

    @classmethod
    def from_vector(cls, v):
        return cls(v[0], v[1], v[2], v[3])

    def mids(self):
        return (self.x.mid, self.y.mid, self.t.mid, self.a.mid)


@dataclass(frozen=True)
class PlanarMapFamily:
    """A parameterized planar diffeomorphism given as jet evaluators.

    ``forward(x, y, a)`` and ``inverse(x, y, a)`` take three jets and return
    the pair of image-coordinate jets.  The inverse evaluator really must be
    the inverse map; :func:`check_inverse_consistency` verifies the round trip
    on a box and should be exercised by callers' tests.
    """

    name: str
    forward: Callable[[Jet, Jet, Jet], tuple[Jet, Jet]]
    inverse: Optional[Callable[[Jet, Jet, Jet], tuple[Jet, Jet]]] = None

    def flipped(self):
        if self.inverse is None:
            raise IntervalError(f"{self.name}: no inverse evaluator")
        return PlanarMapFamily(
            name=f"{self.name}^-1", forward=self.inverse, inverse=self.forward
        )


def direction_to_angle(v):
    """Angle enclosure t in (0, pi) of a projective direction enclosure.

    v and -v denote the same class; the representative with positive second
    component is used.  If the enclosure touches the excluded horizontal
    direction (or may contain the zero vector) the chart is left: error.
    """
    vx, vy = _as_interval(v[0]), _as_interval(v[1])
    if vy.contains_zero():
        if vx.contains_zero():
            raise ChartError("direction enclosure contains the zero vector")
        raise ChartError(
            "direction enclosure touches the excluded chart point t in {0, pi}"
        )
    if vy.hi < 0.0:
        vx, vy = -vx, -vy
    t = HALF_PI - (vx / vy).atan()
    if not (t.lo > 0.0 and t.hi < PI.lo):
        raise ChartError(f"angle enclosure {t!r} leaves the chart (0, pi)")
    return t


def angle_to_direction(t):
    """Unit-direction enclosure (cos t, sin t) of an angle enclosure."""
    t = _as_interval(t)
    return IntervalVector([t.cos(), t.sin()])


def _angle_jet(wx, wy):
    """Order-1 jet of the chart angle of a direction given by jets (wx, wy)."""
    if wy.value.contains_zero():
        if wx.value.contains_zero():
            raise ChartError("direction enclosure contains the zero vector")
        raise ChartError(
            "direction enclosure touches the excluded chart point t in {0, pi}"
        )
    if wy.value.hi < 0.0:
        wx, wy = -wx, -wy
    n = wx.n
    half_pi = Jet.constant(HALF_PI, n, order=wx.order)
    return half_pi - (wx / wy).atan()


class ChartMap:
    """The extended map on chart coordinates for one orientation of a family.

    ``direction="forward"`` uses the family's forward evaluator,
    ``direction="inverse"`` its inverse; both act on (x, y, t, a) with the
    parameter held fixed by the dynamics.
    """

    def __init__(self, family, direction="forward"):
        if direction not in ("forward", "inverse"):
            raise ValueError(direction)
        if direction == "inverse" and family.inverse is None:
            raise IntervalError(f"{family.name}: no inverse evaluator")
        self.family = family
        self.direction = direction

    @property
    def name(self):
        suffix = "" if self.direction == "forward" else "^-1"
        return f"P[{self.family.name}]{suffix}"

    def _evaluator(self):
        return (
            self.family.forward
            if self.direction == "forward"
            else self.family.inverse
        )

    # -- value-level application ------------------------------------------

    def apply(self, p):
        """Image enclosure of a chart box; order-1 jets supply Df."""
        xj = Jet.variable(0, p.x, 2, order=1)
        yj = Jet.variable(1, p.y, 2, order=1)
        aj = Jet.constant(p.a, 2, order=1)
        fx, fy = self._evaluator()(xj, yj, aj)
        ct = p.t.cos()
        st = p.t.sin()
        wx = fx.grad[0] * ct + fx.grad[1] * st
        wy = fy.grad[0] * ct + fy.grad[1] * st
        t2 = direction_to_angle((wx, wy))
        return ChartPoint(fx.value, fy.value, t2, p.a)

    def apply3(self, v3, a):
        """3D variant (x, y, t) with the parameter fixed to the interval a."""
        p = ChartPoint(v3[0], v3[1], v3[2], _as_interval(a))
        q = self.apply(p)
        return IntervalVector([q.x, q.y, q.t])

    # -- derivative enclosures --------------------------------------------

    def derivative(self, p):
        """Sound 4x4 enclosure of the chart-coordinate derivative over a box."""
        xj = Jet.variable(0, p.x, 4, order=2)
        yj = Jet.variable(1, p.y, 4, order=2)
        aj = Jet.variable(3, p.a, 4, order=2)
        fx, fy = self._evaluator()(xj, yj, aj)
        tang = self._tangent_jet(fx, fy, p.t, 4, 2)
        zero = Interval(0.0)
        one = Interval(1.0)
        return IntervalMatrix(
            [fx.grad, fy.grad, tang.grad, (zero, zero, zero, one)]
        )

    def derivative3(self, v3, a):
        """3x3 derivative in (x, y, t) with the parameter fixed to a."""
        xj = Jet.variable(0, v3[0], 3, order=2)
        yj = Jet.variable(1, v3[1], 3, order=2)
        aj = Jet.constant(_as_interval(a), 3, order=2)
        fx, fy = self._evaluator()(xj, yj, aj)
        tang = self._tangent_jet(fx, fy, v3[2], 3, 2)
        return IntervalMatrix([fx.grad, fy.grad, tang.grad])

    @staticmethod
    def _tangent_jet(fx, fy, t, n, t_slot):
        # Rows of Df as order-1 jets: value = first derivative, grad = the
        # corresponding Hessian row (mixed partials up to symmetry).
        f1x = Jet(fx.grad[0], fx.hess[0])
        f1y = Jet(fx.grad[1], fx.hess[1])
        f2x = Jet(fy.grad[0], fy.hess[0])
        f2y = Jet(fy.grad[1], fy.hess[1])
        tj = Jet.variable(t_slot, t, n, order=1)
        ct = tj.cos()
        st = tj.sin()
        wx = f1x * ct + f1y * st
        wy = f2x * ct + f2y * st
        return _angle_jet(wx, wy)

    # -- adapters for the covering machinery --------------------------------

    def as_vec_map(self):
        def run(v):
            q = self.apply(ChartPoint.from_vector(v))
            return q.as_vector()

        def deriv(v):
            return self.derivative(ChartPoint.from_vector(v))

        return BoxMap(run, deriv)

    def as_vec_map3(self, a):
        a = _as_interval(a)

        def run(v):
            return self.apply3(v, a)

        def deriv(v):
            return self.derivative3(v, a)

        return BoxMap(run, deriv)


def check_inverse_consistency(family, box, tol=1e-9):
    """Verify forward(inverse(p)) re-encloses the box midpoint on a test box.

    Returns the maximal componentwise defect; callers assert it is below tol.
    """
    x, y, a = (_as_interval(c) for c in box)
    xj = Jet.variable(0, x, 2, order=1)
    yj = Jet.variable(1, y, 2, order=1)
    aj = Jet.constant(a, 2, order=1)
    ix, iy = family.inverse(xj, yj, aj)
    rx, ry = family.forward(
        Jet.constant(ix.value, 2, order=1), Jet.constant(iy.value, 2, order=1), aj
    )
    defect = 0.0
    for got, want in ((rx.value, x), (ry.value, y)):
        if not got.contains(want.mid):
            defect = max(
                defect, abs(got.mid - want.mid) - 0.5 * got.width - 0.5 * want.width
            )
    return defect
