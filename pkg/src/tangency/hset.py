"""H-sets and their attached diagonal cone forms.

An h-set is an affine parallelepiped ``c + M (d . [-1,1]^n)`` with a
designated split of the axes into unstable (exit) and stable (entry)
directions.  Two local frames matter and are kept explicit:

* the un-normalized frame ``w = M^-1 (p - c)`` in which the quadratic cone
  forms are expressed (the frame columns are unit vectors);
* the diameter-normalized frame ``z = d^-1 . w`` in which the set is the
  cube [-1,1]^n and all covering inequalities are checked.

Rigor enters through ``inv_coord``, a verified interval enclosure of M^-1;
the coordinate matrix itself is an exact point matrix.
"""

from __future__ import annotations

import math

from tangency.interval import Interval, IntervalError
from tangency.linalg import IntervalMatrix, IntervalVector, inverse_enclosure


class HSet:
    __slots__ = ("name", "center", "coord", "diam", "unstable", "stable", "inv_coord")

    def __init__(self, name, center, coord, diam, unstable, check_columns=True):
        self.name = str(name)
        self.center = tuple(float(c) for c in center)
        self.coord = tuple(tuple(float(e) for e in row) for row in coord)
        self.diam = tuple(float(d) for d in diam)
        n = len(self.center)
        if len(self.coord) != n or any(len(r) != n for r in self.coord):
            raise IntervalError("coordinate matrix shape mismatch")
        if len(self.diam) != n or any(d <= 0.0 for d in self.diam):
            raise IntervalError("diameters must be positive")
        self.unstable = tuple(sorted(int(i) for i in unstable))
        if len(set(self.unstable)) != len(self.unstable) or any(
            not 0 <= i < n for i in self.unstable
        ):
            raise IntervalError("invalid unstable axis set")
        self.stable = tuple(i for i in range(n) if i not in self.unstable)
        if check_columns:
            for j in range(n):
                norm = math.sqrt(sum(self.coord[i][j] ** 2 for i in range(n)))
                if abs(norm - 1.0) > 1e-6:
                    raise IntervalError(
                        f"{self.name}: column {j} not normalized (|.|={norm})"
                    )
        self.inv_coord = inverse_enclosure(self.coord)

    @property
    def n(self):
        return len(self.center)

    def __repr__(self):
        return (
            f"HSet({self.name!r}, n={self.n}, unstable={self.unstable}, "
            f"diam={self.diam})"
        )

    # -- coordinate transforms -------------------------------------------

    def center_vector(self):
        return IntervalVector([Interval(c) for c in self.center])

    def coord_matrix(self):
        return IntervalMatrix.from_point(self.coord)

    def to_local(self, p):
        """Un-normalized local coordinates M^-1 (p - c) of an ambient box."""
        return self.inv_coord.mat_vec(p - self.center_vector())

    def to_normalized(self, p):
        """Normalized coordinates; p is certified inside the set iff the
        result is a subset of [-1,1]^n (sufficient direction only)."""
        loc = self.to_local(p)
        return IntervalVector([w / Interval(d) for w, d in zip(loc, self.diam)])

    def from_normalized(self, z):
        scaled = IntervalVector([Interval(d) * zi for d, zi in zip(self.diam, z)])
        return self.center_vector() + self.coord_matrix().mat_vec(scaled)

    def from_local(self, w):
        return self.center_vector() + self.coord_matrix().mat_vec(w)

    def box(self):
        """Ambient enclosure of the whole set."""
        return self.from_normalized(self.unit_cube(self.n))

    @staticmethod
    def unit_cube(n):
        return IntervalVector([Interval(-1.0, 1.0)] * n)

    # -- face machinery -----------------------------------------------------

    @staticmethod
    def _segments(grid):
        if grid < 1:
            raise IntervalError("grid counts must be >= 1")
        cuts = []
        for j in range(grid):
            lo = Interval(-1.0) + Interval(2.0) * Interval(float(j)) / Interval(grid)
            hi = Interval(-1.0) + Interval(2.0) * Interval(float(j + 1)) / Interval(
                grid
            )
            cuts.append(Interval(lo.lo, hi.hi))
        return cuts

    def walls(self, axis, side, grid=1):
        """Sub-boxes covering the face {z_axis = side} of [-1, 1]^n.

        The covering is by closed overlapping boxes whose union equals the
        face; grid may be an int (uniform) or a per-axis sequence.
        """
        if axis not in self.unstable:
            raise IntervalError(f"wall axis {axis} is not an unstable axis")
        if side not in (-1, 1):
            raise IntervalError("side must be +-1")
        n = self.n
        counts = self._grid_counts(grid, skip=axis)
        out = [[]]
        for i in range(n):
            if i == axis:
                out = [row + [Interval(float(side))] for row in out]
            else:
                segs = self._segments(counts[i])
                out = [row + [s] for row in out for s in segs]
        return [IntervalVector(row) for row in out]

    def subboxes(self, grid=1):
        """Sub-boxes covering the whole normalized cube [-1, 1]^n."""
        counts = self._grid_counts(grid, skip=None)
        out = [[]]
        for i in range(self.n):
            segs = self._segments(counts[i])
            out = [row + [s] for row in out for s in segs]
        return [IntervalVector(row) for row in out]

    def _grid_counts(self, grid, skip):
        n = self.n
        if isinstance(grid, int):
            counts = [grid] * n
        else:
            counts = [int(g) for g in grid]
            if len(counts) != n:
                raise IntervalError("grid length must match dimension")
        if skip is not None:
            counts[skip] = 1
        if any(c < 1 for c in counts):
            raise IntervalError("grid counts must be >= 1")
        return counts

    def to_dict(self):
        return {
            "name": self.name,
            "center": list(self.center),
            "matrix_columns": [
                [self.coord[i][j] for i in range(self.n)] for j in range(self.n)
            ],
            "diameters": list(self.diam),
            "unstable_axes": list(self.unstable),
        }

    @classmethod
    def from_dict(cls, data):
        cols = data["matrix_columns"]
        n = len(cols)
        coord = [[cols[j][i] for j in range(n)] for i in range(n)]
        return cls(
            data["name"],
            data["center"],
            coord,
            data["diameters"],
            data["unstable_axes"],
        )


class QuadraticForm:
    """Diagonal cone form Q(z) = sum_i coeffs[i] z_i^2 in un-normalized local
    coordinates; positive coefficients sit on the unstable axes, negative on
    the stable ones, so Q = alpha(x) - beta(y) with alpha, beta positive
    definite.
    """

    __slots__ = ("coeffs", "unstable")

    def __init__(self, coeffs, unstable):
        self.coeffs = tuple(float(c) for c in coeffs)
        self.unstable = tuple(sorted(int(i) for i in unstable))
        if any(c == 0.0 for c in self.coeffs):
            raise IntervalError("cone form coefficients must be nonzero")
        for i, c in enumerate(self.coeffs):
            if i in self.unstable and c <= 0.0:
                raise IntervalError(f"coefficient {i} must be positive (unstable)")
            if i not in self.unstable and c >= 0.0:
                raise IntervalError(f"coefficient {i} must be negative (stable)")

    @property
    def n(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"QuadraticForm({list(self.coeffs)!r}, unstable={self.unstable})"

    def value(self, z):
        acc = Interval(0.0)
        for c, zi in zip(self.coeffs, z):
            acc = acc + Interval(c) * zi.sqr()
        return acc

    def matrix(self):
        n = self.n
        return IntervalMatrix(
            [
                [Interval(self.coeffs[i]) if i == j else Interval(0.0) for j in range(n)]
                for i in range(n)
            ]
        )

    def scaled(self, factor):
        """The form with every coefficient multiplied by an exact float."""
        factor = float(factor)
        if factor <= 0.0:
            raise IntervalError("scaling factor must be positive")
        return QuadraticForm([c * factor for c in self.coeffs], self.unstable)

    def alpha_norm(self):
        """Operator norm of the positive (unstable) block: max coefficient."""
        return max(self.coeffs[i] for i in self.unstable)

    def beta_norm(self):
        """Operator norm of the negative (stable) block: max |coefficient|."""
        stable = [i for i in range(self.n) if i not in self.unstable]
        return max(-self.coeffs[i] for i in stable)

    def to_dict(self):
        return {"coeffs": list(self.coeffs), "unstable_axes": list(self.unstable)}

    @classmethod
    def from_dict(cls, data):
        return cls(data["coeffs"], data["unstable_axes"])
