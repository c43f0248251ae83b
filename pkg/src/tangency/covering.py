"""Rigorous verification of covering relations between h-sets.

A covering ``N => M`` under a map F is certified through the standard
sufficient wall conditions: with a bijection sigma between the unstable axes
of N and M and orientation signs eps,

* every sub-box of the wall {z_i = +1} of N maps to a point whose
  sigma(i)-th normalized target coordinate satisfies eps_i . w > 1 strictly,
  and symmetrically < -1 on {z_i = -1} (exit conditions);
* the image of all of N has every stable normalized target coordinate
  strictly inside (-1, 1) (entry condition).

These imply the covering relation via the linear homotopy to the diagonal
model map with degree +-1.  Failure is always inconclusive, never a
disproof: interval methods cannot refute.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from tangency import kernels as _k
from tangency.interval import Interval, IntervalError
from tangency.linalg import IntervalMatrix, IntervalVector


class VerificationInconclusive(Exception):
    """A rigorous check did not go through; carries the failure locus."""

    def __init__(self, stage, locus, detail=""):
        self.stage = stage
        self.locus = locus
        self.detail = detail
        super().__init__(f"{stage}: {locus}" + (f" ({detail})" if detail else ""))


class BoxMap:
    """An ambient box map bundled with its Jacobian enclosure.

    The checker consumes the pair to evaluate images in mean-value form; a
    bare callable (no derivative attribute) degrades to hull composition.
    """

    def __init__(self, value_fn, derivative_fn):
        self._value = value_fn
        self._derivative = derivative_fn

    def __call__(self, box):
        return self._value(box)

    def derivative(self, box):
        return self._derivative(box)


@dataclass(frozen=True)
class CoveringCertificate:
    source: str
    target: str
    correspondence: tuple  # ((src_axis, tgt_axis, sign), ...)
    grid: int
    exit_margins: dict = field(compare=False)  # (axis, side) -> float
    entry_margin: float = 0.0

    def min_exit_margin(self):
        return min(self.exit_margins.values())

    def to_dict(self):
        return {
            "type": "covering",
            "source": self.source,
            "target": self.target,
            "correspondence": [list(c) for c in self.correspondence],
            "grid": self.grid,
            "exit_margins": {
                f"{axis}{'+' if side > 0 else '-'}": m
                for (axis, side), m in sorted(self.exit_margins.items())
            },
            "entry_margin": self.entry_margin,
        }


def _image_normalized(src, tgt, fmap, zbox):
    """Normalized-coordinate image enclosure of a normalized sub-box.

    Evaluated in mean-value form,

        g(z)  in  g(mid z) + [D_tgt^-1 M_tgt^-1 DF(B) M_src D_src] (z - mid z),

    because the naive composition through the ambient box hull loses the
    correlation between the planar coordinates that the frames are built to
    diagonalize (an unstable excursion would wrongly leak into the stable
    coordinates).  Requires fmap to expose a ``derivative`` enclosure; a
    plain callable falls back to the hull composition.
    """
    deriv = getattr(fmap, "derivative", None)
    if deriv is None:
        return tgt.to_normalized(fmap(src.from_normalized(zbox)))
    mid = IntervalVector([Interval(e.mid) for e in zbox])
    g_mid = tgt.to_normalized(fmap(src.from_normalized(mid)))
    ambient = src.from_normalized(zbox)
    sandwich = tgt.inv_coord.mat_mul(deriv(ambient)).mat_mul(src.coord_matrix())
    n = src.n
    scaled_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sandwich[i, j] * Interval(src.diam[j]) / Interval(tgt.diam[i]))
        scaled_rows.append(row)
    delta = IntervalVector([z - Interval(z.mid) for z in zbox])
    mean_value = g_mid + IntervalMatrix(scaled_rows).mat_vec(delta)
    # The hull composition is tighter where nonlinear terms dominate (the
    # mean-value slope doubles a pure square); intersect when it evaluates.
    try:
        hull = tgt.to_normalized(fmap(ambient))
    except IntervalError:
        return mean_value
    return IntervalVector(
        [m.intersect(h) for m, h in zip(mean_value, hull)]
    )


def detect_correspondence(src, tgt, fmap):
    """Deterministic unstable-axis pairing from midpoint wall images.

    For each unstable axis of the source, the two opposite wall centers are
    mapped; the target unstable coordinate they separate across picks the
    pairing, scored by separation width.  The rigorous check afterwards is
    what actually decides; this is only a search heuristic.
    """
    n = src.n
    u_src = src.unstable
    u_tgt = tgt.unstable
    if len(u_src) != len(u_tgt):
        raise IntervalError("unstable dimension mismatch")
    seps = {}
    for i in u_src:
        plus = [Interval(0.0)] * n
        minus = [Interval(0.0)] * n
        plus[i] = Interval(1.0)
        minus[i] = Interval(-1.0)
        try:
            img_p = _image_normalized(src, tgt, fmap, plus).mids()
            img_m = _image_normalized(src, tgt, fmap, minus).mids()
        except IntervalError as exc:
            raise VerificationInconclusive(
                "covering", f"{src.name}=>{tgt.name}", f"wall-center image: {exc}"
            )
        for j in u_tgt:
            seps[(i, j)] = (img_p[j] - img_m[j], abs(img_p[j] - img_m[j]))
    best = None
    for perm in permutations(u_tgt):
        score = sum(seps[(i, j)][1] for i, j in zip(u_src, perm))
        if best is None or score > best[0]:
            best = (score, perm)
    pairing = []
    for i, j in zip(u_src, best[1]):
        sign = 1 if seps[(i, j)][0] >= 0.0 else -1
        pairing.append((i, j, sign))
    return tuple(pairing)


def check_covering(src, tgt, fmap, grid=1, correspondence=None):
    """Certify src => tgt under fmap or raise VerificationInconclusive.

    fmap maps ambient IntervalVector boxes to ambient IntervalVector boxes.
    grid subdivides wall faces (and the entry check) per axis.
    """
    link = f"{src.name}=>{tgt.name}"
    if len(src.unstable) != len(tgt.unstable):
        raise IntervalError(f"{link}: unstable dimension mismatch")
    if correspondence is None:
        correspondence = detect_correspondence(src, tgt, fmap)
    else:
        correspondence = tuple(tuple(c) for c in correspondence)

    exit_margins = {}
    for i, j, sign in correspondence:
        for side in (1, -1):
            worst = None
            for box_idx, wall in enumerate(src.walls(i, side, grid)):
                try:
                    img = _image_normalized(src, tgt, fmap, wall)
                except IntervalError as exc:
                    raise VerificationInconclusive(
                        "covering", link, f"wall z_{i}={side:+d} box {box_idx}: {exc}"
                    )
                w = img[j] if sign > 0 else -img[j]
                if side > 0:
                    margin = _k.sub_down(w.lo, 1.0)
                else:
                    margin = _k.sub_down(-1.0, w.hi)
                if worst is None or margin < worst:
                    worst = margin
                if margin <= 0.0:
                    raise VerificationInconclusive(
                        "covering",
                        link,
                        f"exit failed on wall z_{i}={side:+d} box {box_idx} "
                        f"(margin {margin})",
                    )
            exit_margins[(i, side)] = worst

    entry_margin = None
    for box_idx, zbox in enumerate(src.subboxes(grid)):
        try:
            img = _image_normalized(src, tgt, fmap, zbox)
        except IntervalError as exc:
            raise VerificationInconclusive(
                "covering", link, f"interior box {box_idx}: {exc}"
            )
        for j in tgt.stable:
            margin = min(_k.sub_down(1.0, img[j].hi), _k.add_down(img[j].lo, 1.0))
            if entry_margin is None or margin < entry_margin:
                entry_margin = margin
            if margin <= 0.0:
                raise VerificationInconclusive(
                    "covering",
                    link,
                    f"entry failed on stable axis {j} box {box_idx} "
                    f"(margin {margin})",
                )

    return CoveringCertificate(
        source=src.name,
        target=tgt.name,
        correspondence=correspondence,
        grid=grid if isinstance(grid, int) else tuple(grid),
        exit_margins=exit_margins,
        entry_margin=entry_margin,
    )


def check_chain(sets, fmap, grid=1, correspondences=None):
    """Certify every consecutive covering in a chain of h-sets.

    fmap may be one callable for all links or a sequence per link; the first
    inconclusive link aborts with its diagnostics.
    """
    if len(sets) < 2:
        raise IntervalError("a chain needs at least two h-sets")
    n_links = len(sets) - 1
    maps = fmap if isinstance(fmap, (list, tuple)) else [fmap] * n_links
    if len(maps) != n_links:
        raise IntervalError("one map per link required")
    grids = grid if isinstance(grid, (list, tuple)) else [grid] * n_links
    certs = []
    for idx in range(n_links):
        corr = None if correspondences is None else correspondences.get(idx)
        certs.append(
            check_covering(sets[idx], sets[idx + 1], maps[idx], grids[idx], corr)
        )
    return certs
