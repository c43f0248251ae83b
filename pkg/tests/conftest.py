"""Shared oracles and fixtures.

The rational oracles here are deliberately independent of the library's own
elementary-function machinery: different argument reductions (Stormer's pi
decomposition, half-angle-free atan paths) evaluated in exact Fraction
arithmetic with explicit tail bounds.
"""

import math
import random
from fractions import Fraction

import pytest


# -- exact rational enclosures ------------------------------------------------


def atan_series_bounds(x, n_terms=60):
    """Rational bounds on atan(x) for |x| <= 3/4, alternating-series tail."""
    assert abs(x) <= Fraction(3, 4)
    x2 = x * x
    s = Fraction(0)
    p = x
    sign = 1
    for n in range(n_terms):
        s += sign * p / (2 * n + 1)
        p *= x2
        sign = -sign
    tail = abs(p) / (2 * n_terms + 1)
    return s - tail, s + tail


def stormer_pi_bounds():
    """pi = 24 atan(1/8) + 8 atan(1/57) + 4 atan(1/239)."""
    a8 = atan_series_bounds(Fraction(1, 8), 36)
    a57 = atan_series_bounds(Fraction(1, 57), 20)
    a239 = atan_series_bounds(Fraction(1, 239), 16)
    lo = 24 * a8[0] + 8 * a57[0] + 4 * a239[0]
    hi = 24 * a8[1] + 8 * a57[1] + 4 * a239[1]
    return lo, hi


PI_BOUNDS = stormer_pi_bounds()


def atan_bounds(x):
    """Rational bounds on atan(x) for any rational/float x."""
    q = Fraction(x)
    if q < 0:
        lo, hi = atan_bounds(-q)
        return -hi, -lo
    if q <= Fraction(3, 4):
        return atan_series_bounds(q)
    if q <= Fraction(4, 3):
        # atan(q) = pi/4 + atan((q-1)/(q+1)), |(q-1)/(q+1)| <= 1/7
        inner = atan_series_bounds((q - 1) / (q + 1), 24)
        return PI_BOUNDS[0] / 4 + inner[0], PI_BOUNDS[1] / 4 + inner[1]
    inner = atan_series_bounds(1 / q)
    return PI_BOUNDS[0] / 2 - inner[1], PI_BOUNDS[1] / 2 - inner[0]


def _sin_series_bounds(r, n_terms=16):
    """Rational bounds on sin(r) for |r| <= 1, factorial tail."""
    r2 = r * r
    s = Fraction(0)
    p = r
    sign = 1
    for n in range(n_terms):
        s += sign * p / math.factorial(2 * n + 1)
        p *= r2
        sign = -sign
    tail = abs(p) / math.factorial(2 * n_terms + 1)
    return s - tail, s + tail


def _cos_series_bounds(r, n_terms=16):
    r2 = r * r
    s = Fraction(0)
    p = Fraction(1)
    sign = 1
    for n in range(n_terms):
        s += sign * p / math.factorial(2 * n)
        p *= r2
        sign = -sign
    tail = abs(p) / math.factorial(2 * n_terms)
    return s - tail, s + tail


def sincos_bounds(x):
    """Rational bounds on (sin x, cos x) for a float x of moderate size."""
    q = Fraction(x)
    k = int(round(x / (math.pi / 2)))
    half_pi = (PI_BOUNDS[0] / 2, PI_BOUNDS[1] / 2)
    r_lo = q - k * half_pi[1 if k >= 0 else 0]
    r_hi = q - k * half_pi[0 if k >= 0 else 1]
    mid = (r_lo + r_hi) / 2
    slack = (r_hi - r_lo) / 2  # |sin'|, |cos'| <= 1
    s = _sin_series_bounds(mid)
    c = _cos_series_bounds(mid)
    s = (s[0] - slack, s[1] + slack)
    c = (c[0] - slack, c[1] + slack)
    table = {
        0: (s, c),
        1: (c, (-s[1], -s[0])),
        2: ((-s[1], -s[0]), (-c[1], -c[0])),
        3: ((-c[1], -c[0]), s),
    }
    return table[k % 4]


def frac_matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum(Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(m)) for j in range(p)]
        for i in range(n)
    ]


def frac_det(m):
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    out = Fraction(0)
    for j in range(n):
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = Fraction(m[0][j]) * frac_det(minor)
        out += term if j % 2 == 0 else -term
    return out


def contains_fraction(interval, fr):
    return Fraction(interval.lo) <= fr <= Fraction(interval.hi)


def encloses_bounds(interval, bounds):
    """The interval contains the whole rational interval ``bounds``."""
    return Fraction(interval.lo) <= bounds[0] and bounds[1] <= Fraction(interval.hi)


# -- random float generation --------------------------------------------------


def random_float(rng, span=300):
    w = rng.random()
    if w < 0.2:
        return float(rng.randint(-30, 30))
    if w < 0.4:
        return rng.uniform(-100.0, 100.0)
    m = rng.uniform(-1.0, 1.0)
    return m * (2.0 ** rng.randint(-span, span))


@pytest.fixture()
def rng(request):
    # Seeded per test so outcomes never depend on suite ordering.
    return random.Random(f"tangency::{request.node.name}")


# -- expensive shared runs ----------------------------------------------------


@pytest.fixture(scope="session")
def henon_proof():
    from tangency.henon import run_proof

    import time

    t0 = time.perf_counter()
    cert = run_proof()
    elapsed = time.perf_counter() - t0
    return cert, elapsed


@pytest.fixture(scope="session")
def henon_chain():
    from tangency.henon import build_chain

    return build_chain()
