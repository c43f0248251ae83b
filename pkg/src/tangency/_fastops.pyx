# cython: language_level=3, boundscheck=False, cdivision=True
"""Directed-rounding kernels, compiled backend.

Strict twin of ``tangency._pyops``: same branch structure, bit-identical
results.  Keep the two files in sync.
"""

from libc.math cimport INFINITY, nextafter, sqrt

cdef double _MAX = 1.7976931348623157e308
cdef double _TINY = 5e-324
cdef double _SPLIT = 134217729.0
cdef double _SAFE_LO = 2.0 ** -500
cdef double _SAFE_HI = 2.0 ** 500


cdef inline double _fabs(double x) noexcept:
    return -x if x < 0.0 else x


cdef inline double _prod_err_c(double a, double b, double p) noexcept:
    cdef double t, ah, al, bh, bl
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


cdef inline double _add_down(double a, double b) noexcept:
    cdef double s, bv, err
    s = a + b
    if s == INFINITY:
        return _MAX
    if s == -INFINITY:
        return -INFINITY
    bv = s - a
    err = (a - (s - bv)) + (b - bv)
    if err < 0.0:
        return nextafter(s, -INFINITY)
    return s


cdef inline double _add_up(double a, double b) noexcept:
    cdef double s, bv, err
    s = a + b
    if s == INFINITY:
        return INFINITY
    if s == -INFINITY:
        return -_MAX
    bv = s - a
    err = (a - (s - bv)) + (b - bv)
    if err > 0.0:
        return nextafter(s, INFINITY)
    return s


cdef inline double _mul_down(double a, double b) noexcept:
    cdef double p = a * b
    if p == INFINITY:
        return _MAX
    if p == -INFINITY:
        return -INFINITY
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return 0.0
        return -_TINY if (a < 0.0) != (b < 0.0) else 0.0
    if _SAFE_LO < _fabs(p) < _SAFE_HI and _fabs(a) < _SAFE_HI and _fabs(b) < _SAFE_HI:
        if _prod_err_c(a, b, p) >= 0.0:
            return p
    return nextafter(p, -INFINITY)


cdef inline double _mul_up(double a, double b) noexcept:
    cdef double p = a * b
    if p == INFINITY:
        return INFINITY
    if p == -INFINITY:
        return -_MAX
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return 0.0
        return _TINY if (a < 0.0) == (b < 0.0) else 0.0
    if _SAFE_LO < _fabs(p) < _SAFE_HI and _fabs(a) < _SAFE_HI and _fabs(b) < _SAFE_HI:
        if _prod_err_c(a, b, p) <= 0.0:
            return p
    return nextafter(p, INFINITY)


cdef inline bint _div_exact_c(double a, double b, double q) noexcept:
    cdef double p
    if not (_SAFE_LO < _fabs(a) < _SAFE_HI and _fabs(b) < _SAFE_HI and _fabs(q) < _SAFE_HI):
        return False
    p = q * b
    return p == a and _prod_err_c(q, b, p) == 0.0


cdef inline double _div_down(double a, double b) noexcept:
    cdef double q = a / b
    if q == INFINITY:
        return _MAX
    if q == -INFINITY:
        return -INFINITY
    if q == 0.0:
        if a == 0.0:
            return 0.0
        return -_TINY if (a < 0.0) != (b < 0.0) else 0.0
    if _div_exact_c(a, b, q):
        return q
    return nextafter(q, -INFINITY)


cdef inline double _div_up(double a, double b) noexcept:
    cdef double q = a / b
    if q == INFINITY:
        return INFINITY
    if q == -INFINITY:
        return -_MAX
    if q == 0.0:
        if a == 0.0:
            return 0.0
        return _TINY if (a < 0.0) == (b < 0.0) else 0.0
    if _div_exact_c(a, b, q):
        return q
    return nextafter(q, INFINITY)


cdef inline double _sqrt_down(double x) noexcept:
    cdef double s, p
    if x == 0.0:
        return 0.0
    s = sqrt(x)
    if _SAFE_LO < x < _SAFE_HI:
        p = s * s
        if p == x and _prod_err_c(s, s, p) == 0.0:
            return s
    return nextafter(s, -INFINITY)


cdef inline double _sqrt_up(double x) noexcept:
    cdef double s, p
    if x == 0.0:
        return 0.0
    s = sqrt(x)
    if _SAFE_LO < x < _SAFE_HI:
        p = s * s
        if p == x and _prod_err_c(s, s, p) == 0.0:
            return s
    return nextafter(s, INFINITY)


def add_down(double a, double b):
    return _add_down(a, b)

def add_up(double a, double b):
    return _add_up(a, b)

def sub_down(double a, double b):
    return _add_down(a, -b)

def sub_up(double a, double b):
    return _add_up(a, -b)

def mul_down(double a, double b):
    return _mul_down(a, b)

def mul_up(double a, double b):
    return _mul_up(a, b)

def div_down(double a, double b):
    return _div_down(a, b)

def div_up(double a, double b):
    return _div_up(a, b)

def sqrt_down(double x):
    return _sqrt_down(x)

def sqrt_up(double x):
    return _sqrt_up(x)


def iadd(double al, double ah, double bl, double bh):
    return _add_down(al, bl), _add_up(ah, bh)


def isub(double al, double ah, double bl, double bh):
    return _add_down(al, -bh), _add_up(ah, -bl)


def imul(double al, double ah, double bl, double bh):
    cdef double lo1, lo2, hi1, hi2
    if al >= 0.0:
        if bl >= 0.0:
            return _mul_down(al, bl), _mul_up(ah, bh)
        if bh <= 0.0:
            return _mul_down(ah, bl), _mul_up(al, bh)
        return _mul_down(ah, bl), _mul_up(ah, bh)
    if ah <= 0.0:
        if bl >= 0.0:
            return _mul_down(al, bh), _mul_up(ah, bl)
        if bh <= 0.0:
            return _mul_down(ah, bh), _mul_up(al, bl)
        return _mul_down(al, bh), _mul_up(al, bl)
    if bl >= 0.0:
        return _mul_down(al, bh), _mul_up(ah, bh)
    if bh <= 0.0:
        return _mul_down(ah, bl), _mul_up(al, bl)
    lo1 = _mul_down(al, bh)
    lo2 = _mul_down(ah, bl)
    hi1 = _mul_up(al, bl)
    hi2 = _mul_up(ah, bh)
    return (lo1 if lo1 <= lo2 else lo2), (hi1 if hi1 >= hi2 else hi2)


def idiv(double al, double ah, double bl, double bh):
    cdef double lo, hi
    if bl > 0.0:
        lo = _div_down(al, bh if al >= 0.0 else bl)
        hi = _div_up(ah, bl if ah >= 0.0 else bh)
        return lo, hi
    lo = _div_down(ah, bh if ah >= 0.0 else bl)
    hi = _div_up(al, bl if al >= 0.0 else bh)
    return lo, hi


def isqr(double al, double ah):
    cdef double h1, h2
    if al >= 0.0:
        return _mul_down(al, al), _mul_up(ah, ah)
    if ah <= 0.0:
        return _mul_down(ah, ah), _mul_up(al, al)
    h1 = _mul_up(al, al)
    h2 = _mul_up(ah, ah)
    return 0.0, (h1 if h1 >= h2 else h2)


def isqrt(double al, double ah):
    return _sqrt_down(al), _sqrt_up(ah)
