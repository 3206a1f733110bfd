"""Vectorised double-double arithmetic for binomial-basis evaluation.

A double-double is an unevaluated sum ``hi + lo`` with ``|lo| <= ulp(hi)/2``,
giving roughly 32 significant digits. Values are numpy arrays so a whole
batch of roots is evaluated at once. Complex numbers are pairs of
double-doubles ``(re, im)``.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    # Dekker product; numpy exposes no fused multiply-add
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


class DD:
    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=None):
        self.hi = np.asarray(hi, dtype=float)
        self.lo = np.zeros_like(self.hi) if lo is None else np.asarray(lo, dtype=float)

    def __add__(self, other):
        if not isinstance(other, DD):
            s, e = two_sum(self.hi, np.asarray(other, dtype=float))
            e = e + self.lo
            return DD(*quick_two_sum(s, e))
        s, e = two_sum(self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e = e + t
        s, e = quick_two_sum(s, e)
        e = e + f
        return DD(*quick_two_sum(s, e))

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, DD) else -np.asarray(other, dtype=float))

    def __mul__(self, other):
        if not isinstance(other, DD):
            b = np.asarray(other, dtype=float)
            p, e = two_prod(self.hi, b)
            e = e + self.lo * b
            return DD(*quick_two_sum(p, e))
        p, e = two_prod(self.hi, other.hi)
        e = e + (self.hi * other.lo + self.lo * other.hi)
        return DD(*quick_two_sum(p, e))

    def div_double(self, b):
        """Divide by an ordinary double (exact-ish long division, two steps)."""
        b = np.asarray(b, dtype=float)
        q1 = self.hi / b
        p, e = two_prod(q1, b)
        s, f = two_sum(self.hi, -p)
        f = f - e + self.lo
        q2 = (s + f) / b
        return DD(*quick_two_sum(q1, q2))

    def to_float(self):
        return self.hi + self.lo


class CDD:
    """Complex double-double."""

    __slots__ = ("re", "im")

    def __init__(self, re: DD, im: DD):
        self.re = re
        self.im = im

    @classmethod
    def from_complex(cls, z, z_lo=None):
        z = np.asarray(z, dtype=complex)
        if z_lo is None:
            return cls(DD(z.real), DD(z.imag))
        z_lo = np.asarray(z_lo, dtype=complex)
        return cls(DD(*quick_two_sum(z.real, z_lo.real)), DD(*quick_two_sum(z.imag, z_lo.imag)))

    def __add__(self, other):
        if isinstance(other, CDD):
            return CDD(self.re + other.re, self.im + other.im)
        other = np.asarray(other, dtype=complex)
        return CDD(self.re + other.real, self.im + other.imag)

    def __mul__(self, other: "CDD") -> "CDD":
        return CDD(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def scale(self, w):
        """Multiply by a real double."""
        return CDD(self.re * w, self.im * w)

    def div_double(self, b):
        return CDD(self.re.div_double(b), self.im.div_double(b))

    def hi(self):
        return self.re.hi + 1j * self.im.hi

    def lo(self):
        return self.re.lo + 1j * self.im.lo

    def to_complex(self):
        return self.re.to_float() + 1j * self.im.to_float()


def hstar_eval_dd(coeffs, z_hi, z_lo=None):
    """``sum_j h_j C(z + d - j, d)`` in double-double, for an array of ``z = z_hi + z_lo``.

    Returns the complex double rounding of the double-double result.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    d = len(coeffs) - 1
    z_hi = np.atleast_1d(np.asarray(z_hi, dtype=complex))
    if z_lo is None:
        z_lo = np.zeros_like(z_hi)
    z_lo = np.atleast_1d(np.asarray(z_lo, dtype=complex))
    # broadcast roots along axis 0 and shifts j along axis 1
    zh = z_hi[:, None] * np.ones(d + 1)
    zl = z_lo[:, None] * np.ones(d + 1)
    z = CDD.from_complex(zh, zl)
    shift = (d - np.arange(d + 1)).astype(float)
    acc = CDD(DD(np.ones_like(zh.real)), DD(np.zeros_like(zh.real)))
    for i in range(d):
        acc = (acc * (z + (shift - i))).div_double(float(i + 1))
    total_re = DD(np.zeros_like(z_hi.real))
    total_im = DD(np.zeros_like(z_hi.real))
    for j in range(d + 1):
        if coeffs[j] == 0.0:
            continue
        total_re = total_re + DD(acc.re.hi[:, j], acc.re.lo[:, j]) * coeffs[j]
        total_im = total_im + DD(acc.im.hi[:, j], acc.im.lo[:, j]) * coeffs[j]
    return total_re.to_float() + 1j * total_im.to_float()
