"""Polynomials in the binomial basis ``C(t+d-j, d)``, ``j = 0..d``.

A degree-``d`` polynomial ``f`` has unique coordinates ``(h_0, ..., h_d)`` with

    f(t) = sum_j h_j * C(t + d - j, d),

which are also the numerator coefficients of ``sum_t f(t) x^t`` written over
``(1 - x)^(d+1)``. Conversions between this basis and the monomial basis are
carried out in exact integer arithmetic and rounded once at the end.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class HStarVector:
    """Coordinates ``(h_0, ..., h_d)`` of a polynomial in the basis ``B_d``.

    ``degree`` is the basis length parameter and is never trimmed; the
    polynomial itself has monomial degree ``d`` only when ``sum(h) != 0``.
    """

    degree: int
    coeffs: tuple[float, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be nonnegative, got {self.degree}")
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"expected {self.degree + 1} coefficients for degree {self.degree}, "
                f"got {len(coeffs)}"
            )
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("h* coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, coeffs: Sequence[float]) -> "HStarVector":
        return cls(len(coeffs) - 1, tuple(coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def to_dict(self) -> dict:
        return {"d": self.degree, "h": list(self.coeffs)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj) -> "HStarVector":
        # a bare list is accepted as shorthand for {"d": len-1, "h": list}
        if isinstance(obj, list):
            return cls.of(obj)
        h = obj["h"]
        return cls(int(obj.get("d", len(h) - 1)), tuple(h))

    @classmethod
    def from_json(cls, text: str) -> "HStarVector":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class MonomialPolynomial:
    """Real polynomial ``c_0 + c_1 t + ... + c_n t^n`` (constant term first).

    The raw coefficient tuple is kept as given, trailing zeros included;
    :meth:`normalized` trims them. ``exact`` optionally carries the rational
    coefficients the floats were rounded from; basis conversion prefers it.
    """

    coeffs: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        """Monomial degree after trimming; -1 for the zero polynomial."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0.0:
                return k
        return -1

    def normalized(self) -> "MonomialPolynomial":
        n = max(self.degree, 0)
        exact = self.exact[: n + 1] if self.exact is not None else None
        return MonomialPolynomial(self.coeffs[: n + 1], exact)

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, z):
        return horner(self.coeffs, z)

    def to_dict(self) -> dict:
        return {"c": list(self.coeffs)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj) -> "MonomialPolynomial":
        return cls(tuple(obj["c"]))

    @classmethod
    def from_json(cls, text: str) -> "MonomialPolynomial":
        return cls.from_dict(json.loads(text))


def as_complex(z) -> complex:
    """Coerce to a finite Python complex; rejects NaN and infinities."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError(f"non-finite complex value {w!r}")
    return w


# ---------------------------------------------------------------------------
# evaluation


def binom_eval(z, j: int, d: int):
    """``C(z + d - j, d)`` for complex ``z`` (scalar or ndarray).

    Evaluated as ``prod_i (z + d - j - i) / (i + 1)``, dividing as it
    multiplies so intermediates stay near the scale of the result.
    """
    if not 0 <= j <= d:
        raise ValueError(f"shift j={j} outside 0..{d}")
    acc = np.ones_like(z, dtype=complex) if isinstance(z, np.ndarray) else 1 + 0j
    for i in range(d):
        acc = acc * ((z + (d - j - i)) / (i + 1))
    return acc


def basis_values(z, d: int, derivative: bool = False):
    """All basis values ``C(z + d - j, d)`` for ``j = 0..d``, stacked on the last axis.

    With ``derivative=True`` also returns the ``z``-derivatives, computed with
    prefix/suffix products so zero factors need no special handling.
    """
    z = np.asarray(z, dtype=complex)
    shape = z.shape + (d + 1,)
    if d == 0:
        ones = np.ones(shape, dtype=complex)
        return (ones, np.zeros(shape, dtype=complex)) if derivative else ones
    j = np.arange(d + 1)
    i = np.arange(d)
    # factors[..., j, i] = (z + d - j - i) / (i + 1)
    factors = (z[..., None, None] + (d - j[:, None] - i[None, :])) / (i + 1)
    if not derivative:
        return np.prod(factors, axis=-1)
    prefix = np.ones(factors.shape[:-1] + (d + 1,), dtype=complex)
    suffix = np.ones_like(prefix)
    np.cumprod(factors, axis=-1, out=prefix[..., 1:])
    np.cumprod(factors[..., ::-1], axis=-1, out=suffix[..., 1:])
    suffix = suffix[..., ::-1]
    values = prefix[..., d]
    deriv = np.sum(prefix[..., :d] * suffix[..., 1:] / (i + 1), axis=-1)
    return values, deriv


def hstar_eval(h: HStarVector, z):
    """``sum_j h_j C(z + d - j, d)``; ``z`` may be a scalar or an array."""
    vals = basis_values(z, h.degree)
    out = vals @ np.asarray(h.coeffs, dtype=float)
    return complex(out) if np.ndim(out) == 0 else out


def hstar_eval_with_derivative(h: HStarVector, z):
    vals, der = basis_values(z, h.degree, derivative=True)
    w = np.asarray(h.coeffs, dtype=float)
    return vals @ w, der @ w


def horner(coeffs: Sequence[float], z):
    """Evaluate ``sum_k coeffs[k] z^k``."""
    acc = 0j if not isinstance(z, np.ndarray) else np.zeros_like(z, dtype=complex)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def horner_with_derivative(coeffs: Sequence[float], z):
    p = np.zeros_like(z, dtype=complex)
    dp = np.zeros_like(z, dtype=complex)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


# ---------------------------------------------------------------------------
# exact basis change


@lru_cache(maxsize=None)
def _falling_products(d: int) -> tuple[tuple[int, ...], ...]:
    """Integer coefficients of ``d! * C(t + d - j, d)`` in powers of ``t``, per ``j``."""
    rows = []
    for j in range(d + 1):
        poly = [1]
        for i in range(d):
            a = d - j - i  # multiply by (t + a)
            nxt = [0] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k] += a * c
                nxt[k + 1] += c
            poly = nxt
        rows.append(tuple(poly))
    return tuple(rows)


def _scaled_ints(values: Sequence[float]) -> tuple[list[int], int]:
    """Exact integers ``n_i`` and a common exponent ``e`` with ``values[i] = n_i * 2**e``."""
    parts = []
    e_min = 0
    for v in values:
        if v == 0.0:
            parts.append((0, 0))
            continue
        m, e = math.frexp(v)
        n = int(m * (1 << 53))
        parts.append((n, e - 53))
        e_min = min(e_min, e - 53)
    return [n << (e - e_min) for n, e in parts], e_min


def _ratio_to_float(num: int, den: int, exp2: int) -> float:
    """Correctly rounded ``num * 2**exp2 / den``."""
    if exp2 >= 0:
        return (num << exp2) / den
    return num / (den << -exp2)


def hstar_to_monomial(h: HStarVector) -> MonomialPolynomial:
    """Expand ``sum_j h_j C(t + d - j, d)`` into monomial coefficients.

    The result has ``d + 1`` raw coefficients; each is the correctly rounded
    value of the exact expansion. The leading one is ``sum(h) / d!``.
    """
    d = h.degree
    rows = _falling_products(d)
    ints, e = _scaled_ints(h.coeffs)
    fact = math.factorial(d)
    coeffs, exact = [], []
    for k in range(d + 1):
        num = sum(n * rows[j][k] for j, n in enumerate(ints) if n)
        coeffs.append(_ratio_to_float(num, fact, e))
        exact.append(Fraction(num << e, fact) if e >= 0 else Fraction(num, fact << -e))
    return MonomialPolynomial(tuple(coeffs), tuple(exact))


def monomial_to_hstar(f: MonomialPolynomial, d: int) -> HStarVector:
    """Coordinates of ``f`` in ``B_d``.

    Uses ``h_j = sum_{i<=j} (-1)^i C(d+1, i) f(j - i)``, evaluated exactly.
    Raises ``ValueError`` if ``f`` has degree above ``d``.
    """
    if d < 0:
        raise ValueError("basis length d must be nonnegative")
    if f.degree > d:
        raise ValueError(f"polynomial of degree {f.degree} does not fit in B_{d}")
    n = max(f.degree, 0) + 1
    if f.exact is not None:
        # common denominator turns the exact rationals into integers
        den = math.lcm(*(q.denominator for q in f.exact[:n]))
        ints = [q.numerator * (den // q.denominator) for q in f.exact[:n]]
        e = 0
    else:
        ints, e = _scaled_ints(f.coeffs[:n])
        den = 1
    values = [sum(c * m**k for k, c in enumerate(ints)) for m in range(d + 1)]
    h = []
    for j in range(d + 1):
        num = sum((-1) ** i * math.comb(d + 1, i) * values[j - i] for i in range(j + 1))
        h.append(_ratio_to_float(num, den, e))
    return HStarVector(d, tuple(h))


def is_snn(h: HStarVector, tol: float = 0.0) -> bool:
    """True when every ``h_j >= -tol`` and some ``h_j > tol``."""
    return all(c >= -tol for c in h.coeffs) and max(h.coeffs) > tol
