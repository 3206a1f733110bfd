"""Brute-force lattice-point counts in dilates of integer simplices.

Membership uses exact barycentric coordinates: with the vertices as columns of
``M = [[v_0 ... v_d], [1 ... 1]]``, a point ``x`` lies in ``t S`` iff
``adj(M) [x; t]`` has every entry of the sign of ``det M`` (or zero). All
arithmetic is in integers or ``Fraction``; floats appear only in the returned
polynomial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .hstar import HStarVector, MonomialPolynomial, monomial_to_hstar

MAX_BOX_POINTS = 10**8
MAX_DIM = 4
_SLAB = 2_000_000


class CountGuardError(ValueError):
    """The bounding box of the dilate is too large to scan."""


class LatticeConsistencyError(ArithmeticError):
    """Counts produced an h*-vector that is not a nonnegative integer vector."""


def _det_and_adjugate(m: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Exact determinant and adjugate of an integer matrix (fraction-free via Fraction)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0, []
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inv = [row[n:] for row in a]
    d = int(det)
    adj = [[int(x * d) for x in row] for row in inv]
    return d, adj


@dataclass(frozen=True)
class LatticeSimplex:
    """Full-dimensional simplex with ``dim + 1`` integer vertices in ``Z^dim``."""

    dim: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {self.dim}")
        verts = []
        for v in self.vertices:
            if any(isinstance(c, float) and not c.is_integer() for c in v):
                raise ValueError(f"vertex {v} is not a lattice point")
            verts.append(tuple(int(c) for c in v))
        if len(verts) != self.dim + 1 or any(len(v) != self.dim for v in verts):
            raise ValueError(f"need {self.dim + 1} vertices with {self.dim} coordinates each")
        object.__setattr__(self, "vertices", tuple(verts))
        if self._system[0] == 0:
            raise ValueError("vertices are affinely dependent")

    @cached_property
    def _system(self) -> tuple[int, list[list[int]]]:
        d = self.dim
        m = [[self.vertices[k][i] for k in range(d + 1)] for i in range(d)]
        m.append([1] * (d + 1))
        return _det_and_adjugate(m)

    @property
    def normalized_volume(self) -> int:
        """``|det|``, i.e. ``d!`` times the Euclidean volume."""
        return abs(self._system[0])

    def to_dict(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj) -> "LatticeSimplex":
        return cls(int(obj["dim"]), tuple(tuple(v) for v in obj["vertices"]))

    @classmethod
    def from_json(cls, text: str) -> "LatticeSimplex":
        return cls.from_dict(json.loads(text))


def standard_simplex(d: int) -> LatticeSimplex:
    verts = [tuple([0] * d)] + [tuple(int(i == k) for i in range(d)) for k in range(d)]
    return LatticeSimplex(d, tuple(verts))


def reeve_simplex(r: int) -> LatticeSimplex:
    """``conv{0, e1, e2, (1, 1, r)}``: no interior points, volume ``r/6``."""
    return LatticeSimplex(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, r)))


def _scan(s: LatticeSimplex, t: int, strict: bool) -> int:
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    if t == 0:
        return 0 if strict else 1
    d = s.dim
    det, adj = s._system
    sign = 1 if det > 0 else -1
    coords = np.array(s.vertices, dtype=np.int64) * t
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    sizes = hi - lo + 1
    total = int(np.prod(sizes))
    if total > MAX_BOX_POINTS:
        raise CountGuardError(f"bounding box of {t}S has {total} points (limit {MAX_BOX_POINTS})")
    bound = int(np.abs(np.array(adj)).max()) * (int(np.abs(coords).max()) + t) * (d + 1)
    if bound >= 2**62:
        raise CountGuardError("coordinates too large for exact 64-bit barycentric sums")
    a = np.array(adj, dtype=np.int64) * sign  # rows: barycentric numerators
    count = 0
    for start in range(0, total, _SLAB):
        idx = np.arange(start, min(start + _SLAB, total), dtype=np.int64)
        pts = np.empty((len(idx), d), dtype=np.int64)
        rem = idx
        for axis in range(d - 1, -1, -1):
            pts[:, axis] = lo[axis] + rem % sizes[axis]
            rem = rem // sizes[axis]
        lam = pts @ a[:, :d].T + t * a[:, d]
        inside = np.all(lam > 0, axis=1) if strict else np.all(lam >= 0, axis=1)
        count += int(inside.sum())
    return count


def count_dilate(s: LatticeSimplex, t: int) -> int:
    """Number of lattice points in ``t S`` (1 for ``t = 0``)."""
    return _scan(s, t, strict=False)


def interior_count(s: LatticeSimplex, t: int = 1) -> int:
    """Number of lattice points strictly inside ``t S``."""
    return _scan(s, t, strict=True)


def ehrhart_counts(s: LatticeSimplex) -> list[int]:
    return [count_dilate(s, t) for t in range(s.dim + 1)]


def ehrhart_exact(s: LatticeSimplex) -> list[Fraction]:
    """Exact monomial coefficients of the Ehrhart polynomial (Newton forward differences)."""
    d = s.dim
    diffs = [Fraction(c) for c in ehrhart_counts(s)]
    newton = []
    for k in range(d + 1):
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    # sum_k newton[k] * C(t, k)  ->  monomial coefficients
    coeffs = [Fraction(0)] * (d + 1)
    basis = [Fraction(1)]  # falling factorial t(t-1)...(t-k+1) / k!
    for k in range(d + 1):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b / (k + 1)
            nxt[i] -= b * k / (k + 1)
        basis = nxt
    return coeffs


def ehrhart_of(s: LatticeSimplex) -> MonomialPolynomial:
    exact = ehrhart_exact(s)
    return MonomialPolynomial(tuple(float(c) for c in exact), tuple(exact))


def hstar_of(s: LatticeSimplex, tol: float = 1e-6) -> HStarVector:
    """h*-vector of ``S``; entries are checked to be nonnegative integers and snapped."""
    h = monomial_to_hstar(ehrhart_of(s), s.dim)
    snapped = []
    for x in h.coeffs:
        r = round(x)
        if abs(x - r) > tol or r < 0:
            raise LatticeConsistencyError(f"h* entry {x} of {s.vertices} is not a nonnegative integer")
        snapped.append(float(r))
    return HStarVector(s.dim, tuple(snapped))


def random_simplex(rng, dim: int, lo: int = -3, hi: int = 3, max_tries: int = 1000) -> LatticeSimplex:
    """A full-dimensional simplex with coordinates drawn from ``rng.integers(lo, hi + 1)``."""
    for _ in range(max_tries):
        verts = tuple(tuple(int(c) for c in rng.integers(lo, hi + 1, size=dim)) for _ in range(dim + 1))
        try:
            return LatticeSimplex(dim, verts)
        except ValueError:
            continue
    raise RuntimeError("could not draw an affinely independent vertex set")


def read_simplices(path) -> list[LatticeSimplex]:
    """Read one JSON simplex, or JSON lines with one simplex per line."""
    with open(path) as fh:
        text = fh.read()
    text = text.strip()
    if not text:
        return []
    try:
        return [LatticeSimplex.from_dict(json.loads(text))]
    except json.JSONDecodeError:
        return [LatticeSimplex.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def volume_check(s: LatticeSimplex) -> bool:
    """Leading Ehrhart coefficient equals the Euclidean volume ``|det| / d!``."""
    return ehrhart_exact(s)[-1] == Fraction(s.normalized_volume, math.factorial(s.dim))
