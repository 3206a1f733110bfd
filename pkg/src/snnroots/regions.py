"""Root regions for SNN and Ehrhart polynomials, and the angle sums that bound them.

For a point ``z`` the basis values ``v_j = C(z + d - j, d)`` turn by the angle
``A(j)`` between ``z - j`` and ``z + d - j`` from one ``j`` to the next. When the
``v_j`` sit in a closed half-plane through 0 no nonnegative combination of
them vanishes, so ``z`` is not a root of any SNN polynomial of degree ``d``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .hstar import as_complex, basis_values

REGION_KINDS = (
    "braun_disc",
    "bddps_disc",
    "cone_union",
    "vertical_strip",
    "snn_angle_locus",
    "snn_degree2",
    "ehrhart_degree2",
    "ehrhart_degree3",
)
_UNPARAMETERISED = {"snn_degree2", "ehrhart_degree2", "ehrhart_degree3"}


@dataclass(frozen=True)
class Region:
    """A named root region; ``d`` is required except for the fixed-degree ones."""

    kind: str
    d: int | None = None

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise ValueError(f"unknown region {self.kind!r}")
        if self.kind in _UNPARAMETERISED:
            if self.d is not None:
                raise ValueError(f"{self.kind} takes no degree parameter")
        elif self.d is None or self.d < 1:
            raise ValueError(f"{self.kind} needs a degree d >= 1")

    def __str__(self):
        return self.kind if self.d is None else f"{self.kind}({self.d})"

    @classmethod
    def parse(cls, text: str) -> "Region":
        """Parse ``"braun_disc(7)"`` or ``"snn_degree2"``."""
        text = text.strip()
        if text.endswith(")") and "(" in text:
            kind, arg = text[:-1].split("(", 1)
            return cls(kind.strip(), int(arg))
        return cls(text)


def braun_disc(d):
    return Region("braun_disc", d)


def bddps_disc(d):
    return Region("bddps_disc", d)


def cone_union(d):
    return Region("cone_union", d)


def vertical_strip(d):
    return Region("vertical_strip", d)


def snn_angle_locus(d):
    return Region("snn_angle_locus", d)


SNN_DEGREE2 = Region("snn_degree2")
EHRHART_DEGREE2 = Region("ehrhart_degree2")
EHRHART_DEGREE3 = Region("ehrhart_degree3")


# ---------------------------------------------------------------------------
# angles


def angle_A(z, j: int, d: int) -> float:
    """Unsigned angle in ``[0, pi]`` between ``z - j`` and ``z + d - j``."""
    if not 0 <= j <= d - 1:
        raise ValueError(f"j={j} outside 0..{d - 1}")
    z = as_complex(z)
    u, v = z - j, z + d - j
    if u == 0 or v == 0:
        raise ValueError(f"degenerate angle at z={z} (j={j}, d={d})")
    w = v * u.conjugate()
    return abs(math.atan2(w.imag, w.real))


def cos2_A_formula(k: float, j: int, d: int) -> float:
    """Law-of-cosines value of ``cos^2 A(j)`` at ``z = (d - 1) + k i``."""
    r = (d - 1) - j
    s = 2 * d - 1 - j
    if r < 0 or s <= 0 or k <= 0:
        raise ValueError(f"need k > 0 and 0 <= j <= d-1 (got k={k}, j={j}, d={d})")
    k2 = k * k
    return 1.0 - d * d * k2 / (k2 * k2 + (r * r + s * s) * k2 + r * r * s * s)


def angle_sum_array(z, d: int) -> np.ndarray:
    """Vectorised ``sum_j A(j)``; degenerate points give NaN."""
    z = np.asarray(z, dtype=complex)
    j = np.arange(d)
    u = z[..., None] - j
    v = z[..., None] + (d - j)
    w = v * np.conj(u)
    out = np.sum(np.abs(np.arctan2(w.imag, w.real)), axis=-1)
    degenerate = np.any((u == 0) | (v == 0), axis=-1)
    return np.where(degenerate, np.nan, out)


def angle_sum(z, d: int) -> float:
    """``sum_{j=0}^{d-1} A(j)`` at a single point."""
    z = as_complex(z)
    if z.imag == 0 and z.real == int(z.real) and -d <= z.real <= d - 1:
        raise ValueError(f"angle sum undefined at the integer point {z} for d={d}")
    return float(sum(angle_A(z, j, d) for j in range(d)))


def common_halfplane(z, d: int, slack: float = 1e-12) -> bool:
    """True iff the points ``C(z + d - j, d)`` lie in a closed half-plane through 0.

    Zero points are ignored. The test sorts arguments and asks whether some
    angular gap between consecutive points is at least ``pi``.
    """
    v = basis_values(as_complex(z), d)
    v = v[v != 0]
    if len(v) <= 1:
        return True
    args = np.sort(np.angle(v))
    gaps = np.diff(np.concatenate([args, [args[0] + 2 * np.pi]]))
    return bool(gaps.max() >= np.pi - slack)


# ---------------------------------------------------------------------------
# region membership


def _in_open_cone(z: complex, vertex: float, direction: float, half_width: float, tol: float) -> bool:
    # distance from z to the complement of the open cone must exceed tol
    w = (z - vertex) * direction
    rho = abs(w)
    if rho <= tol:
        return False
    phi = abs(math.atan2(w.imag, w.real))
    if phi >= half_width:
        return False
    margin = half_width - phi
    dist = rho if margin >= math.pi / 2 else rho * math.sin(margin)
    return dist > tol


def region_contains(region: Region, z, tol: float = 0.0) -> bool:
    """Membership of ``z`` in ``region``.

    Closed regions are closed and open ones open, as stated for each region.
    A positive ``tol`` treats points within ``tol`` of the boundary as on it
    (closed sets grow by ``tol``, open sets shrink by it), which is what
    numerically computed roots need; for ``snn_angle_locus`` it also loosens
    the angle-sum threshold and decides which points count as real.
    """
    z = as_complex(z)
    x, y = z.real, z.imag
    kind, d = region.kind, region.d
    if kind == "braun_disc":
        return abs(z + 0.5) <= d * (d - 0.5) + tol
    if kind == "bddps_disc":
        return abs(z) <= 1 + math.factorial(d + 1) + tol
    if kind == "cone_union":
        half = math.pi / d
        return _in_open_cone(z, d - 1, 1.0, half, tol) or _in_open_cone(z, -d, -1.0, half, tol)
    if kind == "vertical_strip":
        return -d - tol <= x <= d - 1 + tol
    if kind == "snn_angle_locus":
        if abs(y) <= tol or y == 0:
            return -d - tol <= x <= d - 1 + tol
        return angle_sum(z, d) >= math.pi - tol
    if kind == "snn_degree2":
        if abs(y) <= tol or y == 0:
            if -3 - tol <= x <= 2 + tol:
                return True
        # y^2 <= -x^2 - x + 1/2 is the disc |z + 1/2| <= sqrt(3)/2
        return abs(z + 0.5) <= math.sqrt(3) / 2 + tol
    if kind == "ehrhart_degree2":
        if abs(y) <= tol or y == 0:
            if any(abs(x - r) <= tol for r in (-2.0, -1.0, -2.0 / 3.0)):
                return True
        return -0.5 - tol <= x < tol and abs(y) <= math.sqrt(15) / 6 + tol
    if kind == "ehrhart_degree3":
        if (abs(y) <= tol or y == 0) and -3 - tol <= x <= 1 + tol:
            return True
        return -1 - tol <= x < 1 + tol and abs(z) <= math.sqrt(3) + tol
    raise ValueError(f"unknown region {kind!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# boundary tracing


@dataclass(frozen=True)
class BoundaryCurve:
    """Samples of ``{z : sum A(j) = pi, Im z > 0}`` ordered by angle about ``-1/2``."""

    degree: int
    points: tuple[complex, ...]
    thetas: tuple[float, ...]
    solver_tol: float
    missed: tuple[float, ...] = field(default=())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theta", "re", "im"])
        for theta, p in zip(self.thetas, self.points):
            writer.writerow([f"{theta:.12g}", f"{p.real:.12g}", f"{p.imag:.12g}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "d": self.degree,
            "solver_tol": self.solver_tol,
            "points": [[t, p.real, p.imag] for t, p in zip(self.thetas, self.points)],
            "missed_thetas": list(self.missed),
        }


def trace_boundary(d: int, n: int = 64, solver_tol: float = 1e-12, grid: int = 2000) -> BoundaryCurve:
    """Trace ``sum A(j) = pi`` along ``n`` rays from ``-1/2`` with angles in ``(0, pi)``.

    On each ray the outermost sign change of ``angle_sum - pi`` inside the
    disc ``|z + 1/2| <= d(d - 1/2)`` is located on a ``grid``-point scan and
    refined by bisection.
    Rays without a crossing are listed in ``missed``.
    """
    if d < 2:
        raise ValueError("boundary tracing needs d >= 2")
    if n < 8:
        raise ValueError("use at least 8 rays")
    radius = d * (d - 0.5)
    thetas = np.pi * (np.arange(n) + 0.5) / n
    rho = np.linspace(radius, 0.0, grid, endpoint=False)  # outside in
    points, kept, missed = [], [], []
    for theta in thetas:
        e = np.exp(1j * theta)
        g = angle_sum_array(-0.5 + rho * e, d) - np.pi
        inside = np.nonzero(np.nan_to_num(g, nan=-1.0) >= 0)[0]
        if len(inside) == 0 or inside[0] == 0:
            missed.append(float(theta))
            continue
        hi, lo = rho[inside[0] - 1], rho[inside[0]]  # g(hi) < 0 <= g(lo)
        mid = 0.5 * (lo + hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            gm = angle_sum(-0.5 + mid * e, d) - math.pi
            if abs(gm) <= solver_tol or hi - lo <= 4 * np.finfo(float).eps * hi:
                break
            if gm >= 0:
                lo = mid
            else:
                hi = mid
        z = complex(-0.5 + mid * e)
        if abs(angle_sum(z, d) - math.pi) > solver_tol:
            missed.append(float(theta))
            continue
        points.append(z)
        kept.append(float(theta))
    return BoundaryCurve(d, tuple(points), tuple(kept), solver_tol, tuple(missed))


# ---------------------------------------------------------------------------
# angle maxima on the line Re z = d - 1


def max_angle(d: int, j: int, k_range: tuple[float, float] | None = None) -> float:
    """Supremum of ``A(j)`` at ``z = (d - 1) + k i`` over ``k`` in ``k_range``.

    For ``r = d - 1 - j > 0`` the angle peaks at ``k^2 = r s`` with
    ``cos^2 A = 1 - d^2 / (r + s)^2`` and falls off monotonically on both sides,
    so a restricted range takes the clamped peak. For ``r = 0`` the angle
    decreases in ``k`` with limit ``pi/2`` as ``k -> 0``.
    """
    if not 0 <= j <= d - 1:
        raise ValueError(f"j={j} outside 0..{d - 1}")
    lo, hi = (0.0, math.inf) if k_range is None else k_range
    if lo < 0 or hi < lo:
        raise ValueError(f"bad k range {k_range}")
    r = d - 1 - j
    s = 2 * d - 1 - j

    def at(k):
        return math.acos(math.sqrt(max(cos2_A_formula(k, j, d), 0.0)))

    if r == 0:
        return math.pi / 2 if lo == 0 else at(lo)
    peak = math.sqrt(r * s)
    if lo <= peak <= hi:
        return math.acos(math.sqrt(1.0 - d * d / (r + s) ** 2))
    return at(min(max(peak, lo), hi))
