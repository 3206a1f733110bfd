"""Extremal SNN polynomials, growth of their largest roots, and root prescription.

``S_d`` has every ``h_j = 1``; ``M_d = C(t+d, d) + C(t, d)`` has only the two end
coefficients. All roots of both lie on ``Re z = -1/2``. The largest imaginary
part ``b_d`` among the roots of ``M_d`` solves

    p_d(b) = sum_{j<d} arctan((j + 1/2) / b) = pi / 2,

and ``p_d`` is strictly decreasing, so bisection finds it.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .hstar import HStarVector, as_complex, basis_values, hstar_eval, is_snn
from .regions import common_halfplane
from .roots import find_roots, polish_root


def make_Sd(d: int) -> HStarVector:
    if d < 1:
        raise ValueError("S_d needs d >= 1")
    return HStarVector(d, (1.0,) * (d + 1))


def make_Md(d: int) -> HStarVector:
    if d < 1:
        raise ValueError("M_d needs d >= 1")
    return HStarVector(d, (1.0,) + (0.0,) * (d - 1) + (1.0,))


# ---------------------------------------------------------------------------
# cotangent growth equation


def p_d(b: float, d: int) -> float:
    """``sum_{j=0}^{d-1} arccot(b / (j + 1/2))`` for ``b > 0``."""
    if b <= 0:
        raise ValueError("p_d is defined for b > 0")
    return math.fsum(math.atan((j + 0.5) / b) for j in range(d))


def solve_bd(d: int, tol: float = 1e-14) -> float:
    """Root ``b_d`` of ``p_d(b) = pi/2`` on ``(0, d^2]``.

    For ``d = 1`` there is no positive solution; ``M_1 = 2t + 1`` has its only
    root on the real axis, so 0 is returned.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return 0.0
    target = math.pi / 2
    lo, hi = 0.0, float(d * d)
    mid = hi
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if p_d(mid, d) > target:
            lo = mid
        else:
            hi = mid
    if abs(p_d(mid, d) - target) > tol:
        raise ArithmeticError(f"bisection for b_{d} ended {abs(p_d(mid, d) - target):.2e} from pi/2")
    return mid


@dataclass(frozen=True)
class GrowthRow:
    d: int
    b_d: float
    md_max_imag: float
    sd_max_norm: float
    asym_md: float
    asym_sd: float


GROWTH_COLUMNS = ("d", "b_d", "md_max_imag", "sd_max_norm", "d2_over_pi", "dd2_over_2pi")


def growth_table(d_min: int, d_max: int, tol: float = 1e-10) -> list[GrowthRow]:
    if not 2 <= d_min <= d_max <= 30:
        raise ValueError("need 2 <= d_min <= d_max <= 30")
    rows = []
    for d in range(d_min, d_max + 1):
        md = find_roots(make_Md(d), tol)
        sd = find_roots(make_Sd(d), tol)
        if not (md.converged and sd.converged):
            raise ArithmeticError(f"root finding did not converge for d={d}")
        rows.append(
            GrowthRow(
                d=d,
                b_d=solve_bd(d),
                md_max_imag=float(np.max(md.as_array().imag)),
                sd_max_norm=float(np.max(np.abs(sd.as_array() + 0.5))),
                asym_md=d * d / math.pi,
                asym_sd=d * (d + 2) / (2 * math.pi),
            )
        )
    return rows


def growth_csv(rows: list[GrowthRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GROWTH_COLUMNS)
    for r in rows:
        w.writerow([r.d] + [f"{v:.12g}" for v in (r.b_d, r.md_max_imag, r.sd_max_norm, r.asym_md, r.asym_sd)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# prescribing a root


class NoDependenceError(ValueError):
    """No nonnegative dependence among the basis values exists at this point."""


def construct_snn_with_root(z, d: int) -> HStarVector:
    """An SNN vector whose polynomial vanishes at ``z``.

    The basis values ``v_j`` are plane vectors; among all triples whose open
    positive hull contains 0 the one with the widest minimum angular
    separation is used, and its dependence is scaled so the largest
    coefficient is 1.
    """
    z = as_complex(z)
    if common_halfplane(z, d):
        raise NoDependenceError(f"no nonnegative dependence exists at z={z} for d={d}")
    v = basis_values(z, d)
    unit = v / np.where(v == 0, 1, np.abs(v))
    best, best_sep = None, -1.0
    for a, b, c in itertools.combinations(range(d + 1), 3):
        va, vb, vc = unit[a], unit[b], unit[c]
        if 0 in (v[a], v[b], v[c]):
            continue
        det = va.real * vb.imag - va.imag * vb.real
        if abs(det) < 1e-12:
            continue
        # alpha*va + beta*vb = -vc in unit-vector coordinates
        alpha = (-vc.real * vb.imag + vc.imag * vb.real) / det
        beta = (-va.real * vc.imag + va.imag * vc.real) / det
        if alpha <= 0 or beta <= 0:
            continue
        sep = min(abs(np.angle(va / vb)), abs(np.angle(va / vc)), abs(np.angle(vb / vc)))
        if sep > best_sep:
            best_sep = sep
            best = {a: alpha / abs(v[a]), b: beta / abs(v[b]), c: 1.0 / abs(v[c])}
    if best is None:
        # 0 on the hull boundary: look for an antiparallel pair
        for a, b in itertools.combinations(range(d + 1), 2):
            if v[a] != 0 and v[b] != 0 and abs(abs(np.angle(unit[a] / unit[b])) - math.pi) < 1e-12:
                best = {a: 1.0 / abs(v[a]), b: 1.0 / abs(v[b])}
                break
    if best is None:
        raise NoDependenceError(f"no nonnegative dependence found at z={z} for d={d}")
    top = max(best.values())
    h = [0.0] * (d + 1)
    for j, w in best.items():
        h[j] = w / top
    return HStarVector(d, tuple(h))


def round_to_integer_hstar(h: HStarVector, z_target, max_denom: int = 64, tol: float = 1e-12):
    """Round ``h`` to a nonnegative integer vector and locate its root nearest ``z_target``.

    ``h / max(h)`` is multiplied by the integer ``N <= max_denom`` that minimises
    the total rounding error relative to ``N`` (smallest such ``N`` on ties),
    rounded, and reduced by the gcd. Integer input is returned unchanged.
    Returns ``(rounded, root)``.
    """
    if not is_snn(h):
        raise ValueError("rounding needs an SNN vector")
    coeffs = np.asarray(h.coeffs, dtype=float)
    if np.all(coeffs == np.round(coeffs)):
        ints = coeffs
    else:
        unit = coeffs / coeffs.max()
        best_n, best_err = 1, math.inf
        for n in range(1, max_denom + 1):
            err = float(np.sum(np.abs(np.round(unit * n) - unit * n))) / n
            if err < best_err * (1 - 1e-9):
                best_n, best_err = n, err
        ints = np.round(unit * best_n)
        g = math.gcd(*(int(c) for c in ints))
        if g > 1:
            ints = ints / g
    if not ints.any():
        raise ValueError("rounding produced the zero vector")
    rounded = HStarVector(h.degree, tuple(float(c) for c in ints))
    try:
        root = polish_root(rounded, z_target, tol)
    except ArithmeticError:
        root = find_roots(rounded, tol).nearest(z_target)
    return rounded, root


# ---------------------------------------------------------------------------
# necessary conditions for Ehrhart h*-vectors


@dataclass(frozen=True)
class ScreenCheck:
    name: str
    passed: bool
    detail: str
    source: str


@dataclass(frozen=True)
class ScreenReport:
    h: HStarVector
    checks: tuple[ScreenCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "h": self.h.to_dict(),
            "passed": self.passed,
            "checks": [
                {"name": c.name, "pass": c.passed, "detail": c.detail, "source": c.source}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _is_int(x: float, tol: float) -> bool:
    return abs(x - round(x)) <= tol


def ehrhart_screen(h: HStarVector, include_extrapolated: bool = True, int_tol: float = 1e-9) -> ScreenReport:
    """Necessary conditions an Ehrhart h*-vector must meet.

    Passing proves nothing; failing any check rules the vector out. The top
    inequality ``h_d <= h_0 + h_1`` is only cited for ``d = 5`` and is applied
    at other degrees when ``include_extrapolated`` is set.
    """
    c = h.coeffs
    d = h.degree
    checks = [
        ScreenCheck(
            "nonnegative_integers",
            all(x >= 0 and _is_int(x, int_tol) for x in c),
            f"h = {list(c)}",
            "Stanley non-negativity: h* lies in Z_{>=0}^{d+1}",
        ),
        ScreenCheck(
            "h0_equals_1",
            _is_int(c[0], int_tol) and round(c[0]) == 1,
            f"h_0 = {c[0]:g}",
            "L_P(0) = 1 for a lattice polytope",
        ),
    ]
    if d >= 1:
        checks.append(
            ScreenCheck(
                "interior_implies_h1",
                c[d] == 0 or c[1] != 0,
                f"h_d = {c[d]:g}, h_1 = {c[1]:g}",
                "h_d counts interior points; interior points force h_1 = L_P(1) - (d+1) > 0",
            )
        )
        if d == 5 or include_extrapolated:
            checks.append(
                ScreenCheck(
                    "top_le_h0_plus_h1",
                    c[d] <= c[0] + c[1],
                    f"h_d = {c[d]:g} vs h_0 + h_1 = {c[0] + c[1]:g}",
                    "h_d <= h_0 + h_1, cited for d=5"
                    + ("" if d == 5 else ", extrapolated otherwise"),
                )
            )
    return ScreenReport(h, tuple(checks))


def root_residual(h: HStarVector, z) -> float:
    """``|F(z)| / (||h||_inf * max_j |C(z + d - j, d)|)``, the constructor's acceptance measure."""
    v = basis_values(as_complex(z), h.degree)
    return abs(hstar_eval(h, z)) / (max(abs(x) for x in h.coeffs) * float(np.max(np.abs(v))))
