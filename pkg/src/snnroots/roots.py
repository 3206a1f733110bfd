"""All complex roots of a polynomial given in the monomial or binomial basis.

Roots come from an Aberth-Ehrlich simultaneous iteration started on a
deterministic circle, followed by Newton polishing. For h*-vector input every
evaluation happens in the binomial basis, which is far better conditioned than
the expanded monomial form at high degree; if polishing stalls for ``d > 15``
the evaluation is repeated in double-double arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .ddouble import CDD, hstar_eval_dd
from .hstar import (
    HStarVector,
    MonomialPolynomial,
    as_complex,
    horner_with_derivative,
    hstar_eval_with_derivative,
    hstar_to_monomial,
)

Polynomial = Union[MonomialPolynomial, HStarVector]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
MAX_SWEEPS = 200
NEWTON_STEPS = 50
EXTENDED_DEGREE = 15
_EPS = np.finfo(float).eps


class ConvergenceError(ArithmeticError):
    """An iteration failed to reach the requested tolerance."""


class DerivativeBreakdown(ConvergenceError):
    """Newton's method met a vanishing derivative."""


class DivergenceError(ConvergenceError):
    """Iterates left the region where roots can lie."""


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    tolerance: float
    converged: bool

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def as_array(self) -> np.ndarray:
        return np.array(self.roots, dtype=complex)

    def nearest(self, z) -> complex:
        z = as_complex(z)
        return min(self.roots, key=lambda r: abs(r - z))

    def to_dict(self) -> dict:
        return {
            "roots": [[r.real, r.imag] for r in self.roots],
            "residuals": list(self.residuals),
            "converged": self.converged,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# helpers


def cauchy_radius(coeffs) -> float:
    """Unique positive root of ``|c_n| x^n - sum_{k<n} |c_k| x^k``.

    Every root of the polynomial lies in the closed disc of this radius.
    """
    c = np.abs(np.asarray(coeffs, dtype=float))
    n = len(c) - 1
    rel = c[:n] / c[n]
    nz = rel > 0
    if not nz.any():
        return 0.0
    rel, powers = rel[nz], (np.arange(n) - n)[nz]

    def excess(logx):
        # 1 - sum |c_k/c_n| x^(k-n), increasing in x
        with np.errstate(over="ignore"):
            return 1.0 - np.sum(rel * np.exp(powers * logx))

    lo, hi = -745.0, math.log1p(rel.max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return math.exp(hi)


def initial_guesses(n: int, radius: float) -> np.ndarray:
    """``n`` points on the circle of the given radius at golden-angle offsets."""
    k = np.arange(n)
    theta = 2.0 * np.pi * k / n + 0.5 * GOLDEN_ANGLE / max(n, 1)
    return radius * np.exp(1j * theta)


def residual_scale(coeffs, z) -> np.ndarray:
    """``sum_k |c_k| max(1, |z|)^k`` for monomial coefficients ``c``."""
    r = np.maximum(1.0, np.abs(np.asarray(z)))
    acc = np.zeros_like(r)
    for c in reversed(coeffs):
        acc = acc * r + abs(c)
    return acc


def _evaluator(poly: Polynomial):
    if isinstance(poly, HStarVector):
        return lambda z: hstar_eval_with_derivative(poly, z)
    coeffs = poly.coeffs
    return lambda z: horner_with_derivative(coeffs, z)


def aberth(evaluate, z0: np.ndarray, max_sweeps: int = MAX_SWEEPS):
    """Simultaneous Aberth-Ehrlich iteration.

    ``evaluate(z)`` returns ``(f(z), f'(z))`` for an array ``z``. Returns the
    final iterates and whether every correction fell to rounding level.
    """
    z = np.array(z0, dtype=complex)
    n = len(z)
    active = np.ones(n, dtype=bool)
    for _ in range(max_sweeps):
        f, df = evaluate(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(f == 0, 0.0, f / df)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            pull = np.sum(1.0 / diff, axis=1)
            step = newton / (1.0 - newton * pull)
        # a vanishing derivative away from a root: nudge instead of jumping
        bad = ~np.isfinite(step)
        step[bad] = 1e-3 * (1.0 + np.abs(z[bad]))
        step[~active] = 0.0
        z = z - step
        small = np.abs(step) <= 4.0 * _EPS * np.maximum(np.abs(z), 1e-300)
        active &= ~small
        if not active.any():
            return z, True
    return z, False


def _newton_batch(evaluate, z: np.ndarray, steps: int) -> np.ndarray:
    z = z.copy()
    f, df = evaluate(z)
    active = f != 0
    for _ in range(steps):
        if not active.any():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(active, f / df, 0.0)
        ok = np.isfinite(step)
        step[~ok] = 0.0
        active &= ok
        trial = z - step
        f_new, df_new = evaluate(trial)
        # accept only steps that do not increase |f|
        accept = active & (np.abs(f_new) <= np.abs(f))
        z = np.where(accept, trial, z)
        f = np.where(accept, f_new, f)
        df = np.where(accept, df_new, df)
        tiny = np.abs(step) <= 2.0 * _EPS * np.abs(z)
        active &= accept & ~tiny & (f != 0)
    return z


def _newton_dd(h: HStarVector, z: np.ndarray, steps: int = 8):
    """Newton with the function value in double-double; returns (hi, lo, f)."""
    hi = np.array(z, dtype=complex)
    lo = np.zeros_like(hi)
    coeffs = h.coeffs
    f = hstar_eval_dd(coeffs, hi, lo)
    for _ in range(steps):
        _, df = hstar_eval_with_derivative(h, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(f == 0, 0.0, f / df)
        step[~np.isfinite(step)] = 0.0
        w = CDD.from_complex(hi, lo) + (-step)
        new_hi, new_lo = w.hi(), w.lo()
        f_new = hstar_eval_dd(coeffs, new_hi, new_lo)
        accept = np.abs(f_new) <= np.abs(f)
        hi = np.where(accept, new_hi, hi)
        lo = np.where(accept, new_lo, lo)
        f = np.where(accept, f_new, f)
        if not np.any(accept & (np.abs(step) > 1e-30 * np.abs(hi))):
            break
    return hi, lo, f


# ---------------------------------------------------------------------------
# public API


def find_roots(
    poly: Polynomial,
    tol: float = 1e-10,
    *,
    max_sweeps: int = MAX_SWEEPS,
    newton_steps: int = NEWTON_STEPS,
    extended: bool | None = None,
) -> RootSet:
    """All roots of ``poly`` with multiplicity.

    ``extended=None`` escalates to double-double only for ``d > 15`` roots
    whose residual is still above ``tol``; ``True``/``False`` force it on or off.
    The per-root residual is ``|f(z)| / sum_k |c_k| max(1, |z|)^k``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(poly, HStarVector):
        mono = hstar_to_monomial(poly).normalized()
    else:
        mono = poly.normalized()
    if mono.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    n = mono.degree
    if n < 1:
        raise ValueError("a constant polynomial has no roots")
    coeffs = mono.coeffs

    evaluate = _evaluator(poly)
    z0 = initial_guesses(n, cauchy_radius(coeffs))
    z, settled = aberth(evaluate, z0, max_sweeps)
    z = _newton_batch(evaluate, z, newton_steps)

    with np.errstate(over="ignore", invalid="ignore"):
        f, _ = evaluate(z)
        residuals = np.abs(f) / residual_scale(coeffs, z)

    if isinstance(poly, HStarVector):
        escalate = extended if extended is not None else poly.degree > EXTENDED_DEGREE
        if escalate:
            redo = residuals > tol if extended is None else np.ones(n, dtype=bool)
            if redo.any():
                hi, lo, fdd = _newton_dd(poly, z[redo])
                z = z.copy()
                z[redo] = hi + lo
                residuals = residuals.copy()
                residuals[redo] = np.abs(fdd) / residual_scale(coeffs, z[redo])

    finite = bool(np.all(np.isfinite(z)) and np.all(np.isfinite(residuals)))
    converged = finite and bool(np.all(residuals <= tol))
    return RootSet(
        roots=tuple(complex(r) for r in z),
        residuals=tuple(float(r) for r in residuals),
        tolerance=tol,
        converged=converged,
    )


def polish_root(
    h: HStarVector,
    z0,
    tol: float = 1e-12,
    *,
    max_steps: int = NEWTON_STEPS,
    extended: bool | None = None,
) -> complex:
    """Newton-refine a single root of ``sum_j h_j C(z + d - j, d)`` near ``z0``.

    Raises :class:`DerivativeBreakdown` if ``F'`` vanishes,
    :class:`DivergenceError` if the iterate leaves the disc ``|z + 1/2| <= 2d(d - 1/2)``, and
    :class:`ConvergenceError` if the scaled residual never reaches ``tol``.
    """
    d = h.degree
    z = as_complex(z0)
    bound = 2.0 * d * (d - 0.5) if d >= 1 else 0.0
    if d < 1 or abs(z + 0.5) > max(bound, 1.0):
        raise ValueError(f"starting point {z} outside the search disc for degree {d}")
    coeffs = hstar_to_monomial(h).coeffs

    def residual(w, fw):
        return abs(fw) / float(residual_scale(coeffs, np.array([w]))[0])

    f, df = hstar_eval_with_derivative(h, np.array([z]))
    f, df = complex(f[0]), complex(df[0])
    for _ in range(max_steps):
        if f == 0:
            return z
        if df == 0 or not math.isfinite(abs(df)):
            raise DerivativeBreakdown(f"F'(z) vanished at z={z}")
        step = f / df
        z_new = z - step
        if not math.isfinite(abs(z_new)) or abs(z_new + 0.5) > max(bound, 1.0):
            raise DivergenceError(f"Newton iterate {z_new} left the search disc")
        f_new, df_new = hstar_eval_with_derivative(h, np.array([z_new]))
        f_new, df_new = complex(f_new[0]), complex(df_new[0])
        if abs(f_new) > abs(f) and abs(step) <= 1e-6 * max(1.0, abs(z)):
            break  # rounding noise reached
        z, f, df = z_new, f_new, df_new
        if abs(step) <= 2.0 * _EPS * abs(z):
            break

    res = residual(z, f)
    want_dd = extended if extended is not None else (d > EXTENDED_DEGREE and res > tol)
    if want_dd:
        hi, lo, fdd = _newton_dd(h, np.array([z]))
        z = complex(hi[0] + lo[0])
        res = residual(z, complex(fdd[0]))
    if res > tol:
        raise ConvergenceError(f"polishing stalled at z={z} with scaled residual {res:.3e}")
    return z
