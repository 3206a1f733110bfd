"""Seeded experiments, file emitters, and the golden-value suite.

Random h*-vectors come from xorshift64* (seeded through splitmix64), so a
seed gives the same vectors in any language that implements the recurrences:

    splitmix64:  z += 0x9E3779B97F4A7C15
                 z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
                 z = (z ^ (z >> 27)) * 0x94D049BB133111EB
                 out = z ^ (z >> 31)
    xorshift64*: x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27
                 out = x * 0x2545F4914F6CDD1D          (all mod 2**64)

An integer uniform on ``{0, ..., m}`` is ``r % (m + 1)`` for the first draw
``r`` below ``2**64 - (2**64 % (m + 1))``. Each vector draws ``h_0`` first; an
all-zero vector is discarded and redrawn.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .extremal import (
    construct_snn_with_root,
    make_Md,
    make_Sd,
    round_to_integer_hstar,
    solve_bd,
)
from .hstar import HStarVector
from .regions import (
    SNN_DEGREE2,
    Region,
    braun_disc,
    cone_union,
    max_angle,
    region_contains,
    snn_angle_locus,
    trace_boundary,
    vertical_strip,
)
from .roots import ConvergenceError, find_roots

MASK64 = (1 << 64) - 1
REGION_TOL = 1e-7  # relative slack for numerically computed roots on region boundaries

ESCAPE_D5_H = (1, 0, 0, 0, 0, 33)
ESCAPE_D5_ROOT = complex(4.00019, 3.00963)
ESCAPE_D26_H = (1, 2, 3, 4, 6, 10, 16, 27, 43, 69, 112, 181, 293, 473, 762) + (0,) * 12
ESCAPE_D26_ROOT = complex(26.47331467, -28.51231239)


def splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = splitmix64(seed) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def randint(self, m: int) -> int:
        """Uniform integer in ``{0, ..., m}``."""
        bound = m + 1
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 1
    degree: int = 7
    sample_count: int = 1000
    coeff_max: int = 9
    tol: float = 1e-10
    output_path: str | None = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.coeff_max < 1:
            raise ValueError("coeff_max must be >= 1")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.format not in ("csv", "json", "svg"):
            raise ValueError(f"unknown format {self.format!r}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def random_hstar_vectors(seed: int, degree: int, count: int, coeff_max: int = 9) -> list[HStarVector]:
    rng = XorShift64Star(seed)
    out = []
    while len(out) < count:
        h = [rng.randint(coeff_max) for _ in range(degree + 1)]
        if any(h):
            out.append(HStarVector(degree, tuple(float(x) for x in h)))
    return out


class SampleNonConvergence(ConvergenceError):
    def __init__(self, h: HStarVector, roots):
        super().__init__(f"root finding did not converge for h* = {list(h.coeffs)}")
        self.h = h
        self.roots = roots


def _roots_of(args):
    h, tol = args
    return find_roots(h, tol)


def sample_regions(d: int) -> list[Region]:
    regions = [braun_disc(d), cone_union(d), snn_angle_locus(d), vertical_strip(d)]
    if d == 2:
        regions.append(SNN_DEGREE2)
    return regions


def contains_root(region: Region, z: complex) -> bool:
    """Region test with the slack used for computed roots."""
    return region_contains(region, z, REGION_TOL * max(1.0, abs(z)))


@dataclass
class SampleResult:
    config: ExperimentConfig
    vectors: list[HStarVector]
    roots: list[tuple[complex, ...]]
    residuals: list[tuple[float, ...]]

    def rows(self):
        for pid, (rs, res) in enumerate(zip(self.roots, self.residuals)):
            for z, r in zip(rs, res):
                yield pid, z, r

    def all_roots(self) -> np.ndarray:
        return np.array([z for rs in self.roots for z in rs], dtype=complex)

    def containment(self) -> dict:
        zs = self.all_roots()
        out = {}
        for region in sample_regions(self.config.degree):
            inside = int(sum(contains_root(region, complex(z)) for z in zs))
            out[str(region)] = {"inside": inside, "total": len(zs), "fraction": inside / len(zs) if len(zs) else 0.0}
        return out

    def summary(self) -> dict:
        return {
            "config": asdict(self.config),
            "rng": "xorshift64* seeded by splitmix64",
            "polynomials": len(self.vectors),
            "roots": int(sum(len(r) for r in self.roots)),
            "containment": self.containment(),
            "conjecture_status": [probe_imaginary_part(self)],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["poly_id", "re", "im", "residual"])
        for pid, z, r in self.rows():
            w.writerow([pid, repr(z.real), repr(z.imag), repr(r)])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            [
                {"h": h.to_dict(), "roots": [[z.real, z.imag] for z in rs], "residuals": list(res)}
                for h, rs, res in zip(self.vectors, self.roots, self.residuals)
            ]
        )


def sample_roots(cfg: ExperimentConfig) -> SampleResult:
    """Roots of ``cfg.sample_count`` random SNN polynomials, in draw order."""
    vectors = random_hstar_vectors(cfg.seed, cfg.degree, cfg.sample_count, cfg.coeff_max)
    jobs = [(h, cfg.tol) for h in vectors]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_roots_of, jobs, chunksize=64))
    else:
        results = [_roots_of(j) for j in jobs]
    for h, rs in zip(vectors, results):
        if not rs.converged:
            raise SampleNonConvergence(h, rs)
    return SampleResult(cfg, vectors, [r.roots for r in results], [r.residuals for r in results])


# ---------------------------------------------------------------------------
# conjecture probes: reported, never raised


def probe_imaginary_part(result: SampleResult) -> dict:
    """Largest sampled ``|Im z|`` against ``b_d``, the top root of ``M_d``."""
    d = result.config.degree
    b = solve_bd(d)
    zs = result.all_roots()
    worst = float(np.max(np.abs(zs.imag))) if len(zs) else 0.0
    violations = []
    for pid, z, _ in result.rows():
        if abs(z.imag) > b + 1e-9:
            violations.append({"poly_id": pid, "h": list(result.vectors[pid].coeffs), "root": [z.real, z.imag]})
    return {
        "conjecture": "M_d root has maximal |Im| among degree-d SNN roots",
        "d": d,
        "b_d": b,
        "max_sampled_abs_imag": worst,
        "status": "counterexample" if violations else "consistent",
        "findings": violations,
    }


def probe_vertical_strip(polys) -> dict:
    """Roots of genuine Ehrhart polynomials against ``-d <= Re z <= d - 1``.

    ``polys`` is an iterable of ``(label, HStarVector)``.
    """
    findings, checked = [], 0
    for label, h in polys:
        for z in find_roots(h).roots:
            checked += 1
            if not contains_root(vertical_strip(h.degree), z):
                findings.append({"label": label, "h": list(h.coeffs), "root": [z.real, z.imag]})
    return {
        "conjecture": "Ehrhart roots lie in the vertical strip -d <= Re z <= d-1",
        "roots_checked": checked,
        "status": "counterexample" if findings else "consistent",
        "findings": findings,
    }


# ---------------------------------------------------------------------------
# golden values


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def verify_examples() -> list[CheckResult]:
    out = []

    r10 = find_roots(HStarVector.of(ESCAPE_D5_H)).nearest(ESCAPE_D5_ROOT)
    err = abs(r10 - ESCAPE_D5_ROOT)
    out.append(CheckResult("escape_d5_root", err <= 1e-4, f"root {r10:.6f}, error {err:.2e}"))

    r11 = find_roots(HStarVector.of(ESCAPE_D26_H)).nearest(ESCAPE_D26_ROOT)
    err = abs(r11 - ESCAPE_D26_ROOT)
    out.append(CheckResult("escape_d26_root", err <= 1e-5, f"root {r11:.8f}, error {err:.2e}"))

    h = construct_snn_with_root(4 + 3j, 5)
    rounded, root = round_to_integer_hstar(h, 4 + 3j)
    ok = rounded.coeffs == tuple(float(x) for x in ESCAPE_D5_H) and abs(root - ESCAPE_D5_ROOT) <= 1e-4
    out.append(CheckResult("escape_d5_construction", ok, f"rounded {list(rounded.coeffs)}, root {root:.6f}"))

    for name, h, im in (("M2_roots", make_Md(2), math.sqrt(3) / 2), ("S2_roots", make_Sd(2), math.sqrt(15) / 6)):
        rs = sorted(find_roots(h).roots, key=lambda z: z.imag)
        want = [complex(-0.5, -im), complex(-0.5, im)]
        err = max(abs(a - b) for a, b in zip(rs, want))
        out.append(CheckResult(name, err <= 1e-12, f"error {err:.2e}"))

    table = (0.45, 0.65, 1.58)
    got = [max_angle(3, j) for j in range(3)]
    ok = all(g <= t for g, t in zip(got, table)) and sum(got) < math.pi
    out.append(CheckResult("degree3_angle_table", ok, f"maxima {[round(g, 4) for g in got]} vs {list(table)}"))

    curve = trace_boundary(2, 64)
    dev = max(abs(p.imag**2 + p.real**2 + p.real - 0.5) for p in curve.points)
    out.append(CheckResult("degree2_boundary_circle", dev <= 1e-6 and len(curve.points) == 64, f"max deviation {dev:.2e}"))
    return out


# ---------------------------------------------------------------------------
# emitters


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_many(files: dict[str, str]) -> None:
    """All-or-nothing: every file is staged before any is renamed into place."""
    staged = []
    try:
        for path, text in files.items():
            directory = os.path.dirname(os.path.abspath(path))
            fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            staged.append((tmp, path))
    except BaseException:
        for tmp, _ in staged:
            os.unlink(tmp)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


class _Svg:
    def __init__(self, xmin, xmax, ymin, ymax, width=640):
        self.xmin, self.ymax = xmin, ymax
        self.scale = width / (xmax - xmin)
        self.width = width
        self.height = int(round((ymax - ymin) * self.scale))
        self.items = []

    def _p(self, z):
        return (z.real - self.xmin) * self.scale, (self.ymax - z.imag) * self.scale

    def polyline(self, pts, stroke="black", width=1.0, dash=None):
        coords = " ".join("%.3f,%.3f" % self._p(z) for z in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width}"{extra}/>')

    def circle(self, center, r, stroke="black", fill="none", width=1.0):
        x, y = self._p(center)
        self.items.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r * self.scale:.3f}" stroke="{stroke}" fill="{fill}" stroke-width="{width}"/>'
        )

    def dot(self, z, r=1.2, fill="black"):
        x, y = self._p(z)
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r}" fill="{fill}"/>')

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def _region_overlay(svg: _Svg, d: int) -> None:
    radius = d * (d - 0.5)
    svg.circle(complex(-0.5, 0), radius, stroke="#888", width=1.0)
    half = math.pi / d
    for vertex, direction in ((d - 1, 1), (-d, -1)):
        for sgn in (1, -1):
            tip = vertex + direction * 2 * radius * complex(math.cos(half), sgn * math.sin(half))
            svg.polyline([complex(vertex, 0), tip], stroke="#c33", width=1.0)
    for x in (-d, d - 1):
        svg.polyline([complex(x, -radius), complex(x, radius)], stroke="#36c", width=0.8, dash="4,3")
    svg.polyline([complex(-radius - 1, 0), complex(radius, 0)], stroke="#ccc", width=0.5)


def boundary_svg(curve) -> str:
    d = curve.degree
    pts = list(curve.points)
    closed = pts + [p.conjugate() for p in reversed(pts)] + pts[:1]
    ext = max([abs(p + 0.5) for p in pts] + [d])
    svg = _Svg(-0.5 - 1.15 * ext, -0.5 + 1.15 * ext, -1.15 * ext, 1.15 * ext)
    _region_overlay(svg, d)
    svg.polyline(closed, stroke="black", width=1.5)
    return svg.render()


def roots_svg(result: SampleResult) -> str:
    d = result.config.degree
    zs = result.all_roots()
    ext = max(float(np.max(np.abs(zs + 0.5))) if len(zs) else 1.0, d)
    svg = _Svg(-0.5 - 1.15 * ext, -0.5 + 1.15 * ext, -1.15 * ext, 1.15 * ext)
    _region_overlay(svg, d)
    for z in zs:
        svg.dot(z)
    return svg.render()


def growth_rows_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows])
