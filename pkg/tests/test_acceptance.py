"""Acceptance criteria 1-10, each at its stated tolerance, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are collected
in the "acceptance criteria" section of the terminal summary.
"""

import json
import math
import time
from functools import lru_cache

import numpy as np

from snnroots import lab
from snnroots.extremal import (
    construct_snn_with_root,
    ehrhart_screen,
    growth_table,
    make_Md,
    make_Sd,
    round_to_integer_hstar,
    solve_bd,
)
from snnroots.hstar import HStarVector, MonomialPolynomial, hstar_to_monomial, is_snn, monomial_to_hstar
from snnroots.lattice import hstar_of, interior_count, random_simplex
from snnroots.regions import (
    SNN_DEGREE2,
    angle_A,
    angle_sum_array,
    braun_disc,
    common_halfplane,
    cone_union,
    cos2_A_formula,
    max_angle,
    trace_boundary,
    vertical_strip,
)
from snnroots.roots import find_roots


@lru_cache(maxsize=None)
def sample(degree: int):
    return lab.sample_roots(lab.ExperimentConfig(seed=1, degree=degree, sample_count=1000))


@lru_cache(maxsize=None)
def lattice_corpus():
    rng = np.random.default_rng(2024)
    return tuple(random_simplex(rng, int(rng.integers(1, 4))) for _ in range(50))


def test_criterion_01_golden_roots(acceptance):
    t0 = time.perf_counter()
    z10 = find_roots(HStarVector.of(lab.ESCAPE_D5_H)).nearest(lab.ESCAPE_D5_ROOT)
    t10 = time.perf_counter() - t0
    t0 = time.perf_counter()
    z11 = find_roots(HStarVector.of(lab.ESCAPE_D26_H)).nearest(lab.ESCAPE_D26_ROOT)
    t11 = time.perf_counter() - t0
    e10, e11 = abs(z10 - lab.ESCAPE_D5_ROOT), abs(z11 - lab.ESCAPE_D26_ROOT)
    ok = e10 <= 1e-4 and e11 <= 1e-5 and t10 < 1 and t11 < 1
    acceptance(
        1,
        "golden roots",
        ok,
        f"d=5 root {z10:.6f} err {e10:.1e} in {t10:.3f}s; d=26 root {z11:.8f} err {e11:.1e} in {t11:.3f}s",
    )


def test_criterion_02_critical_line(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    for d in range(2, 21):
        for h in (make_Md(d), make_Sd(d)):
            worst = max(worst, max(abs(z.real + 0.5) for z in find_roots(h).roots))
    elapsed = time.perf_counter() - t0
    acceptance(2, "critical line", worst <= 1e-8 and elapsed < 30, f"max |Re z + 1/2| = {worst:.1e} over M_d, S_d, d=2..20 in {elapsed:.2f}s")


def test_criterion_03_growth(acceptance):
    rows = {r.d: r for r in growth_table(2, 25)}
    gap = max(abs(rows[d].b_d - rows[d].md_max_imag) for d in range(2, 21))
    bd_ratio = [rows[d].b_d / rows[d].asym_md for d in range(15, 26)]
    sd_ratio = [rows[d].sd_max_norm / rows[d].asym_sd for d in range(15, 26)]
    ok = gap <= 1e-6 and all(0.95 <= r <= 1.0 for r in bd_ratio) and all(0.9 <= r <= 1.1 for r in sd_ratio)
    acceptance(
        3,
        "growth consistency",
        ok,
        f"max |b_d - max Im M_d| = {gap:.1e}; b_d/(d^2/pi) in [{min(bd_ratio):.4f}, {max(bd_ratio):.4f}]; "
        f"S_d ratio in [{min(sd_ratio):.4f}, {max(sd_ratio):.4f}] for d=15..25",
    )


def test_criterion_04_region_containment(acceptance):
    parts, ok = [], True
    res7 = sample(7)
    c7 = res7.containment()
    n7 = len(res7.all_roots())
    good7 = n7 == 7000 and c7["braun_disc(7)"]["inside"] == 7000 and c7["cone_union(7)"]["inside"] == 0
    ok &= good7
    parts.append(f"d=7: {n7} roots, {c7['braun_disc(7)']['inside']} in the root disc, {c7['cone_union(7)']['inside']} in cones")
    for d in (2, 3, 4):
        res = sample(d)
        c = res.containment()
        total = len(res.all_roots())
        strip = c[f"vertical_strip({d})"]["inside"]
        ok &= strip == total
        text = f"d={d}: {strip}/{total} in strip"
        if d == 2:
            inside = c[str(SNN_DEGREE2)]["inside"]
            ok &= inside == total
            text += f", {inside}/{total} in degree-2 SNN region"
        parts.append(text)
    acceptance(4, "region containment on samples", ok, "; ".join(parts))


def test_criterion_05_degree2_boundary(acceptance):
    curve = trace_boundary(2, 64)
    dev = max(abs(p.imag**2 - (-p.real**2 - p.real + 0.5)) for p in curve.points)
    ok = len(curve.points) == 64 and dev <= 1e-6
    acceptance(5, "degree-2 boundary circle", ok, f"{len(curve.points)} samples, max |y^2 + x^2 + x - 1/2| = {dev:.1e}")


def _degree5_grid_max(x_lo, x_hi, step):
    best = -np.inf
    ys = np.arange(step, 22.5 + step / 2, step)
    for x in np.arange(x_lo, x_hi + step / 2, step):
        z = x + 1j * ys
        z = z[np.abs(z + 0.5) <= 22.5]
        if len(z):
            best = max(best, float(np.nanmax(angle_sum_array(z, 5))))
    return best


def test_criterion_06_angle_machinery(acceptance):
    table = [max_angle(3, j) for j in range(3)]
    sharp = all(lo <= v <= hi for v, lo, hi in zip(table, (0.44, 0.64, 1.57), (0.45, 0.65, 1.58)))
    # the 3.17 bound concerns points outside the vertical strip -5 <= x <= 4;
    # inside the strip near the real axis the sum approaches 5*pi
    step = 0.01
    outside = max(_degree5_grid_max(4.0, 22.0, step), _degree5_grid_max(-23.0, -5.0, step))
    whole = _degree5_grid_max(-23.0, 22.0, 0.05)
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(500):
        d = int(rng.integers(1, 11))
        j = int(rng.integers(0, d))
        k = float(rng.uniform(0, 2 * d * d)) or 1e-3
        direct = math.cos(angle_A((d - 1) + k * 1j, j, d)) ** 2
        worst = max(worst, abs(direct - cos2_A_formula(k, j, d)))
    ok = sharp and outside <= 3.17 and worst <= 1e-10
    acceptance(
        6,
        "angle machinery",
        ok,
        f"d=3 maxima {[round(v, 4) for v in table]}; degree-5 grid max outside the strip {outside:.4f} "
        f"(whole disc {whole:.3f}); cos^2 formula max error {worst:.1e} on 500 inputs",
    )


def _strip_exterior_points(n, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        x = np.concatenate([rng.uniform(4.0, 4.01, 4000), rng.uniform(-5.01, -5.0, 4000)])
        z = x + 1j * rng.uniform(2.5, 3.2, 8000)
        z = z[(z.real > 4) | (z.real < -5)]
        out.extend(z[angle_sum_array(z, 5) > math.pi].tolist())
    return out[:n]


def test_criterion_07_constructor(acceptance):
    rng = np.random.default_rng(7)
    made, worst, bad = 0, 0.0, 0
    degree5_outside = []
    while made < 1000:
        d = int(rng.integers(5, 11))
        R = d * (d - 0.5)
        z = complex(-0.5 + R * rng.uniform(-1, 1), R * rng.uniform(0.001, 1))
        if abs(z + 0.5) > R or common_halfplane(z, d):
            continue
        h = construct_snn_with_root(z, d)
        err = abs(find_roots(h).nearest(z) - z)
        worst = max(worst, err)
        bad += not (is_snn(h) and err <= 1e-6)
        if d == 5 and (z.real > 4 or z.real < -5):
            degree5_outside.append((z, h))
        made += 1
    degree5_outside += [(z, construct_snn_with_root(z, 5)) for z in _strip_exterior_points(100, 17)]
    raw_fail = structural_fail = rounded_checked = rounded_fail = 0
    for z, h in degree5_outside:
        raw_fail += bool(ehrhart_screen(h).failed())
        c = np.array(h.coeffs)
        scaled = HStarVector(5, tuple(c / c[0])) if c[0] > 0 else h
        structural_fail += bool(set(ehrhart_screen(scaled).failed()) - {"nonnegative_integers"})
        rounded, root = round_to_integer_hstar(h, z)
        if root.real > 4 or root.real < -5:
            rounded_checked += 1
            rounded_fail += bool(ehrhart_screen(rounded).failed())
    n5 = len(degree5_outside)
    ok = bad == 0 and raw_fail == n5 and structural_fail == n5 and rounded_fail == rounded_checked
    acceptance(
        7,
        "constructor soundness",
        ok,
        f"1000 constructions, {bad} failures, worst root distance {worst:.1e}; degree-5 outside strip: "
        f"{raw_fail}/{n5} fail the screen, {structural_fail}/{n5} fail a structural check at h_0 = 1, "
        f"{rounded_fail}/{rounded_checked} integer roundings still outside the strip fail",
    )


def test_criterion_08_roundtrip(acceptance):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(10_000):
        d = int(rng.integers(0, 31))
        h = HStarVector(d, tuple(rng.uniform(-1e3, 1e3, d + 1).tolist()))
        back = monomial_to_hstar(hstar_to_monomial(h), d)
        scale = max(abs(c) for c in h.coeffs)
        worst = max(worst, max(abs(a - b) for a, b in zip(h.coeffs, back.coeffs)) / scale)
    example = monomial_to_hstar(MonomialPolynomial((1.0, 2.0, 1.0)), 2).coeffs
    ok = worst <= 1e-10 and example == (1.0, 1.0, 0.0)
    acceptance(8, "basis roundtrip", ok, f"max relative error {worst:.1e} over 10^4 conversions; (t+1)^2 -> {list(example)}")


def test_criterion_09_lattice_witness(acceptance):
    problems = []
    roots_checked = 0
    for s in lattice_corpus():
        h = hstar_of(s)
        d = s.dim
        if not all(c >= 0 and c == int(c) for c in h.coeffs):
            problems.append(f"non-integer h* {h.coeffs}")
        if h.coeffs[d] != interior_count(s):
            problems.append(f"h_d {h.coeffs[d]} != interior count for {s.vertices}")
        for z in find_roots(hstar_to_monomial(h)).roots:
            roots_checked += 1
            regions = [braun_disc(d), vertical_strip(d)] + ([SNN_DEGREE2] if d == 2 else [])
            if not all(lab.contains_root(r, z) for r in regions) or lab.contains_root(cone_union(d), z):
                problems.append(f"root {z} of {list(h.coeffs)} outside the regions")
    dims = np.bincount([s.dim for s in lattice_corpus()], minlength=4)[1:]
    acceptance(
        9,
        "lattice witness",
        not problems,
        f"50 simplices (dims 1/2/3: {'/'.join(map(str, dims))}), {roots_checked} Ehrhart roots checked, "
        f"{len(problems)} problems" + (f": {problems[:3]}" if problems else ""),
    )


def test_criterion_10_conjecture_probes(acceptance):
    imag = [lab.probe_imaginary_part(sample(d)) for d in (2, 3, 4, 7)]
    strip = lab.probe_vertical_strip(
        [(json.dumps(s.to_dict()), hstar_of(s)) for s in lattice_corpus() if hstar_of(s).degree >= 1]
    )
    report = {
        "imaginary_part": [
            {k: p[k] for k in ("d", "b_d", "max_sampled_abs_imag", "status")} | {"findings": len(p["findings"])}
            for p in imag
        ],
        "vertical_strip": {k: strip[k] for k in ("roots_checked", "status")} | {"findings": strip["findings"]},
    }
    # probes never fail the build; the structured status is the deliverable
    ran = all(p["status"] in ("consistent", "counterexample") for p in imag + [strip])
    acceptance(10, "conjecture probes (reported, non-failing)", ran, json.dumps(report))
    assert solve_bd(7) > 0
