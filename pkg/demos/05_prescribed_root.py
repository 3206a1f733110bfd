"""Building an SNN polynomial with a chosen root, rounding it, and screening it."""

from snnroots import HStarVector, construct_snn_with_root, ehrhart_screen, make_Md, round_to_integer_hstar

h = construct_snn_with_root(4 + 3j, 5)
print("nonnegative dependence at 4+3i (d=5):", [round(c, 5) for c in h.coeffs])
rounded, root = round_to_integer_hstar(h, 4 + 3j)
print("rounded to integers:", [int(c) for c in rounded.coeffs], "root", f"{root:.5f}")

for label, vec in (
    ("rounded vector", rounded),
    ("M_3", make_Md(3)),
    ("degree-26 candidate", HStarVector.of([1, 2, 3, 4, 6, 10, 16, 27, 43, 69, 112, 181, 293, 473, 762] + [0] * 12)),
):
    report = ehrhart_screen(vec)
    print(f"\n{label}: {'passes' if report.passed else 'fails'} the necessary conditions")
    for c in report.checks:
        print(f"  [{'ok' if c.passed else 'x '}] {c.name}: {c.detail}")
