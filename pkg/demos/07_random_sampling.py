"""The random-root experiment: 1000 random degree-7 SNN polynomials, seed 1.

Writes demos/output/roots_d7.csv, its summary JSON, and a scatter plot SVG.
The same run is available as ``snnroots sample-roots --degree 7 --count 1000 --out roots.csv``.
"""

import json
from pathlib import Path

from snnroots.lab import ExperimentConfig, atomic_write_many, roots_svg, sample_roots

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

result = sample_roots(ExperimentConfig(seed=1, degree=7, sample_count=1000))
summary = result.summary()
atomic_write_many(
    {
        str(out / "roots_d7.csv"): result.to_csv(),
        str(out / "roots_d7.summary.json"): json.dumps(summary, indent=2) + "\n",
        str(out / "roots_d7.svg"): roots_svg(result),
    }
)
print(f"{summary['roots']} roots")
for region, c in summary["containment"].items():
    print(f"  {region:<22} {c['inside']:>5} / {c['total']}")
probe = summary["conjecture_status"][0]
print(f"largest |Im| sampled {probe['max_sampled_abs_imag']:.4f} vs b_7 = {probe['b_d']:.4f}: {probe['status']}")
