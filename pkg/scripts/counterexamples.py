"""Run the three structural counterexamples and print their reports as JSON."""
import argparse
import json

from snormed import Kind, SampleSpec
from snormed.axioms import check_gnorm, falsify_norm_generated, falsify_snorm_generated
from snormed.catalog import resolve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    spec = SampleSpec.cube(1, count=args.samples, seed=args.seed)

    example6 = resolve("snorm.example6.d1")
    ng = [r for r in check_gnorm(example6.as_kind(Kind.GNORM), spec) if not r.passed]
    results = {
        "discrete S-metric is not S-norm generated": falsify_snorm_generated(resolve("smetric.discrete.d1"), spec),
        "example6 S-norm is not norm generated": falsify_norm_generated(example6, spec),
        "example6 S-norm is not a G-norm": ng[0] if ng else None,
    }
    for title, report in results.items():
        print(f"## {title}")
        print(json.dumps(None if report is None else report.to_dict(), indent=2))
    print("## example6 values")
    for args_ in [(1, 5, 0), (6, 0, 0), (1, 0, 0), (1, 1, 0)]:
        print(f"  ||{args_[0]},{args_[1]},{args_[2]}|| = {example6(*args_):g}")


if __name__ == "__main__":
    main()
