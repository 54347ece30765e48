"""Trace both planar balls around (1,1), (0,0), (-1,-1) and write SVG + CSV."""
import argparse
from pathlib import Path

import numpy as np

from snormed.geometry import ball_value, fig1a, fig1b, trace_boundary_2d
from snormed.structures import make_example6_snorm, make_sum_abs_snorm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="balls")
    ap.add_argument("--resolution", type=int, default=360)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    cases = {"fig1a": (make_sum_abs_snorm(2), fig1a()), "fig1b": (make_example6_snorm(2), fig1b())}
    for name, (s, ball) in cases.items():
        boundary = trace_boundary_2d(s, ball, args.resolution)
        err = np.max(np.abs(ball_value(s, ball, boundary.points) - ball.radius))
        (out / f"{name}.svg").write_text(boundary.to_svg())
        (out / f"{name}.csv").write_text(boundary.to_csv())
        lo, hi = boundary.points.min(axis=0), boundary.points.max(axis=0)
        print(f"{name}: {s.name}, r={ball.radius:g}, max level error {err:.2e}, "
              f"bbox x[{lo[0]:.3f}, {hi[0]:.3f}] y[{lo[1]:.3f}, {hi[1]:.3f}]")
    print(f"wrote {out}/")


if __name__ == "__main__":
    main()
