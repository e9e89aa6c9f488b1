#!/usr/bin/env python3
"""One-variable norm asymptote for the built-in densities.

For each density the script reports the quadrature Szego constant, both
normalization variants, and the norm/prediction ratio over q, writing one
CSV per density into results/.
"""

import csv
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from fpsz.laws import arcsine_density, semicircle_density, uniform_density
from fpsz.orthopoly1d import szego_asymptote_1d

DENSITIES = [arcsine_density(), uniform_density(), semicircle_density()]


def main() -> int:
    outdir = pathlib.Path(__file__).resolve().parents[1] / "results"
    outdir.mkdir(exist_ok=True)
    for density in DENSITIES:
        report = szego_asymptote_1d(density, range(1, 21))
        path = outdir / f"szego_{density.name}.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["q", "norm", "predicted", "ratio"])
            for row in report.rows:
                writer.writerow([row.q, repr(row.norm), repr(row.predicted),
                                 repr(row.ratio)])
        last = report.rows[-1]
        print(f"{density.name:<22} constant={report.szego_constant:.9f} "
              f"alt_constant={report.alt_constant:.9f} "
              f"ratio(q={last.q})={last.ratio:.6f}")
    print(f"reports written to {outdir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
