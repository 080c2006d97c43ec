#!/usr/bin/env python3
"""Regenerate the qubit and Gaussian phase-diagram datasets at desk scale.

Writes random EPE scatter data plus every closed-form boundary curve as
CSV into --outdir; each file gets a manifest sidecar.  Plot with any
external tool, e.g. the scatter columns are energy,entanglement,purity.
"""

import argparse
import pathlib
import sys

from epe import cli


def run(argv):
    code = cli.main(argv)
    if code != 0:
        sys.exit(code)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out/phase_diagrams")
    ap.add_argument("--seed", type=int, default=20240901)
    ap.add_argument("--qubit-count", type=int, default=100_000)
    ap.add_argument("--gaussian-count", type=int, default=10_000)
    args = ap.parse_args()

    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for measure in ("concurrence", "negativity", "eof"):
        run([
            "sample", "--system", "qubit", "--count", str(args.qubit_count),
            "--seed", str(args.seed), "--measure", measure,
            "--out", str(out / f"qubit_scatter_{measure}.csv"),
        ])
    run([
        "sample", "--system", "gaussian", "--count", str(args.gaussian_count),
        "--seed", str(args.seed + 1), "--out", str(out / "gaussian_scatter_logneg.csv"),
    ])

    qubit_curves = [("separable", "0:2:0.01"), ("pure", "0:2:0.01"), ("mems", "0:1:0.005")]
    for curve, grid in qubit_curves:
        run(["boundary", "--system", "qubit", "--curve", curve, "--grid", grid,
             "--out", str(out / f"qubit_curve_{curve}.csv")])

    gaussian_curves = [("band", "0:2:0.01", None), ("tmsv", "0:2:0.01", None),
                       ("gmems", "0.12:1:0.005", 2.0), ("glems", "0.2:1:0.005", 2.0)]
    for curve, grid, energy in gaussian_curves:
        argv = ["boundary", "--system", "gaussian", "--curve", curve, "--grid", grid,
                "--out", str(out / f"gaussian_curve_{curve}.csv")]
        if energy is not None:
            argv += ["--energy", str(energy)]
        run(argv)

    print(f"phase-diagram datasets written to {out}")


if __name__ == "__main__":
    main()
