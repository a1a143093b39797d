#!/usr/bin/env python3
"""Sweep joint probabilities over turbulence strength and write a plot-ready
CSV: column 1 is the Rytov variance, one column per mode pair.

Default pairs: the retained (00,00) channel and the leaking (00,01) channel.
"""

import argparse

from hgspdc import reference
from hgspdc.channel import TurbulenceSpec, derive_constants
from hgspdc.engine import ModeIndex, ModePair, joint_probability, parse_mode
from hgspdc.serialization import sweep_to_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", default="00:00 00:01",
                        help="pair tokens 'ss:ii', space separated")
    parser.add_argument("--max-rytov", type=float, default=0.1)
    parser.add_argument("--steps", type=int, default=11)
    parser.add_argument("--output", default="turbulence_sweep.csv")
    args = parser.parse_args()

    pairs = []
    for token in args.pairs.split():
        s, i = token.split(":")
        pairs.append(ModePair(parse_mode(s), parse_mode(i)))
    grid = [args.max_rytov * k / (args.steps - 1) for k in range(args.steps)]

    cfg = reference.reference_config()
    anchor = joint_probability(
        ModePair(ModeIndex(0, 0), ModeIndex(0, 0)), derive_constants(cfg))
    scale = reference.CALIBRATION_REFERENCE / anchor

    series = {f"P{p.label()}": [] for p in pairs}
    for s2 in grid:
        turb = TurbulenceSpec.from_rytov(s2).resolve(cfg)
        consts = derive_constants(cfg, turb.gamma)
        for p in pairs:
            series[f"P{p.label()}"].append(scale * joint_probability(p, consts))

    text = sweep_to_csv(grid, series, {
        "wavelength_m": cfg.wavelength, "distance_m": cfg.distance,
        "pump_waist_m": cfg.pump_waist,
    })
    with open(args.output, "w") as fh:
        fh.write(text)
    print(f"wrote {args.output} ({len(grid)} grid points, {len(pairs)} pairs)")
    for name, values in series.items():
        print(f"  {name}: {values[0]:.5f} -> {values[-1]:.5f}")


if __name__ == "__main__":
    main()
