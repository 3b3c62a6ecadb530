"""Locate the minimum of the saturated delay tau_s1 against V2.

Network: V1=5, w2=1, lb1=lb2=3, E=1.  Repeats the search for a few w2 and
lb values to show how the minimum moves.
"""
import argparse
import sys

import numpy as np

from hartnet import BarrierSpec, NetworkSpec, hartman_scan


def tau_s1(V2, w2=1.0, lb=3.0):
    net = NetworkSpec.from_barriers([BarrierSpec(5, 1, lb), BarrierSpec(V2, w2, lb)])
    return hartman_scan(net, 1.0, 0).tau_s


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--step", type=float, default=0.05)
    args = p.parse_args(argv)
    grid = np.round(np.arange(1.05, 15 + args.step / 2, args.step), 12)
    for w2, lb in ((1.0, 3.0), (0.5, 3.0), (2.0, 3.0), (1.0, 2.5), (1.0, 3.5)):
        vals = np.array([tau_s1(v, w2, lb) for v in grid])
        i = int(np.argmin(vals))
        print(f"w2={w2} lb={lb}: min tau_s1={vals[i]:.5f} at V2={grid[i]:.2f}; "
              f"spread {vals.max() - vals.min():.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
