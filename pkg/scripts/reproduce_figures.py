"""Run every figure preset and print a short summary of each table."""
import argparse
import sys
import time
from pathlib import Path

import numpy as np

from hartnet.cli import run_preset
from hartnet.presets import PRESETS


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", type=Path, default=Path("out"))
    p.add_argument("--svg", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("presets", nargs="*", default=sorted(PRESETS))
    args = p.parse_args(argv)

    for name in args.presets:
        t0 = time.perf_counter()
        res = run_preset(name, args.out_dir / name, svg=args.svg, jobs=args.jobs)
        print(f"{name}: {time.perf_counter() - t0:.2f}s -> {args.out_dir / name}")
        for tname, table in res["tables"].items():
            for obs in table.observables:
                col = np.asarray(table.column(obs), float)
                print(f"  {tname}.{obs}: {len(col)} rows, min {np.nanmin(col):.5g}, "
                      f"max {np.nanmax(col):.5g}, last {col[-1]:.5g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
