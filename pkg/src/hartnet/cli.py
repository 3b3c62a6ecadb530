"""Command line entry point.

    hartnet --preset fig4 [--out-dir out] [--svg on] [--method analytic|fd] [--jobs K]
    hartnet --config run.ini
    hartnet --preset fig4 --dump-config > fig4.ini

Exit codes: 0 success, 2 configuration error, 3 numeric error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import asdict, replace
from pathlib import Path
from typing import Optional

from . import __version__
from .config import RunSpec, parse_config, serialize_config
from .core import ConfigError, DomainError, NumericError
from .output import describe_output, emit_csv, emit_manifest, render_svg
from .presets import PRESETS, preset_spec
from .sweep import sweep

log = logging.getLogger("hartnet")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def run_spec(spec: RunSpec, out_dir=None, svg: Optional[bool] = None,
             method: Optional[str] = None, jobs: Optional[int] = None) -> dict:
    """Evaluate every table of ``spec`` and write CSV (+SVG) and manifest.json.

    Keyword arguments override the ``[output]`` section.  Returns a mapping
    with the written paths, the tables and the manifest path.
    """
    out = spec.output
    out = replace(out, dir=str(out_dir) if out_dir is not None else out.dir,
                  svg=out.svg if svg is None else svg,
                  method=method or out.method, jobs=jobs or out.jobs)
    spec = replace(spec, output=out)
    directory = Path(out.dir)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory {directory}: {exc.strerror}") from exc

    t_start = time.perf_counter()
    timings, outputs, tables, paths = {}, [], {}, []
    provenance = {"preset": spec.preset,
                  "network": [asdict(b.barrier) if b.barrier else None for b in spec.network.branches]}
    for ts in spec.tables:
        t0 = time.perf_counter()
        table = sweep(spec.network, [(a.path, a.values()) for a in ts.axes], ts.observables,
                      spec.E, method=out.method, policy=spec.scan, jobs=out.jobs,
                      metadata=provenance)
        timings[ts.name] = round(time.perf_counter() - t0, 6)
        tables[ts.name] = table
        csv_path = emit_csv(table, directory / f"{ts.name}.csv")
        outputs.append(describe_output(csv_path, table))
        paths.append(csv_path)
        if out.svg:
            svg_path = render_svg(table, table.axes[-1], list(table.observables),
                                  directory / f"{ts.name}.svg", title=ts.name)
            outputs.append(describe_output(svg_path))
            paths.append(svg_path)
        log.info("%s: %d rows in %.2fs", ts.name, len(table), timings[ts.name])
    timings["total"] = round(time.perf_counter() - t_start, 6)
    manifest = emit_manifest(spec, outputs, timings, directory / "manifest.json")
    return {"paths": paths, "tables": tables, "manifest": manifest, "spec": spec}


def run_preset(name: str, out_dir=None, **overrides) -> dict:
    return run_spec(preset_spec(name), out_dir=out_dir, **overrides)


def _onoff(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return text == "on"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hartnet",
                                description="Phase times on star networks of quantum wires.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS), help="figure-reproduction preset")
    src.add_argument("--config", type=Path, help="run configuration file")
    p.add_argument("--out-dir", type=Path, default=None, help="output directory (default ./out)")
    p.add_argument("--svg", type=_onoff, default=None, metavar="on|off", help="also write SVG plots")
    p.add_argument("--method", choices=("analytic", "fd"), default=None,
                   help="phase-time derivative (default analytic)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    p.add_argument("--dump-config", action="store_true",
                   help="print the resolved configuration and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"hartnet {__version__}")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.preset:
            spec = preset_spec(args.preset)
        else:
            try:
                text = args.config.read_text(encoding="utf-8")
            except OSError as exc:
                print(f"hartnet: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
                return EXIT_IO
            spec = parse_config(text)
        if args.jobs is not None and args.jobs < 1:
            raise ConfigError("must be >= 1", where="--jobs")
        if args.dump_config:
            sys.stdout.write(serialize_config(spec))
            return EXIT_OK
        result = run_spec(spec, out_dir=args.out_dir, svg=args.svg, method=args.method, jobs=args.jobs)
    except (ConfigError, DomainError) as exc:
        print(f"hartnet: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"hartnet: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"hartnet: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in result["paths"]:
        print(path)
    print(result["manifest"])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
