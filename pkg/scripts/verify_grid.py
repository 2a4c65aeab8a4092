"""Run every verification suite on the reference parameter grid and summarise.

    python3 scripts/verify_grid.py [--jobs 4] [--out-dir reports]
"""

import argparse
import json
import pathlib

from mophyp.cli import build_report, parse_params
from mophyp.suites import SUITE_NAMES

GRID = ("1,2,3,4", "1/2,3/2,2,5/2", "4/3,5/3,2,5/2", "1,1,2,5/2")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", default=None)
    args = ap.parse_args()
    out = pathlib.Path(args.out_dir) if args.out_dir else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for quad in GRID:
        report = build_report(parse_params(quad), SUITE_NAMES, jobs=args.jobs)
        checks = sum(len(s["checks"]) for s in report["suites"])
        print(f"{quad:<16} {report['status'].upper():<5} {checks:4d} checks  {report['timing_s']:.1f} s")
        for s in report["suites"]:
            for c in s["checks"]:
                if c["status"] == "fail":
                    failures += 1
                    print(f"    {s['name']}: {c['name']}: {c['witness']}")
        if out:
            name = quad.replace("/", "_").replace(",", "-") + ".json"
            (out / name).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
