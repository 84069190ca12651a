#!/usr/bin/env python3
"""Run the bundled experiment profiles end to end and write their reports.

Usage: python scripts/run_profiles.py [output_dir]

For each bundled profile this runs the moving-target verification, the
fixed-target cross-check where the coefficients are constant, and the full
reduction pipeline, writing one CSV and one JSON report per run plus a
summary table to stdout.
"""
import json
import sys
from pathlib import Path

from ffdio.harness import ProbeRefusal, generate, run_reduction, run_verify, run_wang_check

PROFILES = [
    ("fixed-fermat", {"window": (1, 200)}, ("verify", "wang", "reduce")),
    ("slow-coeff", {}, ("verify", "reduce")),
    ("random-gp", {"m": 1, "q": 4, "seed": 1, "window": (1, 60)}, ("verify", "wang", "reduce")),
    ("random-gp", {"m": 2, "q": 5, "seed": 2, "window": (1, 60)}, ("verify", "wang", "reduce")),
]

RUNNERS = {"verify": run_verify, "wang": run_wang_check, "reduce": run_reduction}


def main() -> int:
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "reports")
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for profile, params, modes in PROFILES:
        cfg = generate(profile, **params)
        tag = profile + ("" if cfg.seed is None else f"-seed{cfg.seed}")
        (out_dir / f"{tag}.config.json").write_text(
            json.dumps(cfg.to_dict(), indent=2) + "\n"
        )
        for mode in modes:
            try:
                report = RUNNERS[mode](cfg)
            except ProbeRefusal as exc:
                rows.append((tag, mode, "REFUSED", str(exc)))
                continue
            (out_dir / f"{tag}.{mode}.csv").write_text(report.to_csv())
            (out_dir / f"{tag}.{mode}.json").write_text(report.to_json())
            rows.append((tag, mode, report.verdict, f"C = {report.fitted_constant}"))
    width = max(len(r[0]) for r in rows) + 2
    for tag, mode, verdict, detail in rows:
        print(f"{tag:<{width}} {mode:<8} {verdict:<8} {detail}")
    print(f"\nreports written to {out_dir}/")
    return 0 if all(r[2] == "PASS" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
