"""Certify every perfect order-3 format with 2 <= p1 <= p2 <= P and write one
certificate per format, plus a summary of which witness succeeded.

Usage:
    python scripts/certify_grid.py [--max-dim 4] [--out-dir certificates]
"""

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from perfect_formats.certify import certify_perfect
from perfect_formats.formats import is_perfect


@dataclass
class GridConfig:
    max_dim: int = 4
    out_dir: Path = Path("certificates")


def run(cfg: GridConfig) -> list[dict]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for p1 in range(2, cfg.max_dim + 1):
        for p2 in range(p1, cfg.max_dim + 1):
            for p3 in range(p2, p1 * p2 + 1):
                if not is_perfect((p1, p2, p3)).verdict:
                    continue
                t0 = time.perf_counter()
                cert = certify_perfect((p1, p2, p3))
                doc = cert.to_json()
                name = "x".join(map(str, cert.format))
                (cfg.out_dir / f"{name}.json").write_text(json.dumps(doc, indent=1))
                rows.append({
                    "format": name,
                    "verdict": cert.verdict,
                    "strategy": cert.strategy,
                    "paper_rank": cert.paper_rank,
                    "cols": cert.cols,
                    "seconds": round(time.perf_counter() - t0, 3),
                })
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-dim", type=int, default=GridConfig.max_dim)
    ap.add_argument("--out-dir", type=Path, default=GridConfig.out_dir)
    a = ap.parse_args()
    summary = run(GridConfig(a.max_dim, a.out_dir))
    for row in summary:
        print(f"{row['format']:>8}  {row['verdict']:<18} {row['strategy']:<8} "
              f"paper witness rank {row['paper_rank']}/{row['cols']}  {row['seconds']}s")
