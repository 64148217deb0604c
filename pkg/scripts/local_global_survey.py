"""Compare p_a of random line arrangements with 1 - m + sum of local delta invariants.

    python scripts/local_global_survey.py --count 200 --max-lines 8 --field F101
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from incidence3d.exactalg import make_field
from incidence3d.genus import local_global
from incidence3d.projgeom import line_through, point
from incidence3d.rng import LCG


@dataclass
class SurveyConfig:
    count: int = 50
    max_lines: int = 8
    field: str = "F101"
    hubs: int = 3  # lines are pushed through a few shared points so that multiple points occur
    seed: int = 0


def arrangement(rng: LCG, F, m: int, hubs: int):
    centers = []
    while len(centers) < hubs:
        c = [rng.below(F.q) for _ in range(4)]
        if any(c):
            centers.append(point(F, c))
    lines = set()
    while len(lines) < m:
        a = rng.choice(centers)
        b = point(F, [rng.below(F.q) for _ in range(3)] + [1]) if rng.below(3) else rng.choice(centers)
        if a != b:
            lines.add(line_through(a, b))
    return sorted(lines)


def run(cfg: SurveyConfig):
    F = make_field(cfg.field)
    rng = LCG(cfg.seed)
    mismatches = 0
    for k in range(cfg.count):
        m = 1 + rng.below(cfg.max_lines)
        pa, lg = local_global(arrangement(rng, F, m, cfg.hubs))
        mismatches += pa != lg
        print(f"{k}\tm={m}\tp_a={pa}\tlocal={lg}")
    print(f"mismatches {mismatches}/{cfg.count}")
    return mismatches


def main(argv=None):
    d = SurveyConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--max-lines", type=int, default=d.max_lines)
    ap.add_argument("--field", default=d.field)
    ap.add_argument("--hubs", type=int, default=d.hubs)
    ap.add_argument("--seed", type=int, default=d.seed)
    a = ap.parse_args(argv)
    return 1 if run(SurveyConfig(a.count, a.max_lines, a.field, a.hubs, a.seed)) else 0


if __name__ == "__main__":
    raise SystemExit(main())
