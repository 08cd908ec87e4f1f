#!/usr/bin/env python3
"""Sweep a parameter grid and report closed form vs solver vs construction.

Unlike `kneser-lab table`, this driver also records search effort (nodes,
milliseconds) per instance, which is what you want when profiling solver
behavior as n grows.
"""

import argparse
import csv
import sys
import time

from kneser_lab import (
    EXACT,
    GroundParams,
    SolveBudget,
    build_tight_partition,
    min_partition_number,
    tight_bound,
    verify_partition_certificate,
)


def parse_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", default="2..3", help="range like 2..4")
    ap.add_argument("--k", default="1..3")
    ap.add_argument("--n", default="auto", help="range like 4..9, or 'auto'")
    ap.add_argument("--span", type=int, default=3,
                    help="rows per (r,k) when --n auto")
    ap.add_argument("--timeout", type=float, default=None,
                    help="per-instance seconds")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-o", "--out", default=None, help="write CSV here")
    args = ap.parse_args(argv)

    budget = SolveBudget(max_seconds=args.timeout, workers=args.workers)
    fields = ["n", "k", "r", "tight_bound", "status", "value", "nodes",
              "millis", "verified", "agree"]
    rows = []
    for r in parse_range(args.r):
        for k in parse_range(args.k):
            if args.n == "auto":
                start = -(-r * k // (r - 1))
                ns = range(start, start + args.span)
            else:
                ns = parse_range(args.n)
            for n in ns:
                if n < k or r * k > (r - 1) * n:
                    continue
                p = GroundParams(n, k, r)
                mb = tight_bound(p)
                cert = build_tight_partition(p)
                ok = verify_partition_certificate(cert).ok
                t0 = time.monotonic()
                res = min_partition_number(p, budget)
                wall = (time.monotonic() - t0) * 1000
                exact = res.status == EXACT
                rows.append({
                    "n": n, "k": k, "r": r, "tight_bound": mb,
                    "status": res.status,
                    "value": res.upper if exact else f"{res.lower}:{res.upper}",
                    "nodes": res.nodes, "millis": round(wall, 1),
                    "verified": ok,
                    "agree": exact and res.upper == mb == cert.num_families and ok,
                })
                print("  ".join(f"{f}={rows[-1][f]}" for f in fields))

    bad = [row for row in rows if not row["agree"]]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            w.writerows(rows)
        print(f"wrote {args.out} ({len(rows)} rows)")
    print(f"{len(rows)} instances, {len(bad)} disagreements")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
