#!/usr/bin/env python3
"""Produce the decoder-comparison CSV: plain min-sum vs the collaborative
decoder on the built-in code over a p grid, one CSV both plots and the
frontend renderer consume.

Example:
    python scripts/run_ler_benchmark.py --shots 2000 --out benchmark.csv
"""

import argparse
import sys

from qldpc_cnr import ghp_882_24, load_code
from qldpc_cnr.noise import DecoderSpec, NoiseModel, run_memory_experiment, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--code", default="ghp-882-24")
    parser.add_argument("--p", type=float, nargs="+", default=[0.04, 0.05, 0.06])
    parser.add_argument("--shots", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1717)
    parser.add_argument("--noise", default="bitflip", choices=["bitflip", "depolarizing"])
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", default="benchmark.csv")
    args = parser.parse_args()

    code = load_code(args.code)
    model = NoiseModel(args.noise, args.p[0])
    summaries = []
    for name in ("bp", "qccnr"):
        spec = DecoderSpec(name=name)
        rows = run_memory_experiment(code, spec, model, args.p, args.shots,
                                     args.seed, threads=args.threads)
        summaries.extend(rows)
        for s in rows:
            print(f"{name:6s} p={s.p:.3f} ler={s.ler:.5f} +- {s.stderr:.5f} "
                  f"({s.seconds:.1f}s)")
    write_csv(summaries, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
