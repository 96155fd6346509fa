#!/usr/bin/env python3
"""Find an error pattern whose syndrome stalls the plain decoder, run the
collaborative decoder on it, and dump the trace JSON used for the
unsatisfied-checks-vs-iteration plot (plateau in the main region, falling
tail once sub-decoding starts).

Example:
    python scripts/make_stall_trace.py --p 0.03 --out stall-trace.json
"""

import argparse
import json
import subprocess
import sys

import numpy as np

from qldpc_cnr import ghp_882_24, syndrome
from qldpc_cnr.minsum import DecoderConfig, DecoderGraph, decode_traced_stall


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=float, default=0.03)
    parser.add_argument("--seed", type=int, default=404)
    parser.add_argument("--tol", type=int, default=11)
    parser.add_argument("--out", default="stall-trace.json")
    args = parser.parse_args()

    code = ghp_882_24()
    graph = DecoderGraph(code.h_z)
    cfg = DecoderConfig(max_iterations=100, scaling_factor=0.625,
                        channel_error_prob=args.p)
    rng = np.random.default_rng(args.seed)
    for attempt in range(20_000):
        e = (rng.random(882) < args.p).astype(np.uint8)
        s = syndrome(code.h_z, e)
        out, stalled = decode_traced_stall(graph, s, cfg, tol=args.tol)
        if stalled and not out.converged:
            break
    else:
        print("no stalled instance found", file=sys.stderr)
        return 1

    s_text = "".join(str(int(b)) for b in s)
    print(f"stalled instance after {attempt + 1} samples "
          f"(|error|={int(e.sum())}, |syndrome|={int(s.sum())}); decoding...")
    rc = subprocess.call([sys.executable, "-m", "qldpc_cnr.cli", "decode",
                          "--code", "ghp-882-24", "--syndrome", s_text,
                          "--algorithm", "qccnr", "--seed", str(args.seed),
                          "--p", str(args.p), "--json-out", args.out])
    if rc == 0:
        report = json.load(open(args.out))
        print(f"resolved in {report['sub_rounds_used']} sub rounds; "
              f"trace written to {args.out}")
    return rc


if __name__ == "__main__":
    sys.exit(main())
