"""Enumeration time of the polymerizing HCR input as the complex limit grows."""

import argparse
import time
from pathlib import Path

from dsdenum.enumerator import EnumConfig, enumerate_network
from dsdenum.kernel import parse_input

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("limits", nargs="*", type=int, default=[25, 50, 100, 200, 400])
    args = ap.parse_args()
    initial = list(parse_input((DATA / "hcr.pil").read_text()).complexes.values())
    print(f"{'limit':>6} {'complexes':>10} {'reactions':>10} {'longest':>8} {'seconds':>8}")
    for n in args.limits:
        t0 = time.perf_counter()
        net = enumerate_network(initial, EnumConfig(max_complexes=n))
        dt = time.perf_counter() - t0
        longest = max(c.n_strands for c in net.complexes)
        print(f"{n:>6} {len(net.complexes):>10} {len(net.reactions):>10} {longest:>8} {dt:>8.2f}")


if __name__ == "__main__":
    main()
