"""Enumerate and condense every input in data/ and print a short summary.

    python scripts/run_examples.py [--max-complexes N]
"""

import argparse
import time
from pathlib import Path

from dsdenum.condense import condense_reactions
from dsdenum.enumerator import EnumConfig, enumerate_network
from dsdenum.kernel import parse_input
from dsdenum.writers import write_crn

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-complexes", type=int, default=200)
    args = ap.parse_args()
    cfg = EnumConfig(max_complexes=args.max_complexes)
    for path in sorted(DATA.glob("*.pil")):
        spec = parse_input(path.read_text())
        t0 = time.perf_counter()
        net = enumerate_network(list(spec.complexes.values()), cfg)
        t1 = time.perf_counter()
        cnet = condense_reactions(net)
        t2 = time.perf_counter()
        print(f"== {path.name}")
        print(f"   {len(net.complexes)} complexes ({len(net.transients)} transient), "
              f"{len(net.reactions)} reactions, {len(net.resting_sets)} resting sets, "
              f"truncated={net.truncated}")
        print(f"   enumerate {t1 - t0:.3f} s, condense {t2 - t1:.3f} s")
        crn = write_crn(cnet, rates=True).splitlines()
        for line in crn[:12]:
            print("   " + line)
        if len(crn) > 12:
            print(f"   ... {len(crn) - 12} more condensed reactions")


if __name__ == "__main__":
    main()
