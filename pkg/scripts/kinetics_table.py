"""Rate-law tables: hairpin closing against measurements, plus the other move types."""

import numpy as np

from dsdenum.kinetics import k_bind11, k_bind21, k_four_way, k_open, k_three_way

# hairpin loop length (nt) -> measured closing rate (/s)
MEASURED = {12: 50000.0, 16: 20000.0, 21: 10000.0, 30: 5000.0}


def main():
    print("hairpin closing")
    print(f"{'loop':>6} {'model /s':>12} {'measured':>10} {'ratio':>7}")
    for n, k in MEASURED.items():
        m = k_bind11("hairpin", n)
        print(f"{n:>6} {m:>12.4g} {k:>10.4g} {m / k:>7.3f}")
    x = np.array([(n + 5.0) ** -3 for n in MEASURED])
    y = np.array(list(MEASURED.values()))
    print(f"least-squares prefactor through the origin: {x @ y / (x @ x):.4e}")

    print("\nhelix length vs opening, 3-way and 4-way branch migration (/s)")
    print(f"{'len':>4} {'open':>11} {'open/bind (M)':>14} {'3-way':>9} {'4-way':>10}")
    for n in (1, 2, 4, 6, 7, 8, 10, 15, 20):
        print(f"{n:>4} {k_open(n):>11.4g} {k_open(n) / k_bind21():>14.4g} "
              f"{k_three_way('direct', n):>9.4g} {k_four_way(n):>10.4g}")

    print("\nremote-toehold 3-way slowdown (12 nt migration)")
    for size in (0, 5, 10, 20, 40):
        print(f"  loop {size:>3} nt: {k_three_way('remote', 12, size):9.4g} /s")


if __name__ == "__main__":
    main()
