"""Compare exit probabilities of random transient SCCs with a Gillespie simulation.

    python scripts/mc_absorption.py [--chains 20] [--walkers 200000] [--seed 7]
"""

import argparse

import numpy as np

from dsdenum.condense import absorption_matrix


def random_chain(rng):
    L = int(rng.integers(1, 6))
    K = np.zeros((L, L))
    if L > 1:
        for i in range(L):
            K[i, (i + 1) % L] = 10 ** rng.uniform(-1, 2)
        for _ in range(L):
            i, j = rng.choice(L, 2, replace=False)
            K[i, j] = 10 ** rng.uniform(-1, 2)
    E = np.zeros((L, int(rng.integers(1, 4))))
    for k in range(E.shape[1]):
        E[int(rng.integers(0, L)), k] = 10 ** rng.uniform(-1, 2)
    return K, E


def simulate(K, E, start, walkers, rng):
    """Exit histogram of the jump chain; waiting times do not affect where a walker exits."""
    L = len(K)
    P = np.hstack([K, E])
    cum = np.cumsum(P / P.sum(axis=1, keepdims=True), axis=1)
    state = np.full(walkers, start)
    alive = np.arange(walkers)
    out = np.empty(walkers, int)
    while alive.size:
        u = rng.random(alive.size)
        nxt = np.minimum((u[:, None] > cum[state[alive]]).sum(axis=1), P.shape[1] - 1)
        done = nxt >= L
        out[alive[done]] = nxt[done] - L
        state[alive[~done]] = nxt[~done]
        alive = alive[~done]
    return np.bincount(out, minlength=E.shape[1]) / walkers


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--chains", type=int, default=20)
    ap.add_argument("--walkers", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for i in range(args.chains):
        K, E = random_chain(rng)
        B = absorption_matrix(K, E)
        freq = simulate(K, E, 0, args.walkers, rng)
        se = np.sqrt(np.clip(B[0] * (1 - B[0]), 0, None) / args.walkers)
        diff = np.abs(freq - B[0])
        # exits taken with certainty have no sampling error
        z = float(np.max(np.where(se > 1e-12, diff / np.maximum(se, 1e-12), 0.0)))
        worst = max(worst, z)
        print(f"chain {i:2d}: {len(K)} states, {E.shape[1]} exits, max |z| = {z:5.2f}")
    print(f"worst |z| over {args.chains} chains: {worst:.2f}")


if __name__ == "__main__":
    main()
