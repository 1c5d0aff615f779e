"""Hand-built and random detailed networks for exercising condensation.

Species here are placeholders: one strand with a single domain named after
the species.  Only the reaction graph matters to condensation.
"""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Iterable, Sequence

from .model import Complex, Domain, Reaction, ReactionNetwork, RestingSet, Strand
from .scc import tarjan


def placeholder(name: str) -> Complex:
    return Complex(name, (Strand(name, (Domain(name, 1),)),), ((None,),))


def classify(complexes: Iterable[Complex], reactions: Sequence[Reaction]):
    """Resting sets and transient complexes of a network (fast = unimolecular)."""
    complexes = sorted(set(complexes))
    out11 = defaultdict(list)
    leaving = defaultdict(list)
    for r in reactions:
        if len(r.reactants) == 1:
            leaving[r.reactants[0]].append(r)
            if len(r.products) == 1:
                out11[r.reactants[0]].append(r.products[0])
    resting, transient = [], []
    for comp in tarjan(complexes, lambda v: out11[v]):
        members = set(comp)
        if any(p not in members for c in comp for r in leaving[c] for p in r.products):
            transient.extend(comp)
        else:
            resting.append(RestingSet(tuple(comp)))
    return resting, transient


def build_network(edges: Sequence[tuple], names: Iterable[str] = ()) -> ReactionNetwork:
    """``edges`` holds ``(reactant names, product names, rate)`` triples."""
    species: dict[str, Complex] = {n: placeholder(n) for n in names}
    reactions = []
    for reactants, products, k in edges:
        for n in (*reactants, *products):
            species.setdefault(n, placeholder(n))
        move = "synthetic-fast" if len(reactants) == 1 else "synthetic-slow"
        reactions.append(Reaction(tuple(species[n] for n in reactants),
                                  tuple(species[n] for n in products), move, float(k)))
    resting, transient = classify(species.values(), reactions)
    return ReactionNetwork(list(species.values()), reactions, resting, transient)


def fig4_network() -> ReactionNetwork:
    """Gate/t23 network with two fast routes from one slow step to the same fate.

    ``gate`` and ``2`` interconvert; binding ``t23`` gives ``6`` (which splits
    into 12 + 13) or ``5``, which relaxes to ``17``; ``17`` splits either into
    12 + 13 or into 21 + 20, and 20 interconverts with 26.
    """
    edges = [
        (("gate",), ("2",), 1.0),
        (("2",), ("gate",), 2.0),
        (("gate", "t23"), ("6",), 1e6),
        (("gate", "t23"), ("5",), 1e6),
        (("2", "t23"), ("5",), 5e5),
        (("6",), ("12", "13"), 10.0),
        (("5",), ("17",), 3.0),
        (("17",), ("12", "13"), 1.0),
        (("17",), ("21", "20"), 4.0),
        (("20",), ("26",), 7.0),
        (("26",), ("20",), 5.0),
    ]
    return build_network(edges)


def random_network(rng: random.Random, max_complexes: int = 12, max_slow: int = 4) -> ReactionNetwork:
    """Random network that satisfies the condensation preconditions.

    SCCs are laid out in a random order; fast reactions leaving an SCC only
    point to later SCCs, so the SCC graph is acyclic.  The last SCC, and any
    others picked at random, are resting.  Slow reactions are bimolecular
    between resting complexes.
    """
    n = rng.randint(2, max_complexes)
    names = [f"x{i}" for i in range(n)]
    rng.shuffle(names)
    groups: list[list[str]] = []
    i = 0
    while i < n:
        size = min(rng.choice((1, 1, 1, 2, 2, 3)), n - i)
        groups.append(names[i:i + size])
        i += size
    resting = [rng.random() < 0.45 for _ in groups]
    resting[-1] = True

    def rate():
        return 10 ** rng.uniform(-2, 3)

    edges = []
    for gi, g in enumerate(groups):
        if len(g) > 1:
            for a, b in zip(g, g[1:] + g[:1]):
                edges.append(((a,), (b,), rate()))
            for _ in range(rng.randint(0, len(g))):
                a, b = rng.sample(g, 2)
                edges.append(((a,), (b,), rate()))
        if resting[gi]:
            continue
        later = [x for h in groups[gi + 1:] for x in h]
        for _ in range(rng.randint(1, 3)):
            k = rng.choice((1, 1, 2, 2, 3))
            edges.append(((rng.choice(g),), tuple(rng.choice(later) for _ in range(k)), rate()))
    resting_names = [x for gi, g in enumerate(groups) if resting[gi] for x in g]
    for _ in range(rng.randint(0, max_slow)):
        a, b = rng.choice(resting_names), rng.choice(resting_names)
        k = rng.choice((1, 2, 2, 3))
        edges.append(((a, b), tuple(rng.choice(names) for _ in range(k)), 10 ** rng.uniform(3, 7)))
    # duplicates (same reactants and products) would collapse; keep the first
    seen, unique = set(), []
    for e in edges:
        key = (tuple(sorted(e[0])), tuple(sorted(e[1])))
        if key not in seen:
            seen.add(key)
            unique.append(e)
    return build_network(unique, names)
