"""Condensation of a detailed network onto its resting sets.

Every complex belongs to an SCC of the graph of fast (1,1) reactions.  SCCs
with no outgoing fast reaction are resting sets; the others are transient and
are treated as absorbing Markov chains whose exits are their outgoing fast
reactions.  A *fate* is a multiset of resting sets that a complex (or a
multiset of complexes) can relax into by fast reactions alone.  Each slow
reaction then yields one condensed reaction per fate of its products.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .model import Complex, Reaction, ReactionNetwork, RestingSet
from .scc import tarjan


class CondensationError(ValueError):
    """The detailed network breaks one of the structural preconditions."""


class NumericalError(ArithmeticError):
    """A linear system was singular or its solution failed a residual check."""


@dataclass(frozen=True)
class Tolerances:
    residual: float = 1e-9
    normalization: float = 1e-12
    max_condition: float = 1e12


@dataclass(frozen=True, eq=False)
class Fate:
    """Multiset of resting sets, stored sorted."""

    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))
        if not self.members:
            raise ValueError("a fate cannot be empty")

    @property
    def key(self):
        return tuple(m.key for m in self.members)

    def __add__(self, other: Fate) -> Fate:
        return Fate(self.members + other.members)

    def __eq__(self, other):
        if not isinstance(other, Fate):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: Fate):
        return self.key < other.key

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return " + ".join(sorted(m.name for m in self.members))

    def __repr__(self):
        return f"Fate({[m.name for m in self.members]})"


def cartesian_sum(A: Iterable, B: Iterable) -> frozenset:
    """{a + b : a in A, b in B} for sets of fates (or of sorted tuples)."""
    A, B = list(A), list(B)
    if not A or not B:
        raise ValueError("cartesian sum needs two non-empty sets")
    out = set()
    for a in A:
        for b in B:
            s = a + b
            out.add(tuple(sorted(s)) if isinstance(s, tuple) else s)
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class SccInfo:
    members: tuple
    is_resting: bool
    outgoing_fast: tuple
    internal: tuple = ()

    def index(self, c: Complex) -> int:
        return self.members.index(c)


@dataclass(frozen=True, eq=False)
class CondensedReaction:
    reactants: tuple
    products: Fate
    rate_constant: Optional[float] = None
    sources: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "reactants", tuple(sorted(self.reactants)))

    @property
    def key(self):
        return (tuple(r.key for r in self.reactants), self.products.key)

    @property
    def units(self) -> str:
        return "/s" if len(self.reactants) == 1 else "/M/s"

    def __eq__(self, other):
        if not isinstance(other, CondensedReaction):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return " + ".join(sorted(r.name for r in self.reactants)) + " -> " + str(self.products)


@dataclass
class CondensedNetwork:
    resting_sets: list
    reactions: list
    truncated: bool = False

    def __post_init__(self):
        self.resting_sets = sorted(self.resting_sets)
        self.reactions = sorted(self.reactions)

    @property
    def complexes(self) -> list:
        return self.resting_sets


# -- linear algebra ---------------------------------------------------------

def _check_condition(M: np.ndarray, tol: Tolerances, what: str) -> None:
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > tol.max_condition:
        raise NumericalError(f"{what}: matrix is singular or ill-conditioned (cond={cond:.3g})")


def stationary_distribution(rates: np.ndarray, tol: Tolerances = Tolerances()) -> np.ndarray:
    """Stationary distribution of an irreducible CTMC.

    ``rates[i, j]`` is the rate of the transition i -> j.  Solves T s = 0 with
    the last balance equation replaced by sum(s) = 1.
    """
    K = np.asarray(rates, dtype=float)
    L = K.shape[0]
    if K.shape != (L, L) or L == 0:
        raise ValueError("rates must be a non-empty square matrix")
    if L == 1:
        return np.ones(1)
    K = K.copy()
    np.fill_diagonal(K, 0.0)
    if (K < 0).any():
        raise ValueError("rates must be nonnegative")
    scale = K.max()
    if scale <= 0:
        raise NumericalError("stationary distribution: no transitions in a multi-state chain")
    K = K / scale
    T = K.T - np.diag(K.sum(axis=1))
    A = T.copy()
    A[-1, :] = 1.0
    b = np.zeros(L)
    b[-1] = 1.0
    _check_condition(A, tol, "stationary distribution")
    s = np.linalg.solve(A, b)
    if (s < -tol.residual).any():
        raise NumericalError(f"stationary distribution has negative entries: {s}")
    s = np.clip(s, 0.0, None)
    s /= s.sum()
    if np.abs(T @ s).max() > tol.residual:
        raise NumericalError("stationary distribution residual above tolerance")
    return s


def absorption_matrix(internal: np.ndarray, exits: np.ndarray,
                      tol: Tolerances = Tolerances()) -> np.ndarray:
    """Exit probabilities of an absorbing chain.

    ``internal[i, j]`` is the rate i -> j inside the SCC and ``exits[i, k]`` the
    rate of exit reaction k from state i.  Returns B = (I - Q)^-1 R with Q, R
    the branching ratios.
    """
    K = np.asarray(internal, dtype=float).copy()
    E = np.asarray(exits, dtype=float)
    L = K.shape[0]
    if K.shape != (L, L) or E.shape[0] != L or E.ndim != 2:
        raise ValueError("shape mismatch between internal and exit rates")
    np.fill_diagonal(K, 0.0)
    if (K < 0).any() or (E < 0).any():
        raise ValueError("rates must be nonnegative")
    total = K.sum(axis=1) + E.sum(axis=1)
    if (total <= 0).any():
        raise NumericalError("absorption matrix: a state has no outgoing transitions")
    Q = K / total[:, None]
    R = E / total[:, None]
    M = np.eye(L) - Q
    _check_condition(M, tol, "absorption matrix")
    B = np.linalg.solve(M, R)
    if np.abs(M @ B - R).max() > tol.residual:
        raise NumericalError("absorption matrix residual above tolerance")
    B = np.clip(B, 0.0, None)
    sums = B.sum(axis=1)
    if np.abs(sums - 1.0).max() > tol.residual:
        raise NumericalError(f"absorption rows do not sum to one: {sums}")
    return B


def fundamental_matrix(internal: np.ndarray, exits: np.ndarray) -> np.ndarray:
    K = np.asarray(internal, dtype=float).copy()
    np.fill_diagonal(K, 0.0)
    total = K.sum(axis=1) + np.asarray(exits, dtype=float).sum(axis=1)
    Q = K / total[:, None]
    return np.linalg.solve(np.eye(len(K)) - Q, np.eye(len(K)))


# -- structural analysis ----------------------------------------------------

def _convolve(dists: list[dict]) -> dict:
    """Distribution of the sum of independent fate distributions."""
    out = {None: 1.0}
    for d in dists:
        nxt: dict = defaultdict(float)
        for f0, p0 in out.items():
            for f1, p1 in d.items():
                nxt[f1 if f0 is None else f0 + f1] += p0 * p1
        out = nxt
    return dict(out)


class Condensation:
    """Analysis of a detailed network: SCCs, fates and decay probabilities."""

    def __init__(self, network: ReactionNetwork, tol: Tolerances = Tolerances()):
        self.network = network
        self.tol = tol
        self.species = sorted(set(network.complexes))
        species = set(self.species)
        self.fast = [r for r in network.reactions if len(r.reactants) == 1]
        self.slow = [r for r in network.reactions if len(r.reactants) != 1]
        for r in network.reactions:
            for c in r.reactants + r.products:
                if c not in species:
                    raise CondensationError(f"reaction {r} uses unknown species {c}")
        out11 = defaultdict(list)
        leaving = defaultdict(list)
        for r in self.fast:
            leaving[r.reactants[0]].append(r)
            if len(r.products) == 1:
                out11[r.reactants[0]].append(r.products[0])
        self.scc_of: dict[Complex, SccInfo] = {}
        self.order: list[SccInfo] = []
        for comp in tarjan(self.species, lambda v: out11[v]):
            members = tuple(sorted(comp))
            mset = set(members)
            internal, outgoing = [], []
            for c in members:
                for r in leaving[c]:
                    if len(r.products) == 1 and r.products[0] in mset:
                        internal.append(r)
                    else:
                        outgoing.append(r)
            info = SccInfo(members, not outgoing, tuple(sorted(outgoing)), tuple(sorted(internal)))
            self.order.append(info)
            for c in members:
                self.scc_of[c] = info
        self.resting_sets = sorted(RestingSet(s.members) for s in self.order if s.is_resting)
        self._resting_of = {c: RestingSet(s.members) for s in self.order if s.is_resting for c in s.members}
        self._check_restrictions()
        self._fates: dict[SccInfo, frozenset] = {}
        self._compute_fates()
        self._dist: dict[Complex, dict] | None = None

    def _check_restrictions(self) -> None:
        for r in self.network.reactions:
            n, m = len(r.reactants), len(r.products)
            if not (0 < n <= 2 and m > 0):
                raise CondensationError(f"reaction {r} has arity ({n},{m})")
        for r in self.slow:
            for a in r.reactants:
                if not self.scc_of[a].is_resting:
                    raise CondensationError(f"slow reaction {r} has transient reactant {a}")
        # the graph of SCCs linked by outgoing fast reactions must be acyclic
        idx = {id(s): i for i, s in enumerate(self.order)}
        succ = defaultdict(set)
        for s in self.order:
            for r in s.outgoing_fast:
                for p in r.products:
                    t = self.scc_of[p]
                    if t is s:
                        raise CondensationError(f"fast reaction {r} returns to its own SCC")
                    succ[idx[id(s)]].add(idx[id(t)])
        topo = []
        for comp in tarjan(range(len(self.order)), lambda v: sorted(succ[v])):
            if len(comp) > 1:
                names = sorted(str(c) for i in comp for c in self.order[i].members)
                raise CondensationError(f"unimolecular cycle through a non (1,1) reaction among {names}")
            topo.append(self.order[comp[0]])
        # sinks first: every successor SCC precedes its parents
        self.topo = topo

    def _compute_fates(self) -> None:
        for s in self.topo:
            if s.is_resting:
                self._fates[s] = frozenset({Fate((RestingSet(s.members),))})
                continue
            acc = set()
            for r in s.outgoing_fast:
                acc |= self.reaction_fates(r)
            self._fates[s] = frozenset(acc)

    # -- fates --

    def fates(self, x: Complex) -> frozenset:
        return self._fates[self.scc_of[x]]

    def multiset_fates(self, xs: Iterable[Complex]) -> frozenset:
        out = None
        for x in xs:
            out = self.fates(x) if out is None else cartesian_sum(out, self.fates(x))
        if out is None:
            raise ValueError("empty multiset has no fate")
        return out

    def reaction_fates(self, r: Reaction) -> frozenset:
        return self.multiset_fates(r.products)

    def resting_set(self, x: Complex) -> RestingSet:
        try:
            return self._resting_of[x]
        except KeyError:
            raise CondensationError(f"{x} is not a resting complex") from None

    # -- probabilities --

    def _rate(self, r: Reaction) -> float:
        if r.rate_constant is None:
            raise NumericalError(f"reaction {r} has no rate constant")
        return float(r.rate_constant)

    def stationary(self, rs: RestingSet) -> dict[Complex, float]:
        s = self.scc_of[rs.complexes[0]]
        pos = {c: i for i, c in enumerate(s.members)}
        K = np.zeros((len(pos), len(pos)))
        for r in s.internal:
            K[pos[r.reactants[0]], pos[r.products[0]]] += self._rate(r)
        vec = stationary_distribution(K, self.tol)
        return {c: float(vec[i]) for c, i in pos.items()}

    def absorption(self, s: SccInfo) -> np.ndarray:
        pos = {c: i for i, c in enumerate(s.members)}
        K = np.zeros((len(pos), len(pos)))
        E = np.zeros((len(pos), len(s.outgoing_fast)))
        for r in s.internal:
            K[pos[r.reactants[0]], pos[r.products[0]]] += self._rate(r)
        for j, r in enumerate(s.outgoing_fast):
            E[pos[r.reactants[0]], j] = self._rate(r)
        return absorption_matrix(K, E, self.tol)

    def decay_distributions(self) -> dict[Complex, dict]:
        """Map each complex to {fate: probability}."""
        if self._dist is not None:
            return self._dist
        dist: dict[Complex, dict] = {}
        for s in self.topo:
            if s.is_resting:
                f = Fate((RestingSet(s.members),))
                for c in s.members:
                    dist[c] = {f: 1.0}
                continue
            B = self.absorption(s)
            exits = [self._reaction_dist(r, dist) for r in s.outgoing_fast]
            for i, c in enumerate(s.members):
                acc: dict = defaultdict(float)
                for j, d in enumerate(exits):
                    if B[i, j] == 0.0:
                        continue
                    for f, p in d.items():
                        acc[f] += float(B[i, j]) * p
                dist[c] = dict(acc)
        self._dist = dist
        return dist

    @staticmethod
    def _reaction_dist(r: Reaction, dist: Mapping) -> dict:
        return _convolve([dist[p] for p in r.products])

    def decay_probability(self, x: Complex, F: Fate) -> float:
        return self.decay_distributions()[x].get(F, 0.0)

    def reaction_decay_probability(self, r: Reaction, F: Fate) -> float:
        return self._reaction_dist(r, self.decay_distributions()).get(F, 0.0)

    # -- condensed network --

    def condense(self, rates: bool = True) -> CondensedNetwork:
        if rates and any(r.rate_constant is None for r in self.network.reactions):
            rates = False
        acc: dict = {}
        for r in self.slow:
            reactants = tuple(sorted(self.resting_set(a) for a in r.reactants))
            if rates:
                weight = self._rate(r)
                for a in r.reactants:
                    weight *= self.stationary(self.resting_set(a))[a]
                prod = self._reaction_dist(r, self.decay_distributions())
            for F in sorted(self.reaction_fates(r)):
                key = (reactants, F)
                k, src = acc.get(key, (0.0 if rates else None, ()))
                if rates:
                    k += weight * prod.get(F, 0.0)
                acc[key] = (k, src + (r,))
        reactions = [CondensedReaction(rx, F, k, tuple(sorted(set(src))))
                     for (rx, F), (k, src) in acc.items()]
        return CondensedNetwork(list(self.resting_sets), reactions, self.network.truncated)

    def condensed_rate(self, rhat: CondensedReaction) -> float:
        """Rate constant of one condensed reaction, summed over detailed sources."""
        total = 0.0
        want = tuple(sorted(rhat.reactants))
        for r in self.slow:
            if tuple(sorted(self.resting_set(a) for a in r.reactants)) != want:
                continue
            k = self._rate(r)
            for a in r.reactants:
                k *= self.stationary(self.resting_set(a))[a]
            total += k * self.reaction_decay_probability(r, rhat.products)
        return total


def compute_fates(network: ReactionNetwork) -> dict[Complex, frozenset]:
    cond = Condensation(network)
    return {c: cond.fates(c) for c in cond.species}


def condense_reactions(network: ReactionNetwork, rates: bool = True,
                       tol: Tolerances = Tolerances()) -> CondensedNetwork:
    """Condensed network of resting sets; rates are filled in when every detailed reaction has one."""
    return Condensation(network, tol).condense(rates)


def condensed_rate(rhat: CondensedReaction, detailed: ReactionNetwork) -> float:
    return Condensation(detailed).condensed_rate(rhat)
