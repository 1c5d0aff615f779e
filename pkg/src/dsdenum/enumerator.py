"""Reaction enumeration under separation of timescales.

Complexes move through the work sets

    B (no reactions enumerated) -> F/N (current neighbourhood)
      -> S (resting, slow reactions pending) -> E (resting, done)
      -> T (transient, done)

Fast (unimolecular) reactions are explored to closure around each new complex
before anything is classified; only resting complexes ever take part in
bimolecular reactions.  Work sets pop their smallest complex (by canonical
key) so runs are reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import kinetics, moves
from .kinetics import KineticsConfig
from .model import Complex, Reaction, ReactionNetwork, RestingSet, validate
from .moves import MoveConfig
from .scc import tarjan

log = logging.getLogger(__name__)


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class EnumConfig:
    max_complexes: int = 1000
    max_reactions: int = 5000
    moves: MoveConfig = field(default_factory=MoveConfig)
    kinetics: KineticsConfig = field(default_factory=KineticsConfig)

    def __post_init__(self):
        if self.max_complexes < 1 or self.max_reactions < 1:
            raise ValueError("enumeration limits must be >= 1")


def _pop_min(s: set) -> Complex:
    c = min(s)
    s.remove(c)
    return c


@dataclass
class EnumState:
    B: set = field(default_factory=set)
    F: set = field(default_factory=set)
    N: set = field(default_factory=set)
    S: set = field(default_factory=set)
    E: set = field(default_factory=set)
    T: set = field(default_factory=set)
    R: dict = field(default_factory=dict)
    Q: set = field(default_factory=set)

    @property
    def enumerated(self) -> set:
        return self.E | self.S | self.T


class Enumerator:
    """Stateful driver; use :func:`enumerate_network` for the one-shot API."""

    def __init__(self, initial, cfg: EnumConfig | None = None):
        self.cfg = cfg or EnumConfig()
        self.initial = []
        for c in initial:
            problem = validate(c)
            if problem is not None:
                raise EnumerationError(f"initial complex {c.name}: {problem}")
            self.initial.append(c)
        self.names: dict[Complex, str] = {}
        for c in self.initial:
            if c in self.names and self.names[c] != c.name:
                raise EnumerationError(f"complexes {self.names[c]} and {c.name} are identical")
            self.names[c] = c.name
        taken = {c.name for c in self.initial}
        self._counter = 0
        self._taken = taken
        self.state = EnumState()
        self.truncated = False

    def _next_name(self) -> str:
        while True:
            self._counter += 1
            name = str(self._counter)
            if name not in self._taken:
                return name

    def _name(self, complexes) -> None:
        for c in sorted(complexes):
            if c not in self.names or self.names[c] is None:
                self.names[c] = self._next_name()

    def _rated(self, reactions) -> list[Reaction]:
        return [r.with_rate(kinetics.rate_constant(r, self.cfg.kinetics)) for r in reactions]

    def get_fast_reactions(self, c: Complex) -> tuple[list[Reaction], set]:
        reactions = self._rated(moves.unimolecular(c, self.cfg.moves))
        return reactions, {p for r in reactions for p in r.products}

    def get_slow_reactions(self, c: Complex, partners) -> tuple[list[Reaction], set]:
        if c in self.state.T:
            raise AssertionError(f"slow reactions requested for transient complex {self.names.get(c, c)}")
        reactions = []
        for p in sorted(set(partners) | {c}):
            reactions.extend(moves.bind21(c, p, self.cfg.moves))
        reactions = self._rated(reactions)
        return reactions, {p for r in reactions for p in r.products}

    def enumerate_neighborhood(self, b: Complex):
        """Close ``b`` under fast reactions and classify the new complexes."""
        known = self.state.enumerated
        F = {b}
        N = {b}
        R_N: dict = {}
        while F:
            f = _pop_min(F)
            reactions, products = self.get_fast_reactions(f)
            for r in reactions:
                R_N.setdefault(r.key, r)
            new = products - N - known
            F |= new
            N |= new
        fast = list(R_N.values())
        out11: dict = {c: [] for c in N}
        leaving: dict = {c: [] for c in N}
        for r in fast:
            leaving[r.reactants[0]].append(r)
            if len(r.products) == 1 and r.products[0] in N:
                out11[r.reactants[0]].append(r.products[0])
        resting_sets = []
        for comp in tarjan(sorted(N), lambda v: out11[v]):
            members = set(comp)
            escapes = any(
                p not in members
                for c in comp
                for r in leaving[c]
                for p in r.products
            )
            if not escapes:
                resting_sets.append(members)
        S_new = set().union(*resting_sets) if resting_sets else set()
        T_new = N - S_new
        self._name(S_new)
        self._name(T_new)
        Q_new = {RestingSet(tuple(m)) for m in resting_sets}
        return S_new, T_new, Q_new, fast

    def limits_exceeded(self) -> bool:
        st = self.state
        return (len(st.enumerated) > self.cfg.max_complexes
                or len(st.R) > self.cfg.max_reactions)

    def apply_limits(self) -> bool:
        """Drop work left in B and any reaction that produces it; return the truncation flag."""
        st = self.state
        if not self.limits_exceeded():
            return False
        dropped = set(st.B)
        st.R = {k: r for k, r in st.R.items() if not any(p in dropped for p in r.products)}
        st.B.clear()
        self.truncated = True
        log.info("enumeration truncated: %d complexes, %d reactions; %d pending complexes dropped",
                    len(st.enumerated), len(st.R), len(dropped))
        return True

    def _drain(self) -> bool:
        st = self.state
        while st.B:
            if self.apply_limits():
                return False
            b = _pop_min(st.B)
            S_, T_, Q_, R_ = self.enumerate_neighborhood(b)
            st.S |= S_
            st.T |= T_
            # complexes waiting in B may have been swept into this neighbourhood
            st.B -= S_ | T_
            st.Q |= Q_
            for r in R_:
                st.R.setdefault(r.key, r)
        return True

    def run(self) -> ReactionNetwork:
        st = self.state
        st.B = set(self.initial)
        if self._drain():
            while st.S:
                s = _pop_min(st.S)
                reactions, products = self.get_slow_reactions(s, st.S | st.E)
                st.E.add(s)
                for r in reactions:
                    st.R.setdefault(r.key, r)
                st.B |= products - st.enumerated
                if not self._drain():
                    break
        for c in self.initial:
            if c in st.T:
                log.warning("initial complex %s is transient; it will not take part in slow reactions",
                            self.names[c])
        return self.network()

    def network(self) -> ReactionNetwork:
        st = self.state
        rename = {c: c.named(self.names[c]) for c in st.enumerated}

        def named(cs):
            return tuple(rename[c] for c in cs)

        reactions = [
            Reaction(named(r.reactants), named(r.products), r.move_type, r.rate_constant, r.info)
            for r in st.R.values()
        ]
        resting = [RestingSet(named(q.complexes)) for q in st.Q]
        return ReactionNetwork(
            complexes=list(rename.values()),
            reactions=reactions,
            resting_sets=resting,
            transients=list(named(st.T)),
            truncated=self.truncated,
        )


def enumerate_network(initial, cfg: EnumConfig | None = None) -> ReactionNetwork:
    """Enumerate the detailed network reachable from ``initial`` complexes."""
    return Enumerator(initial, cfg).run()
