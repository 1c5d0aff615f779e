"""Domain-level data model: domains, strands, complexes, reactions, networks.

Pairing is stored per strand as a tuple of bindings.  A binding is either
``None`` (unpaired) or a ``(strand_index, domain_index)`` tuple, both 0-based.
Complexes are always kept in canonical rotation so that equality and hashing
reduce to comparing strand sequences and pairing tables.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

Binding = Optional[tuple[int, int]]
Structure = tuple[tuple[Binding, ...], ...]


class ModelError(ValueError):
    """Raised when an object cannot be built from the given parts."""


@dataclass(frozen=True, order=True)
class Domain:
    name: str
    length: int
    is_complement: bool = False

    def __post_init__(self):
        if self.length < 1:
            raise ModelError(f"domain {self.name!r} must have positive length, got {self.length}")

    @property
    def label(self) -> str:
        return self.name + "*" if self.is_complement else self.name

    def complement(self) -> Domain:
        return replace(self, is_complement=not self.is_complement)

    def pairs_with(self, other: Domain) -> bool:
        return self.name == other.name and self.is_complement != other.is_complement

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Strand:
    name: str
    domains: tuple[Domain, ...]

    def __post_init__(self):
        if not self.domains:
            raise ModelError(f"strand {self.name!r} has no domains")
        object.__setattr__(self, "domains", tuple(self.domains))
        object.__setattr__(self, "_key", (self.name, tuple((d.name, d.is_complement, d.length)
                                                           for d in self.domains)))

    @classmethod
    def from_domains(cls, domains: Sequence[Domain], name: str | None = None) -> Strand:
        """Anonymous strands are named after their domain sequence."""
        if name is None:
            name = " ".join(d.label for d in domains)
        return cls(name, tuple(domains))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(d.label for d in self.domains)

    def __len__(self):
        return len(self.domains)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Violation:
    """First rule a candidate complex breaks, with the offending positions."""

    rule: str
    message: str
    positions: tuple = ()

    def __str__(self):
        return f"{self.rule}: {self.message}"


def rotate_structure(structure: Structure, k: int) -> Structure:
    """Rotate so that strand ``k`` becomes strand 0, remapping every binding."""
    n = len(structure)
    rotated = structure[k:] + structure[:k]
    return tuple(
        tuple(None if b is None else ((b[0] - k) % n, b[1]) for b in row)
        for row in rotated
    )


def pair_list(structure: Structure) -> tuple:
    """Flattened, sorted list of pairs; each pair listed once, lower end first."""
    pairs = []
    for i, row in enumerate(structure):
        for j, b in enumerate(row):
            if b is not None and (i, j) < b:
                pairs.append(((i, j), b))
    return tuple(sorted(pairs))


def _strand_key(s: Strand):
    return s._key


@dataclass(frozen=True, eq=False)
class Complex:
    """A connected, non-pseudoknotted set of strands in canonical rotation.

    Equality and hashing ignore ``name``: two complexes are the same species
    iff their strand sequences and pairing tables match.  Build instances
    through :meth:`build` unless the parts are already canonical.
    """

    name: Optional[str]
    strands: tuple[Strand, ...]
    structure: Structure
    key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(self.strands))
        object.__setattr__(self, "structure", tuple(tuple(r) for r in self.structure))
        key = (tuple(_strand_key(s) for s in self.strands), pair_list(self.structure))
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))

    @classmethod
    def build(cls, strands: Sequence[Strand], structure: Sequence[Sequence[Binding]],
              name: str | None = None, check: bool = True) -> Complex:
        c = cls(name, tuple(strands), tuple(tuple(r) for r in structure))
        if check:
            problem = validate(c)
            if problem is not None:
                raise ModelError(f"invalid complex {name or ''}: {problem}".replace("  ", " "))
        return canonical_form(c)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Complex):
        return self.key < other.key

    def __str__(self):
        return self.name if self.name is not None else self.kernel()

    def __repr__(self):
        return f"Complex({self.name!r}, {self.kernel()!r})"

    def named(self, name: str) -> Complex:
        return replace(self, name=name)

    @property
    def n_strands(self) -> int:
        return len(self.strands)

    def domain(self, pos: tuple[int, int]) -> Domain:
        return self.strands[pos[0]].domains[pos[1]]

    def partner(self, pos: tuple[int, int]) -> Binding:
        return self.structure[pos[0]][pos[1]]

    def kernel(self) -> str:
        """Kernel notation of the stored rotation, e.g. ``a( b + ) b*``."""
        tokens = []
        for i, strand in enumerate(self.strands):
            if i:
                tokens.append("+")
            for j, d in enumerate(strand.domains):
                b = self.structure[i][j]
                if b is None:
                    tokens.append(d.label)
                elif (i, j) < b:
                    tokens.append(d.label + "(")
                else:
                    tokens.append(")")
        return " ".join(tokens)


def canonical_form(c: Complex) -> Complex:
    """Rotation with the smallest strand-name sequence, ties broken by pair list."""
    n = len(c.strands)
    if n == 1:
        return c
    keys = [_strand_key(s) for s in c.strands]
    best = None
    for k in range(n):
        names = tuple(keys[k:] + keys[:k])
        if best is not None and names > best[0]:
            continue
        rotated = rotate_structure(c.structure, k)
        cand = (names, pair_list(rotated), k, rotated)
        if best is None or cand[:2] < best[:2]:
            best = cand
    k, rotated = best[2], best[3]
    if k == 0:
        return c
    return Complex(c.name, c.strands[k:] + c.strands[:k], rotated)


def linear_positions(strands: Sequence[Strand]) -> list[tuple[int, int]]:
    return [(i, j) for i, s in enumerate(strands) for j in range(len(s))]


def components(n_strands: int, structure: Structure) -> list[list[int]]:
    """Connected components of strands linked by pairs, each sorted, in order of first strand."""
    parent = list(range(n_strands))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, row in enumerate(structure):
        for b in row:
            if b is not None:
                ra, rb = find(i), find(b[0])
                if ra != rb:
                    parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i in range(n_strands):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def validate(c: Complex) -> Optional[Violation]:
    """Check a complex, returning the first broken rule or ``None`` if valid.

    Rules are checked in order: shape, symmetry, self-pairing,
    complementarity, connectivity, pseudoknots.  The pseudoknot check walks
    the stored strand order at domain granularity, which is equivalent to the
    nucleotide-level nesting test because domains pair whole.
    """
    strands, structure = c.strands, c.structure
    if not strands:
        return Violation("shape", "complex has no strands")
    if len(structure) != len(strands):
        return Violation("shape", "structure and strand counts differ")
    for i, (s, row) in enumerate(zip(strands, structure)):
        if len(row) != len(s.domains):
            return Violation("shape", f"strand {i} has {len(s.domains)} domains but {len(row)} bindings", (i,))
    for i, row in enumerate(structure):
        for j, b in enumerate(row):
            if b is None:
                continue
            si, dj = b
            if not (0 <= si < len(strands) and 0 <= dj < len(strands[si].domains)):
                return Violation("symmetry", f"binding {(i, j)} -> {b} points outside the complex", ((i, j), b))
            if b == (i, j):
                return Violation("self-pairing", f"domain {(i, j)} is paired to itself", ((i, j),))
            if structure[si][dj] != (i, j):
                return Violation("symmetry", f"{(i, j)} -> {b} but {b} -> {structure[si][dj]}", ((i, j), b))
            if not strands[i].domains[j].pairs_with(strands[si].domains[dj]):
                return Violation("complementarity",
                                 f"{strands[i].domains[j].label} cannot pair {strands[si].domains[dj].label}",
                                 ((i, j), b))
    if len(components(len(strands), structure)) > 1:
        return Violation("disconnected", "strands do not form a single connected complex")
    stack = []
    for pos in linear_positions(strands):
        b = structure[pos[0]][pos[1]]
        if b is None:
            continue
        if pos < b:
            stack.append(pos)
        elif not stack or stack[-1] != b:
            return Violation("pseudoknot", f"pair {b}-{pos} crosses pair {stack[-1] if stack else None}",
                             (b, pos))
        else:
            stack.pop()
    return None


def split(strands: Sequence[Strand], structure: Structure) -> tuple[Complex, ...]:
    """Separate a pairing table into its connected complexes (one or two).

    Strand order inside each part follows the input order, which keeps the
    parts nested when the input is.  Raises ``RuntimeError`` on more than two
    parts, which no single move can produce.
    """
    groups = components(len(strands), structure)
    if len(groups) > 2:
        raise RuntimeError(f"move produced {len(groups)} fragments; at most 2 expected")
    if len(groups) == 1:
        return (canonical_form(Complex(None, tuple(strands), structure)),)
    parts = []
    for g in groups:
        remap = {old: new for new, old in enumerate(g)}
        sub = tuple(
            tuple(None if b is None else (remap[b[0]], b[1]) for b in structure[i])
            for i in g
        )
        parts.append(canonical_form(Complex(None, tuple(strands[i] for i in g), sub)))
    return tuple(sorted(parts))


MOVE_TYPES = ("bind", "open", "branch3way", "branch4way")


@dataclass(frozen=True, eq=False)
class Reaction:
    """Multiset of reactants to multiset of products.

    Reactants and products are stored sorted.  ``info`` carries whatever the
    move found out about the loop or helix involved; rate formulas read it.
    Identity is (reactants, products, move_type); rate and info do not count.
    """

    reactants: tuple
    products: tuple
    move_type: str = "bind"
    rate_constant: Optional[float] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "reactants", tuple(sorted(self.reactants)))
        object.__setattr__(self, "products", tuple(sorted(self.products)))
        if not 0 < len(self.reactants) <= 2:
            raise ModelError(f"reaction needs 1 or 2 reactants, got {len(self.reactants)}")
        if not self.products:
            raise ModelError("reaction needs at least one product")

    @property
    def key(self):
        return (tuple(r.key for r in self.reactants), tuple(p.key for p in self.products), self.move_type)

    def __eq__(self, other):
        if not isinstance(other, Reaction):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: Reaction):
        return self.key < other.key

    @property
    def arity(self) -> tuple[int, int]:
        return (len(self.reactants), len(self.products))

    @property
    def is_fast(self) -> bool:
        return classify_speed(self) == "fast"

    @property
    def units(self) -> str:
        return "/s" if len(self.reactants) == 1 else "/M/s"

    def with_rate(self, k: float) -> Reaction:
        return replace(self, rate_constant=k)

    def __str__(self):
        lhs = " + ".join(str(c) for c in self.reactants)
        rhs = " + ".join(str(c) for c in self.products)
        return f"{lhs} -> {rhs}"


def classify_speed(reaction: Reaction) -> str:
    """Unimolecular reactions are fast, everything else is slow."""
    return "fast" if len(reaction.reactants) == 1 else "slow"


def strands_conserved(reaction: Reaction) -> bool:
    def count(side):
        return Counter(_strand_key(s) for c in side for s in c.strands)

    return count(reaction.reactants) == count(reaction.products)


@dataclass(frozen=True, eq=False)
class RestingSet:
    complexes: tuple[Complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "complexes", tuple(sorted(set(self.complexes))))
        if not self.complexes:
            raise ModelError("resting set cannot be empty")

    @property
    def key(self):
        return tuple(c.key for c in self.complexes)

    @property
    def name(self) -> str:
        return "_".join(sorted(str(c) for c in self.complexes))

    def __contains__(self, c):
        return c in self.complexes

    def __len__(self):
        return len(self.complexes)

    def __iter__(self):
        return iter(self.complexes)

    def __eq__(self, other):
        if not isinstance(other, RestingSet):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other: RestingSet):
        return self.key < other.key

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"RestingSet({[str(c) for c in self.complexes]})"


@dataclass
class ReactionNetwork:
    """Detailed network of complexes produced by enumeration."""

    complexes: list[Complex]
    reactions: list[Reaction]
    resting_sets: list[RestingSet] = field(default_factory=list)
    transients: list[Complex] = field(default_factory=list)
    truncated: bool = False

    def __post_init__(self):
        self.complexes = sorted(self.complexes)
        self.reactions = sorted(self.reactions)
        self.resting_sets = sorted(self.resting_sets)
        self.transients = sorted(self.transients)

    @property
    def resting_complexes(self) -> list[Complex]:
        return sorted(c for q in self.resting_sets for c in q)

    def by_name(self, name: str) -> Complex:
        for c in self.complexes:
            if c.name == name:
                return c
        raise KeyError(name)

    def check(self) -> None:
        """Assert closure and resting/transient classification invariants."""
        species = set(self.complexes)
        for r in self.reactions:
            missing = [c for c in r.reactants + r.products if c not in species]
            if missing:
                raise ModelError(f"reaction {r} uses unknown species {missing}")
        resting = set(self.resting_complexes)
        transient = set(self.transients)
        if resting & transient:
            raise ModelError("complex classified both resting and transient")
        if resting | transient != species:
            raise ModelError("every complex must be classified resting or transient")


def domains_of(complexes: Iterable[Complex]) -> list[Domain]:
    """Positive-sense domains used by the given complexes, sorted by name."""
    seen = {}
    for c in complexes:
        for s in c.strands:
            for d in s.domains:
                base = d if not d.is_complement else d.complement()
                seen[base.name] = base
    return [seen[k] for k in sorted(seen)]


def strands_of(complexes: Iterable[Complex]) -> list[Strand]:
    seen = {}
    for c in complexes:
        for s in c.strands:
            seen[_strand_key(s)] = s
    return [seen[k] for k in sorted(seen)]
