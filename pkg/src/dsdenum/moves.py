"""Move functions: every bind, open, 3-way and 4-way step available to a complex.

All functions work on a flat view of the complex: domains numbered 0..N-1 in
strand order, with a partner table in the same numbering.  A *nick* is the gap
after the last domain of a strand (including the wrap from the last strand
back to the first).  Walking a loop means stepping to the next domain and, when
that domain is paired, jumping across the stem to its partner.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .model import Complex, Reaction, Structure, Strand, canonical_form, split, validate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MoveConfig:
    release_cutoff: int = 8
    remote_toehold: bool = True
    four_way: bool = True

    def __post_init__(self):
        if self.release_cutoff < 1:
            raise ValueError("release_cutoff must be >= 1")


class _Flat:
    """Linear-index view of a complex."""

    def __init__(self, c: Complex):
        self.c = c
        self.pos = [(i, j) for i, s in enumerate(c.strands) for j in range(len(s))]
        self.index = {p: k for k, p in enumerate(self.pos)}
        self.n = len(self.pos)
        self.dom = [c.strands[i].domains[j] for i, j in self.pos]
        self.pt = [None if c.structure[i][j] is None else self.index[c.structure[i][j]]
                   for i, j in self.pos]
        self.last = [j == len(c.strands[i]) - 1 for i, j in self.pos]

    def step(self, k: int, direction: int) -> tuple[int, bool]:
        """Neighbour of ``k`` and whether the move crosses a nick."""
        if direction > 0:
            return (k + 1) % self.n, self.last[k]
        n = (k - 1) % self.n
        return n, self.last[n]

    def same_strand_neighbours(self, a: int, b: int) -> bool:
        lo, hi = min(a, b), max(a, b)
        return hi == lo + 1 and not self.last[lo]

    def loop_from(self, start: int):
        """Walk forward around the loop containing unpaired ``start``.

        Yields ``("unpaired", k)``, ``("stem", k, partner)`` and ``("nick",)``
        events until the walk returns to ``start``.
        """
        k = start
        for _ in range(2 * self.n + 2):
            n, nick = self.step(k, +1)
            if nick:
                yield ("nick",)
            if n == start:
                return
            if self.pt[n] is None:
                yield ("unpaired", n)
                k = n
            else:
                yield ("stem", n, self.pt[n])
                k = self.pt[n]
        raise RuntimeError("loop walk did not close; structure is not nested")

    def structure_with(self, pairs=(), unpair=()) -> Structure:
        pt = list(self.pt)
        for k in unpair:
            pt[k] = None
        for a, b in pairs:
            pt[a], pt[b] = b, a
        rows = [[None] * len(s) for s in self.c.strands]
        for k, (i, j) in enumerate(self.pos):
            if pt[k] is not None:
                rows[i][j] = self.pos[pt[k]]
        return tuple(tuple(r) for r in rows)


def _react(flat: _Flat, structure: Structure, move_type: str, info: dict) -> Reaction | None:
    products = split(flat.c.strands, structure)
    for p in products:
        problem = validate(p)
        if problem is not None:
            log.debug("dropping %s product of %s: %s", move_type, flat.c, problem)
            return None
    return Reaction((flat.c,), products, move_type, info=info)


def _dedupe(reactions) -> list[Reaction]:
    seen = {}
    for r in reactions:
        if r is not None and r.key not in seen:
            seen[r.key] = r
    return sorted(seen.values())


def _side_summary(flat: _Flat, events) -> dict:
    # unpaired lengths are grouped into runs separated by stems
    runs = [0]
    stems = nicks = 0
    for e in events:
        if e[0] == "unpaired":
            runs[-1] += flat.dom[e[1]].length
        elif e[0] == "stem":
            stems += 1
            runs.append(0)
        else:
            nicks += 1
    return {"runs": runs, "stems": stems, "nicks": nicks}


def _bind11_context(flat: _Flat, inner: list, outer: list) -> dict:
    """Classify the loop closed by a new intramolecular pair."""
    sides = [_side_summary(flat, inner), _side_summary(flat, outer)]
    for s in sides:
        if s["stems"] == 1 and not any(s["runs"]) and not s["nicks"]:
            return {"context": "zipping"}
    closed = [s for s in sides if not s["nicks"]] or sides
    side = closed[0]
    if side["stems"] == 0:
        return {"context": "hairpin", "lengths": (sum(side["runs"]),)}
    if side["stems"] == 1:
        return {"context": "bulge", "lengths": tuple(side["runs"])}
    return {"context": "multiloop", "lengths": tuple(r for r in side["runs"] if r),
            "stems": side["stems"] + 1}


def bind11(c: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """Intramolecular binding between unpaired complementary domains of one loop."""
    flat = _Flat(c)
    out = []
    for p in range(flat.n):
        if flat.pt[p] is not None:
            continue
        events = list(flat.loop_from(p))
        for idx, ev in enumerate(events):
            if ev[0] != "unpaired":
                continue
            q = ev[1]
            if q < p or not flat.dom[p].pairs_with(flat.dom[q]):
                continue
            if flat.same_strand_neighbours(p, q):
                continue
            info = _bind11_context(flat, events[:idx], events[idx + 1:])
            info["length"] = flat.dom[p].length
            out.append(_react(flat, flat.structure_with(pairs=[(p, q)]), "bind", info))
    return _dedupe(out)


def _nick_rotation(flat: _Flat, p: int) -> int | None:
    """Strand index that should come first so unpaired ``p`` sits in the exterior loop."""
    k = p
    for _ in range(2 * flat.n + 2):
        n, nick = flat.step(k, +1)
        if nick:
            return flat.pos[n][0]
        if n == p:
            return None
        k = n if flat.pt[n] is None else flat.pt[n]
    raise RuntimeError("loop walk did not close; structure is not nested")


def _rotated(c: Complex, first: int) -> tuple[tuple[Strand, ...], Structure]:
    n = len(c.strands)
    strands = c.strands[first:] + c.strands[:first]
    rows = c.structure[first:] + c.structure[:first]
    structure = tuple(
        tuple(None if b is None else ((b[0] - first) % n, b[1]) for b in row) for row in rows
    )
    return strands, structure


def _join(c1: Complex, r1: int, p: tuple[int, int], c2: Complex, r2: int, q: tuple[int, int]) -> Complex:
    s1, t1 = _rotated(c1, r1)
    s2, t2 = _rotated(c2, r2)
    n1 = len(s1)
    rows = [list(r) for r in t1] + [
        [None if b is None else (b[0] + n1, b[1]) for b in row] for row in t2
    ]
    pi = ((p[0] - r1) % len(c1.strands), p[1])
    qi = ((q[0] - r2) % len(c2.strands) + n1, q[1])
    rows[pi[0]][pi[1]] = qi
    rows[qi[0]][qi[1]] = pi
    return canonical_form(Complex(None, s1 + s2, tuple(tuple(r) for r in rows)))


def bind21(c1: Complex, c2: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """Bimolecular binding between exterior-loop domains of two complexes.

    ``c1`` and ``c2`` may be the same species; the reaction then consumes two
    copies.
    """
    ext2: dict = {}
    for q, r2, dom in _exterior(c2):
        ext2.setdefault(dom.complement(), []).append((q, r2))
    out = []
    for p, r1, dom in _exterior(c1):
        for q, r2 in ext2.get(dom, ()):
            product = _join(c1, r1, p, c2, r2, q)
            problem = validate(product)
            if problem is not None:
                log.debug("dropping bind21 product %s: %s", product.kernel(), problem)
                continue
            out.append(Reaction((c1, c2), (product,), "bind", info={"length": dom.length}))
    return _dedupe(out)


@lru_cache(maxsize=8192)
def _exterior(c: Complex) -> tuple:
    """Unpaired domains that can reach a nick, as (position, rotation, domain)."""
    f = _Flat(c)
    out = []
    for p in range(f.n):
        if f.pt[p] is None:
            r = _nick_rotation(f, p)
            if r is not None:
                out.append((f.pos[p], r, f.dom[p]))
    return tuple(out)


def _helices(flat: _Flat):
    """Maximal helices as lists of (top, bottom) linear pairs, top ascending."""

    def stacked(a, b):
        # pair (a, b) with a < b continues into (a + 1, b - 1)
        return (not flat.last[a] and b - 1 > a + 1 and flat.pt[a + 1] == b - 1
                and not flat.last[b - 1])

    for a in range(flat.n):
        b = flat.pt[a]
        if b is None or b < a:
            continue
        if a > 0 and flat.pt[a - 1] == b + 1 and b + 1 < flat.n and stacked(a - 1, b + 1):
            continue
        helix = [(a, b)]
        while stacked(*helix[-1]):
            x, y = helix[-1]
            helix.append((x + 1, y - 1))
        yield helix


def open_(c: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """Dissociation of every maximal helix shorter than the release cutoff."""
    cfg = cfg or MoveConfig()
    flat = _Flat(c)
    out = []
    for helix in _helices(flat):
        length = sum(flat.dom[a].length for a, _ in helix)
        if length >= cfg.release_cutoff:
            continue
        structure = flat.structure_with(unpair=[k for pair in helix for k in pair])
        out.append(_react(flat, structure, "open", {"length": length}))
    return _dedupe(out)


def three_way(c: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """3-way branch migration, direct or through intervening stems (remote).

    For each unpaired invader next to a paired domain, walk around the loop
    starting across that neighbouring stem.  The walk only passes stems: it
    stops at a nick, an unpaired domain, or the invader itself.  Every paired
    domain met on the way that is complementary to the invader is a template;
    its current partner is displaced.
    """
    cfg = cfg or MoveConfig()
    flat = _Flat(c)
    out = []
    for x in range(flat.n):
        if flat.pt[x] is not None:
            continue
        for direction in (-1, +1):
            y, nick = flat.step(x, direction)
            if nick or flat.pt[y] is None:
                continue
            z, passed = y, 0
            for _ in range(flat.n + 1):
                if passed and flat.dom[z].pairs_with(flat.dom[x]) and not flat.same_strand_neighbours(x, z):
                    intervening = passed - 1
                    if intervening == 0 or cfg.remote_toehold:
                        info = {
                            "length": flat.dom[x].length,
                            "kind": "direct" if intervening == 0 else "remote",
                            "loop_stems": intervening,
                            "loop_size": 5 * intervening,
                        }
                        structure = flat.structure_with(pairs=[(x, z)], unpair=[flat.pt[z]])
                        out.append(_react(flat, structure, "branch3way", info))
                passed += 1
                n, nick = flat.step(flat.pt[z], direction)
                if nick or n == x or flat.pt[n] is None:
                    break
                z = n
    return _dedupe(out)


def four_way(c: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """One step of 4-way branch migration at a four-arm junction.

    For a paired domain P whose 3' neighbour A is paired to B, let C be the
    domain stacked next to P's partner and D its partner.  When A can pair C
    and B can pair D, the pairs are exchanged.
    """
    cfg = cfg or MoveConfig()
    if not cfg.four_way:
        return []
    flat = _Flat(c)
    out = []
    for p in range(flat.n):
        if flat.pt[p] is None or flat.last[p]:
            continue
        a = p + 1
        b = flat.pt[a]
        if b is None:
            continue
        c0 = flat.pt[p]
        if c0 == 0 or flat.last[c0 - 1]:
            continue
        cc = c0 - 1
        d = flat.pt[cc]
        if d is None or b == cc:
            continue
        if not (flat.dom[a].pairs_with(flat.dom[cc]) and flat.dom[b].pairs_with(flat.dom[d])):
            continue
        if flat.same_strand_neighbours(a, cc) or flat.same_strand_neighbours(b, d):
            continue
        structure = flat.structure_with(pairs=[(a, cc), (b, d)])
        out.append(_react(flat, structure, "branch4way", {"length": flat.dom[a].length}))
    return _dedupe(out)


def unimolecular(c: Complex, cfg: MoveConfig | None = None) -> list[Reaction]:
    """All fast moves from ``c``, without rates."""
    cfg = cfg or MoveConfig()
    reactions = bind11(c, cfg) + open_(c, cfg) + three_way(c, cfg) + four_way(c, cfg)
    return _dedupe(reactions)
