import pytest
from hypothesis import given, strategies as st

from conftest import K
from dsdenum.model import (Complex, Domain, ModelError, Reaction, ReactionNetwork, RestingSet, Strand,
                           canonical_form, classify_speed, components, pair_list, rotate_structure,
                           split, strands_conserved, validate)
from strategies import complex_st


def test_domain_complement_is_involution():
    d = Domain("a", 5)
    assert d.complement().complement() == d
    assert d.pairs_with(d.complement())
    assert not d.pairs_with(d)
    assert not d.pairs_with(Domain("b", 5, True))
    with pytest.raises(ModelError):
        Domain("a", 0)


def test_strand_needs_domains():
    with pytest.raises(ModelError):
        Strand("s", ())
    assert Strand.from_domains([Domain("a", 1), Domain("b", 1, True)]).name == "a b*"


def test_single_strand_hairpin_is_its_own_canonical_form():
    c = K("a( b )")
    assert canonical_form(c) is c


def test_duplex_rotation_formula():
    # strands stored as (s2, s1) with s1 < s2: rotate by one, indices shift mod 2
    s1 = Strand("s1", (Domain("a", 5),))
    s2 = Strand("s2", (Domain("a", 5, True),))
    c = Complex(None, (s2, s1), (((1, 0),), ((0, 0),)))
    cf = canonical_form(c)
    assert [s.name for s in cf.strands] == ["s1", "s2"]
    assert cf.structure == (((1, 0),), ((0, 0),))


def test_symmetric_trimer_picks_smallest_serialization():
    x = Domain("x", 5)
    t = Strand.from_domains([x, x.complement()])
    # ring of three identical strands, each x pairing the next strand's x*
    structure = (((2, 1), (1, 0)), ((0, 1), (2, 0)), ((1, 1), (0, 0)))
    c = Complex(None, (t, t, t), structure)
    assert validate(c) is None
    rotations = [pair_list(rotate_structure(structure, k)) for k in range(3)]
    assert canonical_form(c).key[1] == min(rotations)


def test_validate_examples():
    assert validate(K("a( b( + ) )")) is None
    a = Domain("a", 5)
    s1, s2 = Strand.from_domains([a]), Strand.from_domains([a.complement()])
    apart = Complex(None, (s1, s2), ((None,), (None,)))
    assert validate(apart).rule == "disconnected"
    # kissing loops: a( x b ) ... with the loop domains pairing across hairpins
    dom = {n: Domain(n, 6) for n in "abxy"}
    strand = Strand.from_domains([dom["a"], dom["x"], dom["a"].complement(),
                                  dom["b"], dom["x"].complement(), dom["b"].complement()])
    structure = (((0, 2), (0, 4), (0, 0), (0, 5), (0, 1), (0, 3)),)
    v = validate(Complex(None, (strand,), structure))
    assert v is not None and v.rule == "pseudoknot"


def test_validate_reports_symmetry_and_complementarity():
    a, b = Domain("a", 5), Domain("b", 5)
    s = Strand.from_domains([a, b])
    assert validate(Complex(None, (s,), (((0, 1), None),))).rule == "symmetry"
    assert validate(Complex(None, (s,), (((0, 1), (0, 0)),))).rule == "complementarity"
    assert validate(Complex(None, (s,), (((0, 0), None),))).rule == "self-pairing"


def test_classify_speed():
    x, y, z = K("a"), K("b"), K("c")
    assert classify_speed(Reaction((x,), (y,))) == "fast"
    assert classify_speed(Reaction((x,), (y, z))) == "fast"
    assert classify_speed(Reaction((x, y), (z,))) == "slow"
    with pytest.raises(ModelError):
        Reaction((x, y, z), (x,))
    with pytest.raises(ModelError):
        Reaction((x,), ())


def test_split_connected_and_duplex():
    c = K("a( b( + ) )")
    assert split(c.strands, c.structure) == (c,)
    parts = split(c.strands, ((None, None), (None, None)))
    assert len(parts) == 2
    assert sorted(p.kernel() for p in parts) == ["a b", "b* a*"]


def test_split_junction_arm_after_exchange():
    # three-arm junction; dropping the pairs of one arm leaves two fragments
    c = K("a( b( + ) c( + ) )")
    assert c.n_strands == 3
    rows = [list(r) for r in c.structure]
    # remove the helix holding the strand that carries only c*
    target = next(i for i, s in enumerate(c.strands) if s.name == "c* a*")
    for j, b in enumerate(rows[target]):
        if b is not None:
            rows[b[0]][b[1]] = None
            rows[target][j] = None
    parts = split(c.strands, tuple(tuple(r) for r in rows))
    assert len(parts) == 2
    assert sorted(s.name for p in parts for s in p.strands) == sorted(s.name for s in c.strands)


def test_split_rejects_three_fragments():
    c = K("a( + b( + ) )")
    empty = tuple(tuple(None for _ in r) for r in c.structure)
    with pytest.raises(RuntimeError):
        split(c.strands, empty)


def test_equality_ignores_names():
    assert K("a( b )", name="x") == K("a( b )", name="y")
    assert hash(K("a b")) == hash(K("a b", name="T"))


def test_resting_set_name_and_network_check():
    x, y = K("a", name="x"), K("b", name="y")
    q = RestingSet((y, x, x))
    assert len(q) == 2 and q.name == "x_y"
    net = ReactionNetwork([x, y], [Reaction((x,), (y,))], [RestingSet((y,))], [x])
    net.check()
    bad = ReactionNetwork([x], [Reaction((x,), (y,))], [], [x])
    with pytest.raises(ModelError):
        bad.check()


@given(complex_st())
def test_canonical_form_idempotent(c):
    assert canonical_form(canonical_form(c)).key == canonical_form(c).key


@given(complex_st(), st.integers(0, 5))
def test_rotation_invariance(c, k):
    k %= c.n_strands
    rotated = Complex(None, c.strands[k:] + c.strands[:k], rotate_structure(c.structure, k))
    assert validate(rotated) is None
    assert canonical_form(rotated) == c


@given(complex_st())
def test_split_preserves_strands_and_pairs(c):
    # drop one random helix-free pair set: the first pair in the list
    pairs = pair_list(c.structure)
    if not pairs:
        return
    (p, q) = pairs[0]
    rows = [list(r) for r in c.structure]
    rows[p[0]][p[1]] = rows[q[0]][q[1]] = None
    structure = tuple(tuple(r) for r in rows)
    if len(components(c.n_strands, structure)) > 2:
        return
    parts = split(c.strands, structure)
    assert sorted(s.name for x in parts for s in x.strands) == sorted(s.name for s in c.strands)
    assert sum(len(pair_list(x.structure)) for x in parts) == len(pairs) - 1
    assert all(validate(x) is None for x in parts)


def test_strands_conserved():
    x, y = K("a b"), K("b* a*")
    d = K("a( b( + ) )")
    assert strands_conserved(Reaction((x, y), (d,)))
    assert not strands_conserved(Reaction((x,), (d,)))


def test_brute_force_equality_agrees_with_canonical_keys():
    # two complexes equal iff some rotation matches exactly
    c = K("a( b( + ) c( + ) )")
    for k in range(3):
        r = Complex(None, c.strands[k:] + c.strands[:k], rotate_structure(c.structure, k))
        same = any(
            (r.strands[m:] + r.strands[:m]) == c.strands
            and rotate_structure(r.structure, m) == c.structure
            for m in range(3))
        assert same and canonical_form(r) == c
