import pytest
from hypothesis import given, settings, strategies as st

from conftest import K, load
from dsdenum import moves
from dsdenum.condense import condense_reactions
from dsdenum.enumerator import EnumConfig, EnumerationError, Enumerator, enumerate_network
from dsdenum.model import strands_conserved
from dsdenum.writers import write_json
from strategies import complex_st


def fast_neighbourhood_complete(net, cfg=EnumConfig()):
    """Every listed complex has all of its unimolecular reactions in the network."""
    keys = {r.key for r in net.reactions}
    names = set(net.complexes)
    for c in net.complexes:
        for r in moves.unimolecular(c, cfg.moves):
            if r.key not in keys or not all(p in names for p in r.products):
                return False
    return True


def check_invariants(net):
    net.check()
    transient = set(net.transients)
    resting = {c for q in net.resting_sets for c in q}
    assert resting.isdisjoint(transient)
    assert resting | transient == set(net.complexes)
    leaving = {}
    for r in net.reactions:
        assert strands_conserved(r)
        assert r.rate_constant is not None and r.rate_constant > 0
        if len(r.reactants) == 2:
            assert not transient.intersection(r.reactants)
        else:
            leaving.setdefault(r.reactants[0], []).append(r)
    for q in net.resting_sets:
        for c in q:
            assert all(p in q for r in leaving.get(c, ()) for p in r.products)
    for c in transient:
        assert leaving.get(c)


def test_fig1_no_polymers():
    net = enumerate_network(load("fig1_two_strand.pil"))
    assert len(net.complexes) == 5
    assert len(net.reactions) == 4
    assert len(net.resting_sets) == 3 and len(net.transients) == 2
    assert max(c.n_strands for c in net.complexes) == 2
    duplex = net.by_name("1")
    assert duplex.kernel() == "a( b( + ) )"
    assert {c.name for c in net.transients} == {"2", "3"}
    check_invariants(net)
    assert fast_neighbourhood_complete(net)


def test_three_arm_junction_turnover():
    net = enumerate_network(load("three_arm_junction.pil"))
    assert not net.truncated
    check_invariants(net)
    I = net.by_name("I")
    slow_with_I = [r for r in net.reactions if len(r.reactants) == 2 and I in r.reactants]
    releases_I = [r for r in net.reactions
                  if r.move_type == "branch3way" and r.arity == (1, 2) and I in r.products]
    assert slow_with_I and releases_I


def test_hcr_truncates_with_complete_neighbourhoods():
    cfg = EnumConfig(max_complexes=50)
    net = enumerate_network(load("hcr.pil"), cfg)
    assert net.truncated
    check_invariants(net)
    assert fast_neighbourhood_complete(net, cfg)


def test_reaction_limit_truncates():
    net = enumerate_network(load("hcr.pil"), EnumConfig(max_reactions=20))
    assert net.truncated
    assert fast_neighbourhood_complete(net)


def test_deterministic():
    a = write_json(enumerate_network(load("three_arm_junction.pil")))
    b = write_json(enumerate_network(list(reversed(load("three_arm_junction.pil")))))
    assert a == b


def test_identical_initial_complexes_rejected():
    with pytest.raises(EnumerationError):
        enumerate_network([K("a b", name="x"), K("a b", name="y")])


def test_transient_initial_complex_reported(caplog):
    net = enumerate_network([K("a x a*", name="h", x=12)])
    assert [c.name for c in net.transients] == ["h"]
    assert "transient" in caplog.text


def test_slow_reactions_refused_for_transient():
    e = Enumerator([K("a x a*", name="h", x=12)])
    e.run()
    with pytest.raises(AssertionError):
        e.get_slow_reactions(next(iter(e.state.T)), [])


def test_generated_names_avoid_user_names():
    net = enumerate_network([K("a b", name="1"), K("b* a*", name="B")])
    names = [c.name for c in net.complexes]
    assert len(names) == len(set(names))


@settings(max_examples=30)
@given(st.lists(complex_st(max_strands=2, max_len=3), min_size=1, max_size=2, unique=True))
def test_random_inputs_satisfy_invariants(initial):
    initial = [c.named(f"c{i}") for i, c in enumerate(initial)]
    net = enumerate_network(initial, EnumConfig(max_complexes=60, max_reactions=400))
    check_invariants(net)
    assert fast_neighbourhood_complete(net)
    # the output is always a valid condensation input
    condense_reactions(net)
