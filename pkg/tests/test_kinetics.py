import math

import pytest
from hypothesis import given, strategies as st

from conftest import K
from dsdenum.kinetics import (KineticsConfig, k_bind11, k_bind21, k_four_way, k_open, k_three_way,
                              rate_constant, remote_rho)
from dsdenum.moves import bind11, bind21, open_, three_way

# measured hairpin closing rates (/s) against loop length (nt)
HAIRPIN_TABLE = {12: 50000.0, 16: 20000.0, 21: 10000.0, 30: 5000.0}


def test_bind21_constant():
    assert k_bind21() == 1.0e6
    assert k_bind21(KineticsConfig(k_bind_bi=3e6)) == 3e6


def test_bind11_examples():
    assert k_bind11("zipping", 8) == pytest.approx(1.25e7)
    assert k_bind11("hairpin", 12) == pytest.approx(2.54e8 / 17 ** 3)
    assert k_bind11("hairpin", 12) == pytest.approx(5.17e4, rel=1e-3)
    assert k_bind11("multiloop", (6, 6), stems=2) == pytest.approx(2.54e8 / 22 ** 3)
    assert k_bind11("multiloop", (6, 6), stems=2) == pytest.approx(2.386e4, rel=1e-3)
    # bulge: |y| + |w| + 5 is the effective loop
    assert k_bind11("bulge", (3, 4)) == pytest.approx(2.54e8 / (12 + 5) ** 3)


@pytest.mark.parametrize("bad", [("zipping", 0), ("hairpin", 0), ("hairpin", -1), ("nonsense", 3)])
def test_bind11_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        k_bind11(*bad)


def test_open_examples():
    assert k_open(5) == pytest.approx(0.6310, rel=1e-4)
    assert k_open(7) == pytest.approx(2.089e-3, rel=1e-3)
    with pytest.raises(ValueError):
        k_open(0)


def test_three_way_examples():
    assert k_three_way("direct", 20) == pytest.approx(1 / 0.0428)
    assert k_three_way("direct", 1) == pytest.approx(344.8, rel=1e-3)
    with pytest.raises(ValueError):
        k_three_way("direct", 0)


def test_remote_reduces_to_direct_for_empty_loop():
    assert remote_rho(0) == pytest.approx(1.0)
    assert k_three_way("remote", 12, 0) == pytest.approx(k_three_way("direct", 12))
    assert k_three_way("remote", 12, 10) < k_three_way("direct", 12)
    cfg = KineticsConfig(remote_alpha=1.0)
    assert remote_rho(7, cfg) == pytest.approx(1.0 / k_bind11("multiloop", (7,), stems=1))


def test_four_way_examples():
    assert k_four_way(1) == pytest.approx(1 / 78)
    assert k_four_way(10) == pytest.approx(1 / 177)


def test_hairpin_table_within_factor():
    for length, measured in HAIRPIN_TABLE.items():
        ratio = k_bind11("hairpin", length) / measured
        assert 1 / 1.5 <= ratio <= 1.5, (length, ratio)


def test_hairpin_prefactor_refit():
    xs = [(n + 5.0) ** -3 for n in HAIRPIN_TABLE]
    ys = list(HAIRPIN_TABLE.values())
    a = sum(x * y for x, y in zip(xs, ys)) / sum(x * x for x in xs)
    assert 2.2e8 <= a <= 2.7e8


@pytest.mark.parametrize("length", range(1, 8))
def test_detailed_balance_identity(length):
    ratio = k_open(length) * 1.0 / k_bind21()
    assert ratio == pytest.approx(10 ** (-1.24 * length), rel=1e-12)


def test_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        KineticsConfig(bm4_init_a=0)


@given(st.integers(1, 200))
def test_rates_positive_finite_and_monotone(n):
    for k in (k_open(n), k_three_way("direct", n), k_four_way(n), k_bind11("zipping", n),
              k_bind11("hairpin", n), k_three_way("remote", n, n)):
        assert k > 0 and math.isfinite(k)
    assert k_three_way("direct", n + 1) < k_three_way("direct", n)
    assert k_four_way(n + 1) < k_four_way(n)
    assert k_open(n + 1) < k_open(n)


def test_rate_constant_dispatch_on_moves():
    t, b = K("t a", t=6), K("a* t*", t=6)
    for r in bind21(t, b):
        assert rate_constant(r) == 1e6
    for r in bind11(K("a x a*", x=12)):
        assert rate_constant(r) == pytest.approx(k_bind11("hairpin", 12))
    for r in open_(K("a( + )", a=5)):
        assert rate_constant(r) == pytest.approx(k_open(5))
    for r in three_way(K("t( a + a( + ) )", t=6)):
        assert rate_constant(r) == pytest.approx(k_three_way("direct", 10))
