import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from spreadlab.families import diamond_necklace, figure6_graph, FIGURE6_WITNESS
from spreadlab.graph import complete_graph, path_graph, to_mask, from_mask
from spreadlab.spreading import (
    INF,
    SpreadParams,
    closure,
    closure_mask,
    eligible,
    extend_mask,
    is_spreading_set,
    k_forcing_closure,
    r_percolation_closure,
    zero_forcing_closure,
)

from conftest import random_order_closure, small_graphs, spread_params


def test_params_validation():
    with pytest.raises(ValueError):
        SpreadParams(0)
    with pytest.raises(ValueError):
        SpreadParams(1, 0)
    with pytest.raises(ValueError):
        SpreadParams(True)
    assert SpreadParams(2).q_infinite
    assert SpreadParams(2, math.inf) == SpreadParams(2, INF)


def test_params_parse_and_str():
    assert SpreadParams.parse("2", "inf") == SpreadParams(2)
    assert SpreadParams.parse(3, "2") == SpreadParams(3, 2)
    assert str(SpreadParams(2)) == "(2,inf)"
    assert str(SpreadParams(1, 3)) == "(1,3)"


def test_effective_collapses_large_q():
    assert SpreadParams(2, 3).effective(3) == SpreadParams(2)
    assert SpreadParams(2, 2).effective(3) == SpreadParams(2, 2)


def test_zero_forcing_on_a_path():
    final, trace = zero_forcing_closure(path_graph(5), [0])
    assert final == frozenset(range(5))
    assert [s.vertex for s in trace.steps] == [1, 2, 3, 4]


def test_eligibility_needs_a_light_witness():
    K = complete_graph(4)
    ok, witness = eligible(K, {0}, SpreadParams(1, 1), 1)
    assert not ok and witness is None
    ok, witness = eligible(K, {0}, SpreadParams(1, 3), 1)
    assert ok and witness == 0
    with pytest.raises(ValueError):
        eligible(K, {0}, SpreadParams(1), 0)


def test_percolation_and_forcing_wrappers():
    K = complete_graph(4)
    assert r_percolation_closure(K, [0, 1], 2)[0] == frozenset(range(4))
    assert k_forcing_closure(K, [0], 3)[0] == frozenset(range(4))
    assert zero_forcing_closure(K, [0, 1])[0] == frozenset({0, 1})


def test_figure5_set_percolates():
    lg = diamond_necklace(4)
    S = lg.vertices("c_1", "d_1", "d_2", "d_3", "d_4")
    assert is_spreading_set(lg.graph, S, SpreadParams(2))


def test_figure6_witness_separates():
    lg = figure6_graph()
    S = lg.vertices(*FIGURE6_WITNESS)
    assert is_spreading_set(lg.graph, S, SpreadParams(2, 3))
    assert not is_spreading_set(lg.graph, S, SpreadParams(2, 2))


def test_out_of_range_vertex():
    with pytest.raises(ValueError):
        closure(path_graph(3), [4], SpreadParams(1))


@settings(max_examples=300, deadline=None)
@given(small_graphs(), spread_params, st.data())
def test_closure_is_extensive_and_idempotent(G, params, data):
    S = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    final, trace = closure(G, S, params)
    assert S <= final
    assert closure(G, final, params)[0] == final
    assert trace.replay(G, params) == final


@settings(max_examples=300, deadline=None)
@given(small_graphs(), spread_params, st.data())
def test_closure_is_monotone_in_the_set(G, params, data):
    S = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    T = S | data.draw(st.frozensets(st.integers(0, G.n - 1)))
    assert closure(G, S, params)[0] <= closure(G, T, params)[0]


@settings(max_examples=300, deadline=None)
@given(small_graphs(), spread_params, st.data())
def test_synchronous_and_random_orders_agree(G, params, data):
    S = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    final = closure(G, S, params)[0]
    sync, trace = closure(G, S, params, synchronous=True)
    assert sync == final
    assert trace.replay(G, params) == final
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    for _ in range(10):
        assert random_order_closure(G, S, params, rng) == final


@settings(max_examples=300, deadline=None)
@given(small_graphs(), spread_params, st.integers(0, 2), st.integers(0, 2), st.data())
def test_parameter_monotonicity(G, params, dp, dq, data):
    """Lowering p or raising q never shrinks the closure."""
    S = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    weaker = SpreadParams(max(1, params.p - dp), params.q + dq)
    assert closure(G, S, params)[0] <= closure(G, S, weaker)[0]


@settings(max_examples=300, deadline=None)
@given(small_graphs(), spread_params, st.data())
def test_bitmask_engine_agrees(G, params, data):
    S = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    final = closure(G, S, params)[0]
    assert from_mask(closure_mask(G, to_mask(S), params)) == final
    extra = data.draw(st.frozensets(st.integers(0, G.n - 1)))
    base = closure_mask(G, to_mask(S), params)
    both = closure(G, S | extra, params)[0]
    assert from_mask(extend_mask(G, base, to_mask(extra), params)) == both
