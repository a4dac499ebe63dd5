import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_fleet, server
from lbsim import (
    SchedulerKind,
    SchedulerState,
    TaskClass,
    WeightParams,
    awlc_load,
    awlc_prefers,
    awlc_select,
    lc_select,
    on_assign,
    on_complete,
    rr_select,
    wlc_prefers,
    wlc_select,
    wrr_select,
)
from lbsim.errors import AssignToDeadServer, CompleteWithoutAssign, NoServerAvailable
from oracles import ratio_argmin

P = WeightParams()


def rr_state(cursor=-1):
    return SchedulerState(SchedulerKind.RR, rr_cursor=cursor)


def wrr_state():
    return SchedulerState(SchedulerKind.WRR)


# --- round robin -------------------------------------------------------------


def test_rr_rotates_after_cursor(fleet3):
    state = rr_state(cursor=0)
    assert [rr_select(fleet3, state) for _ in range(3)] == [1, 2, 0]


def test_rr_skips_dead_server(fleet3):
    fleet3[1].alive = False
    fleet3[1].dynamic_weight = 0.0
    assert rr_select(fleet3, rr_state(cursor=0)) == 2


def test_rr_all_dead_raises(fleet3):
    for s in fleet3:
        s.alive = False
        s.dynamic_weight = 0.0
    with pytest.raises(NoServerAvailable):
        rr_select(fleet3, rr_state())


def test_fresh_rr_starts_at_zero(fleet3):
    assert rr_select(fleet3, rr_state()) == 0


# --- weighted round robin ----------------------------------------------------


def test_wrr_five_to_one_proportion():
    fleet = [server(0, static_weight=5.0), server(1, static_weight=1.0)]
    state = wrr_state()
    picks = [wrr_select(fleet, state) for _ in range(6)]
    assert Counter(picks) == {0: 5, 1: 1}


def test_wrr_equal_weights_degenerates_to_rr():
    fleet = make_fleet(3)
    state = wrr_state()
    assert [wrr_select(fleet, state) for _ in range(6)] == [0, 1, 2, 0, 1, 2]


def test_wrr_two_one_one_interleaving():
    # hand-run of the current-weight rotation: thresholds 2,1,1,1 -> 0,0,1,2
    fleet = [server(0, static_weight=2.0), server(1, static_weight=1.0), server(2, static_weight=1.0)]
    state = wrr_state()
    picks = [wrr_select(fleet, state) for _ in range(4)]
    assert picks == [0, 0, 1, 2]
    assert Counter(picks) == {0: 2, 1: 1, 2: 1}


def test_wrr_no_usable_server_raises():
    fleet = make_fleet(2)
    for s in fleet:
        s.alive = False
        s.dynamic_weight = 0.0
    with pytest.raises(NoServerAvailable):
        wrr_select(fleet, wrr_state())


@given(weights=st.lists(st.integers(1, 5), min_size=1, max_size=5))
def test_wrr_window_counts_match_weights(weights):
    fleet = [server(i, static_weight=float(w)) for i, w in enumerate(weights)]
    state = wrr_state()
    window = sum(weights)
    picks = [wrr_select(fleet, state) for _ in range(2 * window)]
    for half in (picks[:window], picks[window:]):
        counts = Counter(half)
        assert all(counts[i] == w for i, w in enumerate(weights))


# --- least connections -------------------------------------------------------


def test_lc_picks_fewest_connections():
    fleet = make_fleet(3)
    for s, c in zip(fleet, (3, 1, 2)):
        s.connections = c
        s.class_counts = [c, 0, 0, 0]
    assert lc_select(fleet) == 1


def test_lc_tie_keeps_lowest_index():
    fleet = make_fleet(2)
    for s in fleet:
        s.connections = 2
        s.class_counts = [2, 0, 0, 0]
    assert lc_select(fleet) == 0


def test_lc_singleton():
    fleet = make_fleet(1)
    fleet[0].connections = 5
    fleet[0].class_counts = [5, 0, 0, 0]
    assert lc_select(fleet) == 0


def test_lc_no_alive_raises():
    fleet = make_fleet(2)
    for s in fleet:
        s.alive = False
        s.dynamic_weight = 0.0
    with pytest.raises(NoServerAvailable):
        lc_select(fleet)


# --- weighted least connections ----------------------------------------------


def test_wlc_prefers_fewer_connections_equal_weights():
    assert wlc_prefers(2, 1.0, 1, 1.0) is True


def test_wlc_prefers_tie_keeps_incumbent():
    assert wlc_prefers(2, 2.0, 1, 1.0) is False


def test_wlc_prefers_matches_ratio_comparison():
    # 4*1 > 1*5 is false, matching 4/5 < 1/1 in exact rationals
    assert wlc_prefers(4, 5.0, 1, 1.0) is False


def _wlc_fleet(weights, conns):
    fleet = make_fleet(len(weights))
    for s, w, c in zip(fleet, weights, conns):
        s.static_weight = float(w)
        s.connections = c
        s.class_counts = [c, 0, 0, 0]
    return fleet


def test_wlc_select_least_ratio():
    assert wlc_select(_wlc_fleet((1, 1), (2, 1))) == 1


def test_wlc_select_equal_ratio_keeps_first():
    assert wlc_select(_wlc_fleet((2, 1), (2, 1))) == 0


def test_wlc_select_three_way():
    # exact ratios 4/5, 1/1, 0/1: argmin is server 2
    assert wlc_select(_wlc_fleet((5, 1, 1), (4, 1, 0))) == 2


def test_wlc_all_dead_raises():
    fleet = _wlc_fleet((1, 1), (0, 0))
    for s in fleet:
        s.alive = False
        s.dynamic_weight = 0.0
    with pytest.raises(NoServerAvailable):
        wlc_select(fleet)


# --- adaptive weighted least connections ---------------------------------------


def test_awlc_load_empty_server():
    assert awlc_load(server(), P) == 0.0


def test_awlc_load_one_of_each():
    s = server(connections=4, class_counts=[1, 1, 1, 1])
    assert awlc_load(s, P) == 15.0


def test_awlc_load_mixed_counts():
    s = server(connections=3, class_counts=[2, 0, 0, 1])
    assert awlc_load(s, P) == 10.0


def test_awlc_prefers_smaller_ratio():
    # 15/0.9 < 10/0.5 in exact rationals
    assert awlc_prefers(10.0, 0.5, 15.0, 0.9) is True


def test_awlc_prefers_equality_keeps_incumbent():
    assert awlc_prefers(10.0, 0.5, 10.0, 0.5) is False


def test_awlc_prefers_both_idle_keeps_incumbent():
    assert awlc_prefers(0.0, 0.3, 0.0, 0.9) is False


def _awlc_fleet(weights, loads):
    # loads realized as M1 counts with P1 = 1
    fleet = make_fleet(len(weights))
    for s, w, load in zip(fleet, weights, loads):
        s.dynamic_weight = w
        s.connections = load
        s.class_counts = [load, 0, 0, 0]
    return fleet


def test_awlc_select_least_ratio():
    assert awlc_select(_awlc_fleet((0.5, 0.9), (10, 15)), P) == 1


def test_awlc_select_all_down_raises():
    fleet = _awlc_fleet((0.0, 0.0), (0, 0))
    for s in fleet:
        s.alive = False
    with pytest.raises(NoServerAvailable):
        awlc_select(fleet, P)


def test_awlc_select_all_ties_keeps_first():
    assert awlc_select(_awlc_fleet((0.7, 0.7, 0.7), (3, 3, 3)), P) == 0


# --- assignment bookkeeping ---------------------------------------------------


def test_on_assign_increments_class_and_connections():
    s = server()
    on_assign(s, TaskClass.M3)
    assert s.class_counts == [0, 0, 1, 0]
    assert s.connections == 1


def test_on_assign_stacks():
    s = server(connections=1, class_counts=[1, 0, 0, 0])
    on_assign(s, TaskClass.M1)
    assert s.class_counts == [2, 0, 0, 0]
    assert s.connections == 2


def test_on_assign_dead_server_raises():
    s = server(alive=False, dynamic_weight=0.0)
    with pytest.raises(AssignToDeadServer):
        on_assign(s, TaskClass.M1)


def test_on_complete_decrements():
    s = server(connections=1, class_counts=[0, 0, 1, 0])
    on_complete(s, TaskClass.M3)
    assert s.class_counts == [0, 0, 0, 0]
    assert s.connections == 0


def test_on_complete_underflow_raises():
    with pytest.raises(CompleteWithoutAssign):
        on_complete(server(), TaskClass.M2)


# --- cross-cutting properties --------------------------------------------------

WEIGHT_VALUES = (0.1, 0.25, 0.5, 0.75, 1.0)


@given(
    weights=st.lists(st.sampled_from(WEIGHT_VALUES), min_size=1, max_size=6),
    data=st.data(),
)
def test_awlc_select_matches_rational_oracle(weights, data):
    # loads capped at 4: over this grid no two distinct load*weight products
    # round to the same float, so float and rational tie semantics coincide.
    # Larger loads can round onto false ties (5 * 0.1 rounds to exactly 0.5).
    loads = data.draw(
        st.lists(st.integers(0, 4), min_size=len(weights), max_size=len(weights))
    )
    fleet = _awlc_fleet(weights, loads)
    assert awlc_select(fleet, P) == ratio_argmin(weights, loads)


@given(
    weights=st.lists(st.integers(1, 4), min_size=1, max_size=6),
    data=st.data(),
)
def test_wlc_select_matches_rational_oracle(weights, data):
    conns = data.draw(
        st.lists(st.integers(0, 6), min_size=len(weights), max_size=len(weights))
    )
    fleet = _wlc_fleet(weights, conns)
    assert wlc_select(fleet) == ratio_argmin([float(w) for w in weights], conns)


@given(
    weights=st.lists(st.sampled_from(WEIGHT_VALUES), min_size=1, max_size=6),
    scale_exp=st.integers(-8, 8),
    data=st.data(),
)
def test_selection_is_scale_invariant(weights, scale_exp, data):
    # power-of-two scales are exact in binary floating point
    loads = data.draw(
        st.lists(st.integers(0, 6), min_size=len(weights), max_size=len(weights))
    )
    scale = 2.0**scale_exp
    before = awlc_select(_awlc_fleet(weights, loads), P)
    after = awlc_select(_awlc_fleet([w * scale for w in weights], loads), P)
    assert before == after


@given(
    load_m=st.floats(0, 1e6),
    w_m=st.floats(1e-6, 1.0),
    load_i=st.floats(0, 1e6),
    w_i=st.floats(1e-6, 1.0),
)
def test_awlc_prefers_is_asymmetric(load_m, w_m, load_i, w_i):
    assert not (
        awlc_prefers(load_m, w_m, load_i, w_i)
        and awlc_prefers(load_i, w_i, load_m, w_m)
    )


def test_zero_weight_server_never_selected():
    rng = random.Random(2024)
    for _ in range(2000):
        n = rng.randint(2, 6)
        weights = [rng.choice((0.0, 0.0, 0.3, 0.7, 1.0)) for _ in range(n)]
        if not any(w > 0 for w in weights):
            weights[rng.randrange(n)] = 0.5
        loads = [rng.randint(0, 5) for _ in range(n)]
        picked = awlc_select(_awlc_fleet(weights, loads), P)
        assert weights[picked] > 0
        static = [rng.choice((0, 0, 1, 2, 3)) for _ in range(n)]
        if not any(static):
            static[rng.randrange(n)] = 1
        picked = wlc_select(_wlc_fleet(static, loads))
        assert static[picked] > 0
