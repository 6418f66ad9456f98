"""Agent representations and the whiteboard-to-sequence reduction."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from portwalk.agents import (
    CyclicAgent,
    RotorRouter,
    ScriptedPortFunction,
    WhiteboardAgent,
    derive_port_function,
    load_agent_script,
    memory_lower_bound_check,
    rotor_router_port,
    scripted_port_function,
    whiteboard_rotor_router,
)
from portwalk.errors import (
    AgentViolationError,
    HorizonExceededError,
    InvalidPortError,
)


class TestRotorRouterPort:
    def test_single_port(self):
        assert rotor_router_port(1, 7) == 1

    def test_cyclic_wrap(self):
        assert rotor_router_port(3, 4) == 1

    def test_second_visit_degree_two(self):
        assert rotor_router_port(2, 2) == 2

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            rotor_router_port(0, 1)
        with pytest.raises(ValueError):
            rotor_router_port(2, 0)

    @given(st.integers(1, 16), st.integers(0, 30))
    def test_window_uses_each_port_once(self, d, offset):
        window = [rotor_router_port(d, offset * d + j) for j in range(1, d + 1)]
        assert sorted(window) == list(range(1, d + 1))

    def test_class_matches_function(self):
        agent = RotorRouter()
        for d in range(1, 9):
            for i in range(1, 4 * d):
                assert agent.outport(d, i) == rotor_router_port(d, i)


class TestCyclicAgent:
    def test_always_one(self):
        a = CyclicAgent((1,))
        assert [a.outport(4, i) for i in range(1, 5)] == [1, 1, 1, 1]

    def test_folds_into_degree(self):
        a = CyclicAgent((2, 1))
        assert [a.outport(1, i) for i in range(1, 4)] == [1, 1, 1]
        assert [a.outport(2, i) for i in range(1, 5)] == [2, 1, 2, 1]
        assert [a.outport(5, i) for i in range(1, 5)] == [2, 1, 2, 1]

    def test_rejects_bad_pattern(self):
        with pytest.raises(InvalidPortError):
            CyclicAgent(())
        with pytest.raises(InvalidPortError):
            CyclicAgent((1, 0))

    def test_unlimited_horizon(self):
        assert CyclicAgent((1, 2)).horizon(2) == math.inf


class TestScripted:
    def test_cycle_matches_rotor(self):
        a = scripted_port_function({2: [1, 2]}, "cycle")
        for i in range(1, 21):
            assert a.outport(2, i) == rotor_router_port(2, i)

    def test_fail_beyond_horizon(self):
        a = scripted_port_function({2: [1]}, "fail")
        assert a.outport(2, 1) == 1
        with pytest.raises(HorizonExceededError):
            a.outport(2, 2)

    def test_entry_out_of_range(self):
        with pytest.raises(InvalidPortError):
            scripted_port_function({2: [3]})

    def test_missing_degree(self):
        a = scripted_port_function({2: [1, 2]})
        with pytest.raises(HorizonExceededError):
            a.outport(3, 1)

    def test_degree_one_is_forced(self):
        a = scripted_port_function({2: [1, 2]}, "fail")
        assert a.outport(1, 99) == 1
        assert a.horizon(1) == math.inf

    def test_horizons(self):
        a = scripted_port_function({2: [1, 2, 2]}, "fail")
        assert a.horizon(2) == 3
        assert a.horizon(5) == 0
        b = scripted_port_function({2: [1, 2, 2]}, "cycle")
        assert b.horizon(2) == math.inf

    def test_bad_extension(self):
        with pytest.raises(ValueError):
            scripted_port_function({2: [1]}, "extend-forever")

    def test_load_script(self):
        a = load_agent_script('{"tables": {"2": [1, 2], "3": [3]}, '
                              '"extension": "fail"}')
        assert isinstance(a, ScriptedPortFunction)
        assert a.outport(3, 1) == 3
        with pytest.raises(HorizonExceededError):
            a.outport(3, 2)

    def test_load_script_rejects_garbage(self):
        with pytest.raises(ValueError):
            load_agent_script('{"no_tables": 1}')


class TestDerivePortFunction:
    def test_whiteboard_rotor_degree_two(self):
        assert derive_port_function(whiteboard_rotor_router(), 2, 4) == [1, 2, 1, 2]

    def test_constant_agent(self):
        a = WhiteboardAgent(transition=lambda s, d: (s, 1))
        assert derive_port_function(a, 3, 3) == [1, 1, 1]

    def test_port_out_of_range(self):
        a = WhiteboardAgent(transition=lambda s, d: (s, d + 1))
        with pytest.raises(AgentViolationError):
            derive_port_function(a, 3, 1)

    def test_state_budget_violation(self):
        a = WhiteboardAgent(transition=lambda s, d: (s + 1, 1), memory_bits=1)
        with pytest.raises(AgentViolationError):
            derive_port_function(a, 2, 5)

    def test_negative_state_rejected(self):
        a = WhiteboardAgent(transition=lambda s, d: (s - 1, 1))
        with pytest.raises(AgentViolationError):
            derive_port_function(a, 2, 3)

    def test_matches_rotor_everywhere(self):
        wb = whiteboard_rotor_router()
        for d in range(1, 17):
            got = derive_port_function(wb, d, 10 * d)
            want = [rotor_router_port(d, i) for i in range(1, 10 * d + 1)]
            assert got == want

    def test_deterministic(self):
        wb = whiteboard_rotor_router()
        assert derive_port_function(wb, 5, 30) == derive_port_function(wb, 5, 30)

    def test_as_port_function_agrees(self):
        wb = whiteboard_rotor_router()
        pf = wb.as_port_function()
        # out-of-order queries hit and extend the per-degree cache
        assert pf.outport(3, 7) == rotor_router_port(3, 7)
        assert pf.outport(3, 2) == rotor_router_port(3, 2)
        assert pf.outport(6, 1) == 1

    @given(st.integers(2, 64), st.integers(0, 5))
    @settings(max_examples=40, deadline=None)
    def test_small_state_space_limits_distinct_ports(self, d, bits):
        # with fewer than d reachable states an agent cannot show d ports
        states = 1 << bits
        a = WhiteboardAgent(
            transition=lambda s, d_, n_states=states: ((s + 1) % n_states,
                                                       s % n_states + 1),
            memory_bits=bits,
        )
        if states >= d:
            return
        seq = derive_port_function(a, d, 10 * d)
        assert len(set(seq)) <= states < d


class TestMemoryLowerBound:
    def test_one_bit_two_ports(self):
        assert memory_lower_bound_check(1, 2) is True

    def test_one_bit_three_ports(self):
        assert memory_lower_bound_check(1, 3) is False

    def test_zero_bits_single_port(self):
        assert memory_lower_bound_check(0, 1) is True

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            memory_lower_bound_check(-1, 2)
        with pytest.raises(ValueError):
            memory_lower_bound_check(1, 0)

    @given(st.integers(0, 12), st.integers(1, 2048))
    def test_agrees_with_powers(self, bits, d):
        assert memory_lower_bound_check(bits, d) == (2 ** bits >= d)
