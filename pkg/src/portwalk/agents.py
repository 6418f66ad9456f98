"""Oblivious agents expressed as per-degree outport sequences.

Because an oblivious walker carries no state and never learns its inport,
everything it can do at a node is a function of that node's degree and of
how many times the node has been visited. An agent is therefore captured
completely by the family of sequences port_d(i): the port taken on the
i-th visit to any degree-d node. Three concrete forms are provided: the
rotor-router (cycle through ports in order), cyclic patterns folded into
the local degree, and finite scripted tables. Raw whiteboard transition
functions can be reduced to the same form by replaying them against a
virtual node.

At degree 1 there is only one legal port, so every agent answers 1 there
regardless of its script.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import AgentViolationError, HorizonExceededError, InvalidPortError


def rotor_router_port(d: int, i: int) -> int:
    """Port taken by the rotor-router on visit i to a degree-d node.

    Ports are used cyclically starting at 1: visit i exits via
    ((i-1) mod d) + 1.
    """
    if d < 1 or i < 1:
        raise ValueError(f"degree and visit index must be positive, got ({d}, {i})")
    return (i - 1) % d + 1


class PortFunction:
    """Base interface: outport(d, i) plus the largest answerable index."""

    name = "agent"

    def outport(self, d: int, i: int) -> int:
        raise NotImplementedError

    def horizon(self, d: int) -> float:
        """Largest visit index answerable for degree d (math.inf if unlimited)."""
        return math.inf


class RotorRouter(PortFunction):
    """Closed-form rotor-router: cycle through ports 1..d forever."""

    name = "rotor-router"

    def outport(self, d: int, i: int) -> int:
        return (i - 1) % d + 1


class CyclicAgent(PortFunction):
    """Agent repeating a fixed port pattern at every node.

    The pattern entry for visit i is pattern[(i-1) mod len]; entries above
    the local degree fold back into range via ((entry-1) mod d) + 1, so one
    pattern defines behaviour at every degree. Used for the adversarial
    test battery (always-1, alternating-2, biased-112).
    """

    def __init__(self, pattern: Sequence[int], name: str | None = None):
        pattern = tuple(pattern)
        if not pattern or any(e < 1 for e in pattern):
            raise InvalidPortError(f"pattern entries must be positive, got {pattern}")
        self.pattern = pattern
        self.name = name or "cycle-" + "".join(str(e) for e in pattern)

    def outport(self, d: int, i: int) -> int:
        return (self.pattern[(i - 1) % len(self.pattern)] - 1) % d + 1


class ScriptedPortFunction(PortFunction):
    """Finite per-degree outport tables with an explicit extension rule.

    extension="cycle" repeats each table forever; extension="fail" raises
    HorizonExceededError past the end of a table. Queries at degrees with
    no table also raise, except degree 1 whose only answer is forced.
    """

    def __init__(self, tables: Mapping[int, Sequence[int]], extension: str = "cycle",
                 name: str = "scripted"):
        if extension not in ("cycle", "fail"):
            raise ValueError(f"extension must be 'cycle' or 'fail', got {extension!r}")
        clean: dict[int, tuple[int, ...]] = {}
        for d, entries in tables.items():
            d = int(d)
            entries = tuple(int(e) for e in entries)
            for e in entries:
                if not 1 <= e <= d:
                    raise InvalidPortError(f"table for degree {d} contains port {e}")
            clean[d] = entries
        self.tables = clean
        self.extension = extension
        self.name = name

    def outport(self, d: int, i: int) -> int:
        table = self.tables.get(d)
        if not table:
            if d == 1:
                return 1
            raise HorizonExceededError(f"no table for degree {d}")
        if i <= len(table):
            return table[i - 1]
        if self.extension == "cycle":
            return table[(i - 1) % len(table)]
        raise HorizonExceededError(
            f"degree-{d} table has {len(table)} entries, visit {i} requested"
        )

    def horizon(self, d: int) -> float:
        table = self.tables.get(d)
        if not table:
            return math.inf if d == 1 else 0
        return math.inf if self.extension == "cycle" else len(table)


def scripted_port_function(tables: Mapping[int, Sequence[int]],
                           extension: str = "cycle") -> ScriptedPortFunction:
    """Build a scripted agent, validating that every entry fits its degree."""
    return ScriptedPortFunction(tables, extension)


def load_agent_script(text: str, name: str = "scripted") -> ScriptedPortFunction:
    """Parse the agent script document: {"tables": {"<d>": [...]}, "extension": ...}.

    "extension" accepts "cycle" or "fail".
    """
    doc = json.loads(text)
    if not isinstance(doc, dict) or "tables" not in doc:
        raise ValueError("agent script must be an object with a 'tables' field")
    tables = {int(d): entries for d, entries in doc["tables"].items()}
    return ScriptedPortFunction(tables, doc.get("extension", "cycle"), name=name)


@dataclass(frozen=True)
class WhiteboardAgent:
    """Raw agent model: a transition on (node state, degree).

    transition(s, d) returns (new node state, outport). States are
    non-negative integers; memory_bits bounds how many bits a degree-d
    node may use (an int for a uniform budget, a callable for per-degree
    budgets, None for unlimited). Every node starts in initial_state.
    """

    transition: Callable[[int, int], tuple[int, int]]
    initial_state: int = 0
    memory_bits: int | Callable[[int], int] | None = None

    def budget(self, d: int) -> int | None:
        if self.memory_bits is None:
            return None
        if callable(self.memory_bits):
            return self.memory_bits(d)
        return self.memory_bits

    def as_port_function(self, name: str = "whiteboard") -> PortFunction:
        return _ReducedWhiteboard(self, name)


def derive_port_function(agent: WhiteboardAgent, d: int, k: int) -> list[int]:
    """First k outports the agent takes at a virtual degree-d node.

    Replays the transition k times from the initial node state; the
    resulting list is exactly port_d(1..k). Raises AgentViolationError if
    the transition emits a port outside 1..d or leaves the declared
    state budget.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    budget = agent.budget(d)
    limit = None if budget is None else 1 << budget
    state = agent.initial_state
    out: list[int] = []
    for _ in range(k):
        if not isinstance(state, int) or state < 0:
            raise AgentViolationError(f"node state {state!r} is not a non-negative int")
        if limit is not None and state >= limit:
            raise AgentViolationError(
                f"node state {state} needs more than {budget} bits at degree {d}"
            )
        state, port = agent.transition(state, d)
        if not isinstance(port, int) or not 1 <= port <= d:
            raise AgentViolationError(f"emitted port {port!r} at degree {d}")
        out.append(port)
    if not isinstance(state, int) or state < 0:
        raise AgentViolationError(f"node state {state!r} is not a non-negative int")
    if limit is not None and state >= limit:
        raise AgentViolationError(
            f"node state {state} needs more than {budget} bits at degree {d}"
        )
    return out


class _ReducedWhiteboard(PortFunction):
    """PortFunction view of a WhiteboardAgent, cached per degree."""

    def __init__(self, agent: WhiteboardAgent, name: str):
        self.agent = agent
        self.name = name
        self._cache: dict[int, list[int]] = {}

    def outport(self, d: int, i: int) -> int:
        got = self._cache.get(d, [])
        if i > len(got):
            self._cache[d] = derive_port_function(self.agent, d, max(i, 2 * len(got)))
        return self._cache[d][i - 1]


def whiteboard_rotor_router() -> WhiteboardAgent:
    """Rotor-router in raw form: the node state is a port counter mod d."""
    return WhiteboardAgent(
        transition=lambda s, d: ((s + 1) % d, s % d + 1),
        initial_state=0,
        memory_bits=lambda d: max((d - 1).bit_length(), 0),
    )


def memory_lower_bound_check(memory_bits: int, d: int) -> bool:
    """Whether memory_bits bits can distinguish the d inputs a degree-d node needs."""
    if d < 1 or memory_bits < 0:
        raise ValueError(f"need d >= 1 and bits >= 0, got ({memory_bits}, {d})")
    return (1 << memory_bits) >= d
