"""Deterministic execution of one oblivious agent on one port-labeled graph.

Time convention: the agent occupies its start node at the beginning of
step 0; the move with index k happens during step k and delivers the
agent to its next node at the beginning of step k+1. A node's visit index
(the i handed to the agent's port_d(i)) counts occupancies, so the start
node's first exit uses i = 1 and every later arrival bumps the index
before the next exit.

Stop conditions for run():
  "covered"        stop at the step of the first full coverage
  ("target", v)    stop at the first arrival at node v
  ("steps", k)     stop after exactly k moves
All runs are additionally bounded by a step cap; a run that hits the cap
without firing its stop condition is flagged not-stopped rather than
failed, since several bound checks are conditional on the walk finishing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .agents import PortFunction
from .errors import (
    AgentViolationError,
    InvalidArcError,
    InvalidLimitError,
    InvalidVertexError,
)
from .graphs import PortLabeledGraph


@dataclass
class SimulationState:
    """Mutable cursor for single-stepping: position, per-node visit counts, step."""

    current: int
    visit_index: list[int]
    step: int = 0


def initial_state(g: PortLabeledGraph, start: int) -> SimulationState:
    if not 0 <= start < g.n:
        raise InvalidVertexError(f"start node {start} out of range")
    return SimulationState(current=start, visit_index=[0] * g.n, step=0)


def step(g: PortLabeledGraph, agent: PortFunction,
         st: SimulationState) -> SimulationState:
    """Advance one move in place and return the same state object.

    Bumps the current node's visit index, asks the agent for an outport,
    and crosses the corresponding arc. HorizonExceededError from the
    agent propagates.
    """
    v = st.current
    d = len(g.port_map[v])
    st.visit_index[v] += 1
    p = agent.outport(d, st.visit_index[v])
    if not isinstance(p, int) or p < 1 or p > d:
        raise AgentViolationError(f"agent returned port {p!r} at degree {d}")
    st.current = g.port_map[v][p - 1]
    st.step += 1
    return st


@dataclass
class SimulationTrace:
    """Complete record of one run.

    moves holds (node, outport) per step in order, or None when the run
    was taken in counters-only mode. first_visit[v] is the earliest step
    at which v is occupied (start node: 0, never visited: None).
    covered_at is the step of first full coverage, None if coverage was
    not reached. stopped records whether the stop condition fired before
    the cap.
    """

    graph: PortLabeledGraph
    start: int
    final: int
    steps: int
    moves: list[tuple[int, int]] | None
    first_visit: list[int | None]
    visit_counts: list[int]
    arc_counts: dict[tuple[int, int], int]
    covered_at: int | None
    stopped: bool

    def positions(self) -> list[int]:
        """Occupied node at the beginning of each step 0..steps."""
        if self.moves is None:
            raise ValueError("trace was recorded in counters-only mode")
        return [v for v, _ in self.moves] + [self.final]


def run(g: PortLabeledGraph, agent: PortFunction, start: int,
        stop, cap: int | None = None, record_moves: bool = True) -> SimulationTrace:
    """Execute the agent from start until the stop condition or the cap.

    cap defaults to 4*n^3, a comfortable ceiling for any walk that is
    going to finish at all on the graphs this package builds. Set
    record_moves=False for long runs where only the aggregate counters
    matter; per-step analyses (positions, outport sequences) then become
    unavailable.
    """
    n = g.n
    if not 0 <= start < n:
        raise InvalidVertexError(f"start node {start} out of range")
    if cap is None:
        cap = 4 * n * n * n
    if cap < 1:
        raise ValueError(f"cap must be at least 1, got {cap}")

    if stop == "covered":
        mode, target, limit = 0, -1, cap
    elif isinstance(stop, tuple) and len(stop) == 2 and stop[0] == "target":
        mode, target, limit = 1, stop[1], cap
        if not 0 <= target < n:
            raise InvalidVertexError(f"target node {target} out of range")
    elif isinstance(stop, tuple) and len(stop) == 2 and stop[0] == "steps":
        if stop[1] < 0:
            raise ValueError(f"step budget must be non-negative, got {stop[1]}")
        mode, target, limit = 2, -1, min(cap, stop[1])
    else:
        raise ValueError(f"unrecognized stop condition {stop!r}")

    port_map = g.port_map
    degs = [len(row) for row in port_map]
    visit_index = [0] * n
    visit_counts = [0] * n
    first_visit: list[int | None] = [None] * n
    arc_counts: dict[tuple[int, int], int] = {}
    moves: list[tuple[int, int]] | None = [] if record_moves else None
    outport = agent.outport

    cur = start
    visit_counts[cur] = 1
    first_visit[cur] = 0
    unvisited = n - 1
    covered_at: int | None = 0 if unvisited == 0 else None
    stopped = False
    if mode == 0 and unvisited == 0:
        stopped = True
        limit = 0
    if mode == 1 and cur == target:
        stopped = True
        limit = 0

    steps = 0
    while steps < limit:
        d = degs[cur]
        i = visit_index[cur] + 1
        visit_index[cur] = i
        p = outport(d, i)
        if p < 1 or p > d:
            raise AgentViolationError(f"agent returned port {p!r} at degree {d}")
        nxt = port_map[cur][p - 1]
        if moves is not None:
            moves.append((cur, p))
        arc = (cur, nxt)
        arc_counts[arc] = arc_counts.get(arc, 0) + 1
        steps += 1
        c = visit_counts[nxt] + 1
        visit_counts[nxt] = c
        cur = nxt
        if c == 1:
            first_visit[nxt] = steps
            unvisited -= 1
            if mode == 0:
                if unvisited == 0:
                    covered_at = steps
                    stopped = True
                    break
            elif mode == 1 and nxt == target:
                if unvisited == 0:
                    covered_at = steps
                stopped = True
                break
            if unvisited == 0:
                covered_at = steps

    if mode == 2:
        stopped = steps == stop[1]

    return SimulationTrace(
        graph=g,
        start=start,
        final=cur,
        steps=steps,
        moves=moves,
        first_visit=first_visit,
        visit_counts=visit_counts,
        arc_counts=arc_counts,
        covered_at=covered_at,
        stopped=stopped,
    )


def cover_time(trace: SimulationTrace) -> int | None:
    """Step at which the last unvisited node was reached, if coverage happened."""
    return trace.covered_at


def arc_traversals(trace: SimulationTrace, u: int, v: int) -> int:
    """How many times the run crossed the arc u -> v."""
    if v not in trace.graph.port_map[u]:
        raise InvalidArcError(f"({u}, {v}) is not an arc of the graph")
    return trace.arc_counts.get((u, v), 0)


def visit_count_upto(trace: SimulationTrace, v: int, step_limit: int) -> int:
    """Occupancies of v strictly before step_limit.

    The start occupancy counts at step 0, every arrival at its step.
    step_limit may not exceed the number of executed steps.
    """
    if step_limit < 0 or step_limit > trace.steps:
        raise InvalidLimitError(
            f"step limit {step_limit} outside 0..{trace.steps}"
        )
    if trace.moves is None:
        if step_limit == trace.steps:
            return trace.visit_counts[v] - (1 if trace.final == v else 0)
        raise ValueError("counters-only trace cannot answer partial limits")
    count = 0
    for node, _ in trace.moves[:step_limit]:
        if node == v:
            count += 1
    return count


def outports_taken(trace: SimulationTrace, v: int) -> list[int]:
    """Sequence of outports the run used when leaving v, in order."""
    if trace.moves is None:
        raise ValueError("trace was recorded in counters-only mode")
    return [p for node, p in trace.moves if node == v]


def export_trace(trace: SimulationTrace) -> str:
    """Column-separated trace document.

    One row per step (step,node,outport,next_node), then a summary block
    with covered_at and per-node first_visit / visit_counts.
    """
    if trace.moves is None:
        raise ValueError("trace was recorded in counters-only mode")
    g = trace.graph
    lines = ["step,node,outport,next_node"]
    for k, (node, p) in enumerate(trace.moves):
        lines.append(f"{k},{node},{p},{g.port_map[node][p - 1]}")
    lines.append("summary")
    covered = "none" if trace.covered_at is None else str(trace.covered_at)
    lines.append(f"covered_at,{covered}")
    lines.append("node,first_visit,visit_count")
    for v in range(g.n):
        fv = "none" if trace.first_visit[v] is None else str(trace.first_visit[v])
        lines.append(f"{v},{fv},{trace.visit_counts[v]}")
    return "\n".join(lines) + "\n"
