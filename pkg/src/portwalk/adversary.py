"""Worst-case instance construction against a known oblivious agent.

Both constructions exploit the same fact: an oblivious agent's exits from
any degree-d node follow a fixed sequence port_d(1), port_d(2), ..., so an
adversary who knows that sequence can label ports to waste as many of
those exits as possible.

Path construction. On a path explored toward a target endpoint, each
internal node is labeled using the majority value of a prefix of the
agent's degree-2 exit sequence: the value occurring at least k times among
the first 2k-1 exits is placed on the arc pointing away from the target.
Before the node can send the walk inward k times it must send it outward
at least k times, which compounds along the path into a quadratic number
of steps: at least (n-1)^2 before the target is reached, with the arc out
of the start endpoint crossed at least n-1 times.

Clique construction. For a degree budget d, some port p appears at most
d-1 times among the agent's first d(d-1) exits at degree d (pigeonhole).
Build a d-clique with a pendant behind port p of every clique node, probe
the agent on it for d^2(d-1) steps, and pick a clique node v* visited at
most d(d-1) times (pigeonhole again). Replacing v*'s pendant with a
majority-labeled path makes the walk reach the far end of that path only
after entering it d times via the rare port, which cannot happen within
d^2(d-1) steps. Cover time is therefore at least d^2(d-1) with d about a
third of the node count, i.e. cubic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .agents import PortFunction
from .errors import (
    AgentViolationError,
    HorizonExceededError,
    InvalidSizeError,
    InvalidVertexError,
)
from .graphs import (
    PathLabeling,
    PortLabeledGraph,
    build_clique_pendant,
    build_path,
    replace_pendant_with_path,
    serialize,
)
from .simulate import SimulationTrace, run, visit_count_upto


@dataclass(frozen=True)
class AdversarialInstance:
    """A constructed worst-case arena plus the certificate that comes with it.

    target is the node whose first visit the bound talks about, or None
    when the bound is on full coverage. construction_log records every
    choice made (rare port, replaced clique node, per-node majority
    values) so the construction can be replayed exactly.
    """

    graph: PortLabeledGraph
    start: int
    target: int | None
    certified_bound: int
    construction_log: dict

    def __post_init__(self):
        if self.certified_bound <= 0:
            raise InvalidSizeError("certified bound must be positive")


def majority_element(seq: Sequence[int], prefix_len: int, threshold: int) -> int:
    """Value in {1, 2} occurring at least threshold times in the prefix.

    Requires prefix_len == 2*threshold - 1, which makes existence certain
    and a tie impossible. A prefix longer than the available sequence
    raises HorizonExceededError.
    """
    if prefix_len != 2 * threshold - 1:
        raise ValueError(
            f"prefix length {prefix_len} does not match threshold {threshold}"
        )
    if prefix_len > len(seq):
        raise HorizonExceededError(
            f"need {prefix_len} sequence values, have {len(seq)}"
        )
    ones = sum(1 for x in seq[:prefix_len] if x == 1)
    return 1 if ones >= threshold else 2


def _degree2_prefix(agent: PortFunction, length: int) -> list[int]:
    out = []
    for i in range(1, length + 1):
        p = agent.outport(2, i)
        if p not in (1, 2):
            raise AgentViolationError(f"degree-2 exit {i} is {p!r}")
        out.append(p)
    return out


def worst_case_path_labeling(agent: PortFunction, n: int) -> PathLabeling:
    """Labeling of an n-node path that stalls this agent the longest.

    Internal node v_i (2 <= i <= n-1) points the majority value of the
    agent's first 2(i-1)-1 degree-2 exits away from the target endpoint
    v_1. Needs the degree-2 sequence up to index 2(n-2)-1; scripted agents
    that cannot answer that far raise HorizonExceededError.
    """
    if n < 2:
        raise InvalidSizeError(f"path needs at least 2 nodes, got {n}")
    if n == 2:
        return PathLabeling(2, ())
    prefix = _degree2_prefix(agent, 2 * (n - 2) - 1)
    toward_far = tuple(
        majority_element(prefix, 2 * (i - 1) - 1, i - 1) for i in range(2, n)
    )
    return PathLabeling(n, toward_far)


def build_path_instance(agent: PortFunction, n: int) -> AdversarialInstance:
    """Path arena certified to cost the agent at least (n-1)^2 steps.

    The walk starts at v_n (id n-1) and the certificate concerns the
    first visit to v_1 (id 0).
    """
    labeling = worst_case_path_labeling(agent, n)
    return AdversarialInstance(
        graph=build_path(labeling),
        start=n - 1,
        target=0,
        certified_bound=(n - 1) ** 2,
        construction_log={"n": n, "alpha": list(labeling.toward_far)},
    )


@dataclass(frozen=True)
class PathBoundReport:
    """Outcome of checking the quadratic path bound against one agent."""

    agent: str
    n: int
    bound: int
    arc_bound: int
    steps: int | None
    arc_count: int
    cap: int
    verdict: str  # "pass", "pass-vacuous", or "fail"

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"


def verify_path_bound(agent: PortFunction, n: int,
                      cap: int | None = None) -> PathBoundReport:
    """Build the worst-case path and measure the agent against its bound.

    A run that reaches the target is measured against (n-1)^2 steps and
    n-1 crossings of the start arc; a run still going at the cap is a
    vacuous pass (the certificate only binds walks that finish). The
    default cap of 8(n-1)^2 + 8 is far above any finishing run a passing
    agent produces, while keeping non-finishing agents cheap to detect.
    """
    inst = build_path_instance(agent, n)
    if cap is None:
        cap = 8 * (n - 1) ** 2 + 8
    trace = run(inst.graph, agent, inst.start, ("target", inst.target),
                cap=cap, record_moves=False)
    arc = trace.arc_counts.get((n - 1, n - 2), 0)
    if not trace.stopped:
        verdict = "pass-vacuous"
        steps = None
    else:
        steps = trace.steps
        ok = steps >= inst.certified_bound and arc >= n - 1
        verdict = "pass" if ok else "fail"
    return PathBoundReport(
        agent=agent.name,
        n=n,
        bound=inst.certified_bound,
        arc_bound=n - 1,
        steps=steps,
        arc_count=arc,
        cap=cap,
        verdict=verdict,
    )


def rare_port(agent: PortFunction, d: int) -> int:
    """Smallest port appearing at most d-1 times in the agent's first
    d(d-1) degree-d exits.

    Existence is guaranteed by counting: d(d-1) slots cannot give all d
    ports d or more occurrences.
    """
    if d < 2:
        raise InvalidSizeError(f"need degree at least 2, got {d}")
    length = d * (d - 1)
    counts = [0] * (d + 1)
    for i in range(1, length + 1):
        p = agent.outport(d, i)
        if not isinstance(p, int) or not 1 <= p <= d:
            raise AgentViolationError(f"degree-{d} exit {i} is {p!r}")
        counts[p] += 1
    for p in range(1, d + 1):
        if counts[p] <= d - 1:
            return p
    raise RuntimeError("internal error: no rare port found, counting is broken")


def select_v_star(trace: SimulationTrace, clique_nodes: Sequence[int],
                  budget: int, step_limit: int) -> int:
    """Smallest-id clique node occupied at most budget times before step_limit.

    The probe run is exactly step_limit steps, so the occupancies sum to
    step_limit and some clique node must stay within budget; not finding
    one means the simulator itself is broken, which aborts loudly.
    """
    for v in sorted(clique_nodes):
        if visit_count_upto(trace, v, step_limit) <= budget:
            return v
    raise RuntimeError(
        "internal error: every clique node exceeded its visit budget"
    )


def build_cubic_instance(agent: PortFunction, n: int,
                         start: int = 0) -> AdversarialInstance:
    """Assemble the n-node arena that forces a cubic cover time on this agent.

    Pipeline: d = n//3; find the rare degree-d port p; build the clique
    with pendants behind p; probe the agent on it from the start node for
    d^2(d-1) steps; pick the under-visited clique node v*; replace v*'s
    pendant with a path of d+1+(n mod 3) nodes labeled by the degree-2
    majority rule, with the glued endpoint's majority value pointing back
    at v*. The certificate is cover time >= d^2(d-1).

    HorizonExceededError from any stage is re-raised naming the stage.
    """
    d = n // 3
    if n < 6:
        raise InvalidSizeError(f"need n >= 6 for a clique of degree >= 2, got {n}")
    if not 0 <= start < d:
        raise InvalidVertexError(f"start must be a clique node 0..{d - 1}, got {start}")

    try:
        p = rare_port(agent, d)
    except HorizonExceededError as e:
        raise HorizonExceededError(f"rare-port stage: {e}") from e
    g1 = build_clique_pendant(d, p)

    steps_budget = d * d * (d - 1)
    try:
        probe = run(g1, agent, start, ("steps", steps_budget),
                    cap=steps_budget, record_moves=False)
    except HorizonExceededError as e:
        raise HorizonExceededError(f"probe-run stage: {e}") from e
    v_star = select_v_star(probe, range(d), d * (d - 1), steps_budget)

    path_len = n - 2 * d + 1  # d+1 plus the n mod 3 remainder
    try:
        prefix = _degree2_prefix(agent, 2 * (path_len - 1) - 1)
    except HorizonExceededError as e:
        raise HorizonExceededError(f"path-labeling stage: {e}") from e
    toward_far = tuple(
        majority_element(prefix, 2 * (i - 1) - 1, i - 1)
        for i in range(2, path_len)
    )
    glue_port = majority_element(prefix, 2 * (path_len - 1) - 1, path_len - 1)
    labeling = PathLabeling(path_len, toward_far)
    graph = replace_pendant_with_path(g1, v_star, labeling, back_port=glue_port)

    return AdversarialInstance(
        graph=graph,
        start=start,
        target=None,
        certified_bound=steps_budget,
        construction_log={
            "d": d,
            "p": p,
            "v_star": v_star,
            "path_len": path_len,
            "alpha": list(toward_far) + [glue_port],
        },
    )


@dataclass(frozen=True)
class CubicBoundReport:
    """Outcome of checking the cubic cover bound against one agent."""

    agent: str
    n: int
    d: int
    bound: int
    cover: int | None
    v_star: int
    v_star_visits: int
    v_star_budget: int
    cap: int
    verdict: str  # "pass", "pass-vacuous", or "fail"
    instance: AdversarialInstance

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"


def verify_cubic_bound(agent: PortFunction, n: int, cap: int | None = None,
                       start: int = 0) -> CubicBoundReport:
    """Build the cubic instance, run to coverage, and check the certificate.

    Passes when the cover time is at least d^2(d-1) or the walk never
    covers within the cap (default 4n^3). The replaced clique node is
    cross-checked: within the first d^2(d-1) steps it must be occupied at
    most d(d-1) times, and a violation fails the check even if the cover
    time looks fine, since it means the construction's accounting broke.
    """
    inst = build_cubic_instance(agent, n, start)
    g = inst.graph
    d = inst.construction_log["d"]
    v_star = inst.construction_log["v_star"]
    bound = inst.certified_bound
    if cap is None:
        cap = 4 * g.n ** 3
    big = run(g, agent, start, "covered", cap=cap, record_moves=False)
    replay = run(g, agent, start, ("steps", bound), cap=bound, record_moves=False)
    visits = visit_count_upto(replay, v_star, replay.steps)
    budget = d * (d - 1)
    cross_ok = visits <= budget
    cover = big.covered_at
    if not cross_ok:
        verdict = "fail"
    elif cover is None:
        verdict = "pass-vacuous"
    else:
        verdict = "pass" if cover >= bound else "fail"
    return CubicBoundReport(
        agent=agent.name,
        n=n,
        d=d,
        bound=bound,
        cover=cover,
        v_star=v_star,
        v_star_visits=visits,
        v_star_budget=budget,
        cap=cap,
        verdict=verdict,
        instance=inst,
    )


def export_instance(inst: AdversarialInstance) -> tuple[str, str]:
    """Serialize an instance: (graph document, sidecar document).

    The sidecar carries the start node, the certified bound, and the
    construction log entries needed for replay.
    """
    log = {k: inst.construction_log[k] for k in ("p", "v_star", "alpha")
           if k in inst.construction_log}
    sidecar = {"start": inst.start, "bound": inst.certified_bound, "log": log}
    return serialize(inst.graph), json.dumps(sidecar, separators=(",", ":")) + "\n"
