"""Breadth-first decision procedure over joint configurations.

Every transition is reversible and the configuration space is finite, so
exhausting the reachable space proves an instance unsolvable.  Conflict
geometry depends only on (edge, vertex) pairs, so it is precomputed into
one bitmask per directed edge: the set of vertices a stationary agent may
not occupy while an agent traverses that edge.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .cnf import brute_force_sat, evaluate
from .geometry import point_segment_closer_than
from .instance import Move, Solution, validate
from .reduction import reduce
from .witness import WitnessError, extract, synthesize

DEFAULT_MAX_STATES = 50_000_000
DEFAULT_MAX_SECONDS = 600

SOLVED = "SOLVED"
UNSOLVABLE = "UNSOLVABLE"
LIMIT_EXCEEDED = "LIMIT_EXCEEDED"


@dataclass(frozen=True)
class SolveResult:
    verdict: str
    states_expanded: int
    solution: Solution | None = None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "states_expanded": self.states_expanded,
            "solution": None if self.solution is None else self.solution.to_json(),
        }


def blocking_masks(inst, threshold=None):
    """``succ[u]`` lists ``(w, mask)``: moving u -> w is legal iff no other agent is on a vertex in ``mask``."""
    t = inst.threshold if threshold is None else threshold
    pos = inst.positions
    succ = []
    for u, ns in enumerate(inst.neighbors):
        row = []
        for w in ns:
            mask = 1 << w
            if t > 0:
                seg = (pos[u], pos[w])
                for x, p in enumerate(pos):
                    if x != u and point_segment_closer_than(p, seg, t):
                        mask |= 1 << x
            row.append((w, mask))
        succ.append(tuple(row))
    return succ


def solve_bfs(inst, max_states=DEFAULT_MAX_STATES, max_seconds=DEFAULT_MAX_SECONDS, threshold=None):
    """Shortest (in transitions) solution, or proof that none exists, or a limit verdict."""
    k = len(inst.agents)
    bits = max(1, (len(inst.vertices) - 1).bit_length())
    shifts = [bits * a for a in range(k)]

    def pack(cfg):
        return sum(v << s for v, s in zip(cfg, shifts))

    start, goal = inst.start, inst.goal
    start_key, goal_key = pack(start), pack(goal)
    if start_key == goal_key:
        return SolveResult(SOLVED, 0, Solution(()))

    succ = blocking_masks(inst, threshold)
    bit = [1 << v for v in range(len(inst.vertices))]
    parent = {start_key: None}
    queue = deque([(start_key, start)])
    expanded = 0
    deadline = time.monotonic() + max_seconds
    while queue:
        key, cfg = queue.popleft()
        expanded += 1
        if not expanded & 0xFFF and time.monotonic() > deadline:
            return SolveResult(LIMIT_EXCEEDED, expanded)
        occ = 0
        for v in cfg:
            occ |= bit[v]
        for a, u in enumerate(cfg):
            others = occ ^ bit[u]
            shift = shifts[a]
            for w, mask in succ[u]:
                if mask & others:
                    continue
                nkey = key + ((w - u) << shift)
                if nkey in parent:
                    continue
                parent[nkey] = (key, a, u, w)
                if nkey == goal_key:
                    sol = _reconstruct(parent, nkey)
                    report = validate(inst, sol, threshold)
                    if not report.accepted:
                        raise AssertionError(f"BFS produced an invalid solution: {report}")
                    return SolveResult(SOLVED, expanded, sol)
                if len(parent) > max_states:
                    return SolveResult(LIMIT_EXCEEDED, expanded)
                queue.append((nkey, cfg[:a] + (w,) + cfg[a + 1:]))
    return SolveResult(UNSOLVABLE, expanded)


def _reconstruct(parent, key):
    moves = []
    while parent[key] is not None:
        key, a, u, w = parent[key]
        moves.append(Move(a, u, w))
    moves.reverse()
    return Solution(tuple(moves))


AGREE = "AGREE"
DISAGREE = "DISAGREE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class AgreementRecord:
    status: str
    sat: bool
    assignment: tuple | None
    bfs_verdict: str
    states_expanded: int
    synthesized_accepted: bool | None = None
    extracted: tuple | None = None
    extracted_satisfies: bool | None = None
    notes: str = ""

    @property
    def agree(self):
        return self.status == AGREE

    def to_json(self):
        def assign(a):
            return None if a is None else {f"x{i}": v for i, v in enumerate(a, start=1)}

        return {
            "status": self.status,
            "sat": self.sat,
            "assignment": assign(self.assignment),
            "bfs_verdict": self.bfs_verdict,
            "states_expanded": self.states_expanded,
            "synthesized_accepted": self.synthesized_accepted,
            "extracted": assign(self.extracted),
            "extracted_satisfies": self.extracted_satisfies,
            "notes": self.notes,
        }


def solvable_verdict(f, max_states=DEFAULT_MAX_STATES, max_seconds=DEFAULT_MAX_SECONDS):
    """Run both oracles on ``f`` and cross-check their witnesses."""
    assignment = brute_force_sat(f)
    inst, meta = reduce(f)
    notes = []
    synth_ok = None
    if assignment is not None:
        sol = synthesize(f, assignment, inst, meta)
        report = validate(inst, sol)
        synth_ok = report.accepted
        if not synth_ok:
            notes.append(f"synthesized solution rejected: {report.kind} at step {report.step}")
    result = solve_bfs(inst, max_states, max_seconds)
    extracted = extracted_ok = None
    if result.verdict == SOLVED:
        try:
            extracted = extract(inst, meta, result.solution)
            extracted_ok = evaluate(f, extracted)
        except WitnessError as exc:
            extracted_ok = False
            notes.append(f"extraction failed: {exc}")
        if not extracted_ok:
            notes.append("extracted assignment does not satisfy the formula")

    if result.verdict == LIMIT_EXCEEDED:
        status = INCONCLUSIVE
        notes.append("search limit reached")
    elif (assignment is not None) != (result.verdict == SOLVED):
        status = DISAGREE
    elif synth_ok is False or extracted_ok is False:
        status = DISAGREE
    else:
        status = AGREE
    if status == INCONCLUSIVE and synth_ok is False:
        status = DISAGREE
    return AgreementRecord(status, assignment is not None, assignment, result.verdict, result.states_expanded,
                           synth_ok, extracted, extracted_ok, "; ".join(notes))
