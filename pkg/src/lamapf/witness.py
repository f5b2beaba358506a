"""Witness conversion between satisfying assignments and LA-MAPF solutions."""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import evaluate
from .instance import Move, Solution, apply_move, undo_move, validate
from .reduction import f_name

PHASES = ("variables_out", "blockers_out", "clauses_down", "clauses_up", "blockers_back", "variables_back")


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisPlan:
    variables_out: tuple
    blockers_out: tuple
    clauses_down: tuple
    clauses_up: tuple
    blockers_back: tuple
    variables_back: tuple
    chosen: tuple  # (var, negated) literal routed through, per clause

    def phases(self):
        return [(name, getattr(self, name)) for name in PHASES]

    def solution(self):
        return Solution(tuple(mv for _, block in self.phases() for mv in block))


class _Walker:
    """Emits moves along named vertex paths, tracking who stands where."""

    def __init__(self, inst, meta):
        self.names = meta.names
        self.cfg = inst.start
        self.occupant = {v: a for a, v in enumerate(self.cfg)}

    def walk(self, *path):
        ids = [self.names[p] for p in path]
        agent = self.occupant[ids[0]]
        out = []
        for u, w in zip(ids, ids[1:]):
            mv = Move(agent, u, w)
            self.cfg = apply_move(self.cfg, mv)
            del self.occupant[u]
            self.occupant[w] = agent
            out.append(mv)
        return out


def _js(hi, lo=1):
    return [f"J_{i}" for i in range(hi, lo - 1, -1)]


def _ls(hi, lo=1):
    # L_lo .. L_hi ascending
    return [f"L_{i}" for i in range(lo, hi + 1)]


def plan(f, assignment, inst, meta):
    """Phase-by-phase move blocks that drive every agent home under ``assignment``."""
    if len(assignment) != f.num_vars:
        raise WitnessError(f"assignment has {len(assignment)} values, formula has {f.num_vars}")
    chosen = []
    for j, clause in enumerate(f.clauses, start=1):
        lit = next((lit for lit in clause if lit.satisfied_by(assignment)), None)
        if lit is None:
            raise WitnessError(f"assignment does not satisfy clause {j}")
        chosen.append(lit)
    n, m = f.num_vars, f.m
    if (meta.n, meta.m) != (n, m):
        raise WitnessError("meta does not belong to this formula")
    w = _Walker(inst, meta)

    phase1 = []
    for i in range(1, n + 1):
        phase1 += w.walk(f"A_{i}", f"B_{i}" if assignment[i - 1] else f"C_{i}")

    phase2 = w.walk("K", *_ls(n))
    for i in range(1, n):
        phase2 += w.walk(*_js(i), "K", *_ls(n - i))
    phase2 += w.walk(*_js(n), "K")

    phase3 = []
    for j, lit in enumerate(chosen, start=1):
        phase3 += w.walk(f"D_{j}", f"E_{j}")
        phase3 += w.walk(f"E_{j}", f_name(j, lit), f"G_{j}")
        phase3 += w.walk(f"G_{j}", f"H_{j}")

    phase4 = []
    for j in range(m, 0, -1):
        phase4 += w.walk(f"H_{j}", f"I_{j}")

    phase5 = w.walk("K", *reversed(_js(n)))
    for i in range(n - 1, 0, -1):
        phase5 += w.walk(*reversed(_ls(n - i)), "K", *reversed(_js(i)))
    phase5 += w.walk(*reversed(_ls(n)), "K")

    phase6 = []
    for i in range(n, 0, -1):
        phase6 += w.walk(f"B_{i}" if assignment[i - 1] else f"C_{i}", f"A_{i}")

    return SynthesisPlan(tuple(phase1), tuple(phase2), tuple(phase3), tuple(phase4),
                         tuple(phase5), tuple(phase6), tuple(chosen))


def synthesize(f, assignment, inst, meta):
    """Conflict-free solution of ``reduce(f)`` built from a satisfying assignment."""
    if len(assignment) != f.num_vars or not evaluate(f, assignment):
        raise WitnessError("assignment does not satisfy the formula")
    return plan(f, assignment, inst, meta).solution()


def expected_length(n, m):
    """Moves emitted by :func:`synthesize`: 2n for the v-agents, 2(n^2 + n) for the b-agents, 5m for the c-agents."""
    return 2 * n * n + 4 * n + 5 * m


def extract(inst, meta, sol):
    """Read a satisfying assignment off a valid solution of a reduced instance.

    Moves are undone from the goal configuration until the first clause
    agent's G vertex is occupied; ``x_i`` is then true iff B_i is occupied.
    """
    if "G_1" not in meta.names:
        raise WitnessError("instance has no vertex named G_1; not a reduced instance")
    report = validate(inst, sol)
    if not report.accepted:
        raise WitnessError(f"solution is invalid: {report.kind} at step {report.step}: {report.detail}")
    g1 = meta.names["G_1"]
    cfg = inst.goal
    occupied = set(cfg)
    for mv in reversed(sol.moves):
        cfg = undo_move(cfg, mv)
        occupied.discard(mv.dst)
        occupied.add(mv.src)
        if g1 in occupied:
            break
    else:
        raise WitnessError("solution does not traverse G_1")
    return tuple(meta.names[f"B_{i}"] in occupied for i in range(1, meta.n + 1))
