"""Large-agent MAPF: 3-SAT reduction, solution validation and witness tools."""

from .cnf import Formula3CNF, Literal, brute_force_sat, evaluate, parse_dimacs, render_dimacs
from .geometry import Point, Segment, point_segment_closer_than, sq_dist
from .instance import (
    Agent,
    Instance,
    Move,
    Solution,
    ValidationReport,
    Vertex,
    apply_move,
    edge_conflict_free,
    undo_move,
    validate,
    vertex_conflict_free,
)
from .reduction import ReductionMeta, audit, reduce
from .solver import SolveResult, solvable_verdict, solve_bfs
from .witness import extract, plan, synthesize

__all__ = [
    "Agent",
    "Formula3CNF",
    "Instance",
    "Literal",
    "Move",
    "Point",
    "ReductionMeta",
    "Segment",
    "Solution",
    "SolveResult",
    "ValidationReport",
    "Vertex",
    "apply_move",
    "audit",
    "brute_force_sat",
    "edge_conflict_free",
    "evaluate",
    "extract",
    "parse_dimacs",
    "plan",
    "point_segment_closer_than",
    "reduce",
    "render_dimacs",
    "solvable_verdict",
    "solve_bfs",
    "sq_dist",
    "synthesize",
    "undo_move",
    "validate",
    "vertex_conflict_free",
]
