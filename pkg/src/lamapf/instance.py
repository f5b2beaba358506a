"""LA-MAPF instances, single-agent transitions and the solution validator.

Agents are disks of one common radius ``r`` whose centres sit on vertices of
a plane-embedded graph.  Exactly one agent moves per transition.  Two agents
conflict when their centres are closer than ``2r`` (vertex conflict) or when
the mover's segment passes closer than ``2r`` to a stationary centre (edge
conflict).  Distances equal to ``2r`` are allowed.
"""

from __future__ import annotations

import json
from dataclasses import InitVar, dataclass, field
from functools import cached_property
from typing import NamedTuple

from .geometry import Point, point_segment_closer_than, sq_dist


class InstanceError(ValueError):
    """The instance data violates a structural or geometric invariant."""


class ConfigurationError(ValueError):
    """A configuration is malformed (not injective, or refers to unknown vertices)."""


class IllegalMove(ValueError):
    """A move's precondition does not hold for the given configuration."""


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str
    pos: Point


@dataclass(frozen=True)
class Agent:
    id: int
    label: str
    start: int
    goal: int


class Move(NamedTuple):
    agent: int
    src: int
    dst: int

    def reversed(self):
        return Move(self.agent, self.dst, self.src)


@dataclass(frozen=True)
class Solution:
    moves: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(Move(*mv) for mv in self.moves))

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def reversed(self):
        return Solution(tuple(mv.reversed() for mv in reversed(self.moves)))

    def to_json(self):
        return {"moves": [{"agent": a, "from": u, "to": v} for a, u, v in self.moves]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or not isinstance(data.get("moves"), list):
            raise ValueError("solution must be an object with a 'moves' list")
        moves = []
        for k, mv in enumerate(data["moves"]):
            if not isinstance(mv, dict) or set(mv) != {"agent", "from", "to"}:
                raise ValueError(f"move {k}: expected keys agent/from/to")
            moves.append(Move(_int(mv["agent"], f"move {k} agent"),
                              _int(mv["from"], f"move {k} from"),
                              _int(mv["to"], f"move {k} to")))
        return cls(tuple(moves))


def _int(value, what):
    # bool is an int subclass; JSON true/false must not pass as 0/1
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Instance:
    vertices: tuple
    edges: frozenset
    radius: int
    agents: tuple
    check_geometry: InitVar[bool] = True

    def __post_init__(self, check_geometry):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "edges", frozenset(tuple(sorted(e)) for e in self.edges))
        if isinstance(self.radius, bool) or not isinstance(self.radius, int) or self.radius <= 0:
            raise InstanceError(f"radius must be a positive integer, got {self.radius!r}")
        nv = len(self.vertices)
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise InstanceError(f"vertex ids must be 0..{nv - 1} in order; position {i} has id {v.id}")
            if not all(isinstance(c, int) and not isinstance(c, bool) for c in v.pos):
                raise InstanceError(f"vertex {v.label} has non-integer coordinates {v.pos}")
        if len({v.label for v in self.vertices}) != nv:
            raise InstanceError("vertex labels must be unique")
        if len({tuple(v.pos) for v in self.vertices}) != nv:
            raise InstanceError("vertex positions must be pairwise distinct")
        for u, w in self.edges:
            if u == w:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < nv and 0 <= w < nv):
                raise InstanceError(f"edge ({u}, {w}) refers to unknown vertex")
        for i, a in enumerate(self.agents):
            if a.id != i:
                raise InstanceError(f"agent ids must be 0..{len(self.agents) - 1} in order")
            if not (0 <= a.start < nv and 0 <= a.goal < nv):
                raise InstanceError(f"agent {a.label} starts or ends at an unknown vertex")
        if len(set(self.start)) != len(self.agents):
            raise InstanceError("start vertices must be pairwise distinct")
        if len(set(self.goal)) != len(self.agents):
            raise InstanceError("goal vertices must be pairwise distinct")
        if check_geometry:
            for name, cfg in (("start", self.start), ("goal", self.goal)):
                pair = first_vertex_conflict(self, cfg)
                if pair is not None:
                    i, j = pair
                    raise InstanceError(
                        f"{name} configuration overlaps: agents {self.agents[i].label} and {self.agents[j].label}")

    @property
    def threshold(self):
        return 2 * self.radius

    @cached_property
    def start(self):
        return tuple(a.start for a in self.agents)

    @cached_property
    def goal(self):
        return tuple(a.goal for a in self.agents)

    @cached_property
    def positions(self):
        return tuple(v.pos for v in self.vertices)

    @cached_property
    def neighbors(self):
        adj = [[] for _ in self.vertices]
        for u, w in sorted(self.edges):
            adj[u].append(w)
            adj[w].append(u)
        return tuple(tuple(sorted(ns)) for ns in adj)

    @cached_property
    def by_label(self):
        return {v.label: v.id for v in self.vertices}

    def has_edge(self, u, w):
        return (min(u, w), max(u, w)) in self.edges

    def scaled(self, c):
        """Same instance with every coordinate and the radius multiplied by ``c``."""
        verts = tuple(Vertex(v.id, v.label, Point(v.pos.x * c, v.pos.y * c)) for v in self.vertices)
        return Instance(verts, self.edges, self.radius * c, self.agents)

    def swapped(self):
        """Start and goal configurations exchanged."""
        agents = tuple(Agent(a.id, a.label, a.goal, a.start) for a in self.agents)
        return Instance(self.vertices, self.edges, self.radius, agents)

    def with_agents(self, agents, check_geometry=True):
        return Instance(self.vertices, self.edges, self.radius, tuple(agents), check_geometry)

    def to_json(self):
        return {
            "radius": self.radius,
            "vertices": [{"id": v.id, "label": v.label, "x": v.pos.x, "y": v.pos.y} for v in self.vertices],
            "edges": [list(e) for e in sorted(self.edges)],
            "agents": [{"id": a.id, "label": a.label, "start": a.start, "goal": a.goal} for a in self.agents],
        }

    @classmethod
    def from_json(cls, data, check_geometry=True):
        if not isinstance(data, dict):
            raise InstanceError("instance must be a JSON object")
        for key in ("radius", "vertices", "edges", "agents"):
            if key not in data:
                raise InstanceError(f"instance is missing {key!r}")
        radius = _int(data["radius"], "radius")
        vertices = []
        for k, v in enumerate(data["vertices"]):
            if not isinstance(v, dict):
                raise InstanceError(f"vertex {k} must be an object")
            vertices.append(Vertex(_int(v.get("id"), f"vertex {k} id"), str(v.get("label", "")),
                                   Point(_int(v.get("x"), f"vertex {k} x"), _int(v.get("y"), f"vertex {k} y"))))
        vertices.sort(key=lambda v: v.id)
        edges = []
        for e in data["edges"]:
            if not isinstance(e, list) or len(e) != 2:
                raise InstanceError(f"edge {e!r} must be a pair")
            edges.append((_int(e[0], "edge endpoint"), _int(e[1], "edge endpoint")))
        agents = []
        for k, a in enumerate(data["agents"]):
            if not isinstance(a, dict):
                raise InstanceError(f"agent {k} must be an object")
            if "radius" in a:
                raise InstanceError("per-agent radii are not supported; use the instance radius")
            agents.append(Agent(_int(a.get("id"), f"agent {k} id"), str(a.get("label", f"a{k}")),
                                _int(a.get("start"), f"agent {k} start"), _int(a.get("goal"), f"agent {k} goal")))
        agents.sort(key=lambda a: a.id)
        return cls(tuple(vertices), frozenset(edges), radius, tuple(agents), check_geometry)


def dumps(obj):
    """Canonical JSON text: key order as constructed, no whitespace, trailing newline."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def _check_configuration(inst, cfg):
    nv = len(inst.vertices)
    if len(cfg) != len(inst.agents):
        raise ConfigurationError(f"configuration places {len(cfg)} agents, instance has {len(inst.agents)}")
    for v in cfg:
        if not (isinstance(v, int) and 0 <= v < nv):
            raise ConfigurationError(f"unknown vertex {v!r} in configuration")
    if len(set(cfg)) != len(cfg):
        raise ConfigurationError("configuration is not injective")


def _sq_threshold(inst, threshold):
    t = inst.threshold if threshold is None else threshold
    return t * t


def first_vertex_conflict(inst, cfg, threshold=None):
    """Lowest (i, j) pair of agents whose centres are closer than the threshold, or None."""
    t2 = _sq_threshold(inst, threshold)
    pos = [inst.vertices[v].pos for v in cfg]
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if sq_dist(pos[i], pos[j]) < t2:
                return i, j
    return None


def vertex_conflict_free(inst, cfg, threshold=None):
    _check_configuration(inst, cfg)
    return first_vertex_conflict(inst, cfg, threshold) is None


def _edge_blockers(inst, move, cfg, threshold):
    t = inst.threshold if threshold is None else threshold
    if t <= 0:
        return
    pos = inst.positions
    seg = (pos[move.src], pos[move.dst])
    for j, v in enumerate(cfg):
        if j != move.agent and point_segment_closer_than(pos[v], seg, t):
            yield j


def edge_conflict_free(inst, move, cfg, threshold=None):
    """True iff no stationary agent lies within the threshold of the mover's segment.

    ``cfg`` is the configuration before the move.
    """
    _check_configuration(inst, cfg)
    if not inst.has_edge(move.src, move.dst):
        raise IllegalMove(f"({move.src}, {move.dst}) is not an edge")
    if cfg[move.agent] != move.src:
        raise IllegalMove(f"agent {move.agent} is not at vertex {move.src}")
    return next(_edge_blockers(inst, move, cfg, threshold), None) is None


def apply_move(cfg, move):
    if cfg[move.agent] != move.src:
        raise IllegalMove(f"agent {move.agent} is at {cfg[move.agent]}, not {move.src}")
    out = list(cfg)
    out[move.agent] = move.dst
    return tuple(out)


def undo_move(cfg, move):
    if cfg[move.agent] != move.dst:
        raise IllegalMove(f"agent {move.agent} is at {cfg[move.agent]}, not {move.dst}")
    out = list(cfg)
    out[move.agent] = move.src
    return tuple(out)


ACCEPT = "ACCEPT"
REJECT = "REJECT"


@dataclass(frozen=True)
class ValidationReport:
    verdict: str
    step: int | None = None
    kind: str | None = None
    detail: str = ""
    agents: tuple = field(default=())
    vertices: tuple = field(default=())

    @property
    def accepted(self):
        return self.verdict == ACCEPT

    def to_json(self):
        return {"verdict": self.verdict, "step": self.step, "kind": self.kind, "detail": self.detail}


def _reject(step, kind, detail, agents=(), vertices=()):
    return ValidationReport(REJECT, step, kind, detail, tuple(sorted(agents)), tuple(vertices))


def validate(inst, sol, threshold=None):
    """Replay ``sol`` from the start configuration and report the first violation.

    Step 0 is the start configuration; move ``k`` (0-based) produces step
    ``k + 1``.  ``threshold`` overrides ``2r`` and exists for testing only.
    """
    t2 = _sq_threshold(inst, threshold)
    labels = [v.label for v in inst.vertices]
    alabel = [a.label for a in inst.agents]
    pair = first_vertex_conflict(inst, inst.start, threshold)
    if pair is not None:
        return _reject(0, "VERTEX_CONFLICT", f"start configuration overlaps: {alabel[pair[0]]} and {alabel[pair[1]]}",
                       pair, (inst.start[pair[0]], inst.start[pair[1]]))
    pos = inst.positions
    cfg = list(inst.start)
    occupant = {v: i for i, v in enumerate(cfg)}
    k = len(cfg)
    nv = len(pos)
    for step, mv in enumerate(sol.moves, start=1):
        a, u, w = mv
        if not (isinstance(a, int) and 0 <= a < k):
            return _reject(step, "MALFORMED", f"unknown agent {a!r}")
        if not (isinstance(w, int) and 0 <= w < nv):
            return _reject(step, "MALFORMED", f"unknown vertex {w!r}", (a,))
        if cfg[a] != u:
            return _reject(step, "MALFORMED",
                           f"move says {alabel[a]} leaves {u}, but it is at {labels[cfg[a]]}", (a,), (cfg[a],))
        if not inst.has_edge(u, w):
            return _reject(step, "EDGE_MISSING", f"no edge {labels[u]} - {labels[w]}", (a,), (u, w))
        if w in occupant:
            b = occupant[w]
            return _reject(step, "VERTEX_CONFLICT", f"{alabel[a]} moves onto {labels[w]} occupied by {alabel[b]}",
                           (a, b), (w,))
        pw = pos[w]
        for b in range(k):
            if b != a and sq_dist(pw, pos[cfg[b]]) < t2:
                return _reject(step, "VERTEX_CONFLICT",
                               f"{alabel[a]} at {labels[w]} overlaps {alabel[b]} at {labels[cfg[b]]}",
                               (a, b), (w, cfg[b]))
        b = next(_edge_blockers(inst, mv, cfg, threshold), None)
        if b is not None:
            return _reject(step, "EDGE_CONFLICT",
                           f"{alabel[a]} moving {labels[u]} -> {labels[w]} sweeps {alabel[b]} at {labels[cfg[b]]}",
                           (a, b), (u, w, cfg[b]))
        del occupant[u]
        occupant[w] = a
        cfg[a] = w
    if tuple(cfg) != inst.goal:
        wrong = [i for i in range(k) if cfg[i] != inst.goal[i]]
        return _reject(len(sol.moves), "GOAL_MISMATCH",
                       f"{len(wrong)} agent(s) off goal, first {alabel[wrong[0]]} at {labels[cfg[wrong[0]]]}",
                       tuple(wrong), tuple(cfg[i] for i in wrong))
    return ValidationReport(ACCEPT, None, None, f"{len(sol.moves)} moves, all conflict-free")


def replay(inst, sol):
    """Configurations visited by ``sol`` (start included); no conflict checking."""
    cfg = inst.start
    out = [cfg]
    for mv in sol.moves:
        cfg = apply_move(cfg, mv)
        out.append(cfg)
    return out
