"""Compile a 3-CNF formula into an LA-MAPF instance.

Three gadget families are laid out with integer coordinates and radius
``r = m`` (the number of clauses):

* variable gadget ``i``: vertices A_i, B_i, C_i in column ``x = (2m+1)i``;
  the v-agent sits on A_i and encodes ``x_i`` by parking on B_i (true) or
  C_i (false);
* clause gadget ``j``: the path D_j - E_j - {F_j^lit} - G_j - H_j - I_j in
  column ``x = 0`` except for the F vertices, which sit in the column of
  their literal's variable, just above C_i (positive) or just below B_i
  (negative); the c-agent travels from D_j to I_j;
* blocking gadget: the path J_n ... J_1 - K - L_1 ... L_n carrying n + 1
  b-agents that must vacate the J zone before any c-agent can pass it.

Vertex labels start with their zone letter (A..L).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import geometry
from .geometry import Point
from .instance import Agent, Instance, Vertex, first_vertex_conflict


class AuditError(AssertionError):
    """A structural property of a reduced instance failed; always an implementation bug."""


def f_name(j, lit):
    return f"F_{j}^{{{'~' if lit.negated else ''}x{lit.var}}}"


def zone(label):
    return label[0]


@dataclass(frozen=True)
class ReductionMeta:
    n: int
    m: int
    names: dict = field(compare=True)

    @property
    def r(self):
        return self.m

    def __getitem__(self, name):
        return self.names[name]

    def f_vertices(self):
        """``(j, var, negated, vertex id)`` for every emitted F vertex, in id order."""
        out = []
        for name, vid in self.names.items():
            if not name.startswith("F_"):
                continue
            j, lit = name[2:].split("^", 1)
            lit = lit.strip("{}")
            neg = lit.startswith("~")
            out.append((int(j), int(lit.lstrip("~x")), neg, vid))
        return sorted(out, key=lambda t: t[3])

    def to_json(self):
        return {"n": self.n, "m": self.m, "names": dict(self.names)}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or not {"n", "m", "names"} <= set(data):
            raise ValueError("meta must be an object with n, m and names")
        names = data["names"]
        if not isinstance(names, dict) or not all(isinstance(v, int) for v in names.values()):
            raise ValueError("meta names must map labels to vertex ids")
        return cls(int(data["n"]), int(data["m"]), dict(names))


def coordinates(n, m):
    """Closed-form positions of every non-F vertex, keyed by name."""
    w = 2 * m + 1
    pts = {}
    for i in range(1, n + 1):
        x = w * i
        pts[f"A_{i}"] = (x, 1)
        pts[f"B_{i}"] = (x, 4 * m * m * n + 2 * m * m + 2 * m * n + 5 * m - 1)
        pts[f"C_{i}"] = (x, 2 * m * m + m)
    for j in range(1, m + 1):
        pts[f"D_{j}"] = (0, w * j + 4 * m * m * n + 2 * m * m + 4 * m * n + 3 * m + n - 2)
        pts[f"E_{j}"] = (0, j + 2 * m * m * n + 2 * m * m + m * n + 3 * m - 1)
        pts[f"G_{j}"] = (0, j + 2 * m * m * n + 2 * m * m + m * n + 2 * m - 1)
        pts[f"H_{j}"] = (0, w * j)
        pts[f"I_{j}"] = (0, w * j + 4 * m * m * n + 4 * m * m + 4 * m * n + 5 * m + n - 2)
    for i in range(1, n + 1):
        pts[f"J_{i}"] = (0, w * i + 4 * m * m * n + 2 * m * m + 2 * m * n + 3 * m - 2)
        pts[f"L_{i}"] = (w * i, 0)
    pts["K"] = (0, 0)
    return pts


def f_coordinate(n, m, j, lit):
    x = (2 * m + 1) * lit.var
    if lit.negated:
        return (x, j + 4 * m * m * n + 2 * m * m + 2 * m * n + 3 * m - 1)
    return (x, j + 2 * m * m + 2 * m - 1)


def reduce(f):
    """Return ``(instance, meta)`` for formula ``f``.

    Vertex ids follow emission order: variable gadgets by i, clause gadgets
    by j (F vertices in clause literal order), then the blocking gadget.
    Agents are v_1..v_n, c_1..c_m, then b_1..b_n (on J_i) and b_K (on K).
    """
    n, m = f.num_vars, f.m
    pts = coordinates(n, m)
    vertices = []
    names = {}

    def add(name, xy=None):
        vid = len(vertices)
        vertices.append(Vertex(vid, name, Point(*(pts[name] if xy is None else xy))))
        names[name] = vid
        return vid

    edges = set()
    agents = []

    def agent(label, start, goal):
        agents.append(Agent(len(agents), label, start, goal))

    for i in range(1, n + 1):
        a, b, c = add(f"A_{i}"), add(f"B_{i}"), add(f"C_{i}")
        edges |= {(a, b), (a, c)}
    for j, clause in enumerate(f.clauses, start=1):
        d, e = add(f"D_{j}"), add(f"E_{j}")
        fs = [add(f_name(j, lit), f_coordinate(n, m, j, lit)) for lit in clause]
        g, h, i_ = add(f"G_{j}"), add(f"H_{j}"), add(f"I_{j}")
        edges.add((d, e))
        for fv in fs:
            edges |= {(e, fv), (fv, g)}
        edges |= {(g, h), (h, i_)}
    js = [add(f"J_{i}") for i in range(1, n + 1)]
    k = add("K")
    ls = [add(f"L_{i}") for i in range(1, n + 1)]
    for i in range(n - 1):
        edges |= {(js[i + 1], js[i]), (ls[i], ls[i + 1])}
    edges |= {(js[0], k), (k, ls[0])}

    for i in range(1, n + 1):
        agent(f"v_{i}", names[f"A_{i}"], names[f"A_{i}"])
    for j in range(1, m + 1):
        agent(f"c_{j}", names[f"D_{j}"], names[f"I_{j}"])
    for i in range(1, n + 1):
        agent(f"b_{i}", js[i - 1], js[i - 1])
    agent("b_K", k, k)

    inst = Instance(tuple(vertices), frozenset(edges), m, tuple(agents))
    return inst, ReductionMeta(n, m, names)


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self):
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def expected_vertex_count(n, m, f_count):
    """Vertex count with one F vertex per distinct literal (``5n + 8m + 1`` when every clause has three)."""
    return 5 * n + 8 * m + 1 - (3 * m - f_count)


def audit(inst, meta):
    """Check the size counts and blocking distances of a reduced instance.

    Raises :class:`AuditError` naming every failed check; returns the report
    otherwise.
    """
    n, m = meta.n, meta.m
    rep = AuditReport()
    fvs = meta.f_vertices()
    pos = inst.positions

    def dist2(a, b):
        return geometry.sq_dist(pos[meta.names[a]], pos[b if isinstance(b, int) else meta.names[b]])

    want_v = expected_vertex_count(n, m, len(fvs))
    rep.add("vertex_count", len(inst.vertices) == want_v, f"{len(inst.vertices)} vs expected {want_v}")
    want_a = 2 * n + m + 1
    rep.add("agent_count", len(inst.agents) == want_a, f"{len(inst.agents)} vs expected {want_a}")
    rep.add("radius", inst.radius == m, f"r={inst.radius}, m={m}")
    rep.add("names_bijective",
            sorted(meta.names.values()) == list(range(len(inst.vertices)))
            and all(inst.vertices[v].label == name for name, v in meta.names.items()),
            f"{len(meta.names)} names for {len(inst.vertices)} vertices")

    bad = []
    for j, var, neg, vid in fvs:
        if neg:
            got, want = dist2(f"B_{var}", vid), (2 * m - j) ** 2
        else:
            got, want = dist2(f"C_{var}", vid), (j + m - 1) ** 2
        if got != want:
            bad.append(f"{inst.vertices[vid].label}: squared distance {got}, expected {want}")
    rep.add("variable_blocks_clause", not bad, "; ".join(bad) or f"{len(fvs)} F vertices")

    bad = [i for i in range(1, n + 1) if dist2(f"A_{i}", f"L_{i}") != 1]
    rep.add("block_blocks_variable", not bad, f"bad columns {bad}" if bad else f"{n} columns")

    for name, cfg in (("start_conflict_free", inst.start), ("goal_conflict_free", inst.goal)):
        pair = first_vertex_conflict(inst, cfg)
        rep.add(name, pair is None, "" if pair is None else f"agents {pair}")

    rep.add("positions_distinct", len(set(pos)) == len(pos), f"{len(set(pos))} of {len(pos)}")

    if not rep.ok:
        raise AuditError("audit failed: " + ", ".join(f"{n_} ({d})" for n_, d in rep.failures))
    return rep
