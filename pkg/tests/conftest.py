import random

import pytest

from lamapf.cnf import Formula3CNF
from lamapf.geometry import Point, sq_dist
from lamapf.instance import Agent, Instance, Vertex
from lamapf.reduction import reduce

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def example_formula():
    # (x1 | ~x2 | x3)
    return Formula3CNF.from_ints(3, [[1, -2, 3]])


@pytest.fixture
def example(example_formula):
    inst, meta = reduce(example_formula)
    return example_formula, inst, meta


def random_instance(rng, n_vertices=None, n_agents=None, size=12, max_radius=2):
    """Small random plane graph with conflict-free start and goal configurations."""
    for _ in range(1000):
        nv = n_vertices or rng.randint(4, 8)
        k = n_agents or rng.randint(1, 3)
        pts = set()
        while len(pts) < nv:
            pts.add((rng.randint(0, size), rng.randint(0, size)))
        pts = sorted(pts)
        rng.shuffle(pts)
        radius = rng.randint(1, max_radius)
        edges = set()
        for v in range(1, nv):
            edges.add((rng.randrange(v), v))
        for _ in range(rng.randint(0, nv)):
            u, w = rng.sample(range(nv), 2)
            edges.add((min(u, w), max(u, w)))
        start = _spread(rng, pts, k, radius)
        goal = _spread(rng, pts, k, radius)
        if start is None or goal is None:
            continue
        verts = tuple(Vertex(i, f"v{i}", Point(*p)) for i, p in enumerate(pts))
        agents = tuple(Agent(a, f"a{a}", start[a], goal[a]) for a in range(k))
        return Instance(verts, frozenset(edges), radius, agents)
    raise RuntimeError("could not sample an instance")


def _spread(rng, pts, k, radius):
    order = list(range(len(pts)))
    rng.shuffle(order)
    chosen = []
    for v in order:
        if all(sq_dist(pts[v], pts[u]) >= (2 * radius) ** 2 for u in chosen):
            chosen.append(v)
            if len(chosen) == k:
                return chosen
    return None


def random_formula(rng, n, m, width=3, distinct=True):
    clauses = []
    for _ in range(m):
        if distinct:
            lits = rng.sample([(v, s) for v in range(1, n + 1) for s in (1, -1)], min(width, 2 * n))
            clauses.append([v * s for v, s in lits])
        else:
            clauses.append([rng.choice((1, -1)) * rng.randint(1, n) for _ in range(width)])
    return Formula3CNF.from_ints(n, clauses)


@pytest.fixture
def rng():
    return random.Random(20241014)
