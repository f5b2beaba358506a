import itertools
import random

import pytest

from conftest import random_formula, random_instance
from lamapf.cnf import Formula3CNF, Literal
from lamapf.instance import Agent, Instance, Move, Solution, Vertex, apply_move, edge_conflict_free, validate
from lamapf.reduction import reduce
from lamapf.solver import (
    AGREE,
    INCONCLUSIVE,
    LIMIT_EXCEEDED,
    SOLVED,
    UNSOLVABLE,
    blocking_masks,
    solvable_verdict,
    solve_bfs,
)
from lamapf.witness import extract


def test_single_forced_literal_is_solved():
    inst, meta = reduce(Formula3CNF.from_ints(1, [[1, 1, 1]]))
    res = solve_bfs(inst)
    assert res.verdict == SOLVED
    assert validate(inst, res.solution).accepted
    assert extract(inst, meta, res.solution) == (True,)


def test_contradiction_is_unsolvable():
    inst, _ = reduce(Formula3CNF.from_ints(1, [[1], [-1]]))
    res = solve_bfs(inst)
    assert res.verdict == UNSOLVABLE
    assert res.solution is None
    assert res.states_expanded > 0


def test_start_equals_goal():
    inst, _ = reduce(Formula3CNF.from_ints(1, [[1]]))
    stay = inst.with_agents(tuple(Agent(a.id, a.label, a.start, a.start) for a in inst.agents))
    res = solve_bfs(stay)
    assert (res.verdict, len(res.solution), res.states_expanded) == (SOLVED, 0, 0)


def test_state_limit():
    inst, _ = reduce(Formula3CNF.from_ints(3, [[1, -2, 3]]))
    assert solve_bfs(inst, max_states=5).verdict == LIMIT_EXCEEDED


def test_verdict_json():
    inst, _ = reduce(Formula3CNF.from_ints(1, [[1]]))
    data = solve_bfs(inst).to_json()
    assert list(data) == ["verdict", "states_expanded", "solution"]
    assert Solution.from_json(data["solution"]) == solve_bfs(inst).solution


def test_masks_match_instance_predicates():
    rng = random.Random(31)
    for _ in range(30):
        inst = random_instance(rng)
        succ = blocking_masks(inst)
        for u, row in enumerate(succ):
            for w, mask in row:
                for x in range(len(inst.vertices)):
                    if x == u:
                        continue
                    probe = inst.with_agents((Agent(0, "m", u, u), Agent(1, "s", x, x)), check_geometry=False)
                    blocked = not edge_conflict_free(probe, Move(0, u, w), (u, x))
                    assert bool(mask >> x & 1) == (blocked or x == w)


def _legal_moves(inst, cfg):
    for a, u in enumerate(cfg):
        for w in inst.neighbors[u]:
            if w in cfg:
                continue
            mv = Move(a, u, w)
            if edge_conflict_free(inst, mv, cfg):
                yield mv


def _reachable_within(inst, depth):
    """Every configuration reachable in at most ``depth`` transitions, by plain enumeration."""
    frontier = {inst.start}
    seen = {inst.start}
    for _ in range(depth):
        nxt = set()
        for cfg in frontier:
            for mv in _legal_moves(inst, cfg):
                c2 = apply_move(cfg, mv)
                nxt.add(c2)
        frontier = nxt
        seen |= nxt
    return seen


def test_bfs_length_is_minimal():
    rng = random.Random(32)
    checked = 0
    for _ in range(80):
        inst = random_instance(rng, n_agents=2, n_vertices=rng.randint(4, 6))
        res = solve_bfs(inst)
        if res.verdict != SOLVED or not 1 <= len(res.solution) <= 6:
            continue
        shorter = _reachable_within(inst, len(res.solution) - 1)
        assert inst.goal not in shorter
        checked += 1
    assert checked > 15


def test_unsolvable_random_instances_are_exhausted():
    rng = random.Random(33)
    seen = 0
    for _ in range(80):
        inst = random_instance(rng, n_agents=2, n_vertices=5)
        res = solve_bfs(inst)
        if res.verdict == UNSOLVABLE:
            assert inst.goal not in _reachable_within(inst, 30)
            seen += 1
    assert seen > 3


def _relabel_vertices(inst, perm):
    verts = [None] * len(inst.vertices)
    for v in inst.vertices:
        verts[perm[v.id]] = Vertex(perm[v.id], v.label, v.pos)
    edges = {(perm[u], perm[w]) for u, w in inst.edges}
    agents = [Agent(a.id, a.label, perm[a.start], perm[a.goal]) for a in inst.agents]
    return Instance(tuple(verts), frozenset(edges), inst.radius, tuple(agents))


def _permute_agents(inst, perm):
    agents = [None] * len(inst.agents)
    for a in inst.agents:
        agents[perm[a.id]] = Agent(perm[a.id], a.label, a.start, a.goal)
    return inst.with_agents(agents)


@pytest.mark.parametrize("clauses, n", [([[1], [-1]], 1), ([[1, -2, 2]], 2), ([[1, 2], [-1], [-2]], 2),
                                        ([[1, -2]], 2)])
def test_verdict_invariant_under_relabelling(clauses, n):
    rng = random.Random(34)
    inst, _ = reduce(Formula3CNF.from_ints(n, clauses))
    base = solve_bfs(inst)
    for _ in range(3):
        perm = list(range(len(inst.agents)))
        rng.shuffle(perm)
        assert solve_bfs(_permute_agents(inst, perm)).verdict == base.verdict
        vperm = list(range(len(inst.vertices)))
        rng.shuffle(vperm)
        res = solve_bfs(_relabel_vertices(inst, vperm))
        assert res.verdict == base.verdict
        if base.verdict == SOLVED:
            assert len(res.solution) == len(base.solution)


def test_agreement_on_all_single_clause_formulas_over_two_variables():
    lits = [Literal(v, s) for v in (1, 2) for s in (False, True)]
    for n in (1, 2):
        pool = [lit for lit in lits if lit.var <= n]
        for size in (1, 2, 3):
            for clause in itertools.combinations(pool, size):
                rec = solvable_verdict(Formula3CNF(n, (clause,)))
                assert rec.status == AGREE, (clause, rec)
                assert rec.sat and rec.bfs_verdict == SOLVED


def test_agreement_on_random_small_formulas():
    rng = random.Random(35)
    outcomes = set()
    for _ in range(40):
        n = rng.randint(1, 3)
        f = random_formula(rng, n, rng.randint(1, 4), width=rng.randint(1, 3), distinct=False)
        rec = solvable_verdict(f)
        assert rec.status == AGREE, (str(f), rec)
        outcomes.add(rec.sat)
    assert outcomes == {True, False}


def test_contradiction_agreement_record():
    rec = solvable_verdict(Formula3CNF.from_ints(1, [[1], [-1]]))
    assert (rec.status, rec.sat, rec.bfs_verdict) == (AGREE, False, UNSOLVABLE)
    assert rec.synthesized_accepted is None and rec.extracted is None


def test_limits_make_bfs_inconclusive_but_sat_side_runs():
    rec = solvable_verdict(Formula3CNF.from_ints(3, [[1, -2, 3]]), max_states=10)
    assert rec.status == INCONCLUSIVE
    assert rec.bfs_verdict == LIMIT_EXCEEDED
    assert rec.sat and rec.synthesized_accepted is True
    assert rec.to_json()["status"] == "INCONCLUSIVE"
