import itertools
import random
from collections import deque

import pytest

from conftest import random_formula
from lamapf.cnf import Formula3CNF
from lamapf.geometry import sq_dist
from lamapf.instance import Agent, dumps, vertex_conflict_free
from lamapf.reduction import AuditError, ReductionMeta, audit, reduce


def test_example_sizes(example):
    _, inst, meta = example
    assert len(inst.vertices) == 24  # 5n + 8m + 1
    assert len(inst.agents) == 8  # 2n + m + 1
    assert inst.radius == meta.r == 1


def test_example_coordinates(example):
    _, inst, meta = example
    pos = {v.label: tuple(v.pos) for v in inst.vertices}
    # hand-evaluated with n=3, m=1
    assert pos["A_1"] == (3, 1)
    assert pos["B_1"] == (3, 24)
    assert pos["C_1"] == (3, 3)
    assert pos["F_1^{x1}"] == (3, 4)
    assert pos["F_1^{~x2}"] == (6, 23)
    assert pos["F_1^{x3}"] == (9, 4)
    assert pos["L_1"] == (3, 0)
    assert pos["K"] == (0, 0)
    assert pos["H_1"] == (0, 3)
    assert pos["G_1"] == (0, 13)
    assert pos["E_1"] == (0, 14)
    assert pos["J_1"] == (0, 24)
    assert pos["J_3"] == (0, 30)
    assert pos["D_1"] == (0, 33)
    assert pos["I_1"] == (0, 37)


def test_example_blocking_distances(example):
    _, inst, meta = example
    p = inst.positions
    assert sq_dist(p[meta["C_1"]], p[meta["F_1^{x1}"]]) == 1
    assert sq_dist(p[meta["B_2"]], p[meta["F_1^{~x2}"]]) == 1


def test_emission_order(example):
    _, inst, _ = example
    labels = [v.label for v in inst.vertices]
    assert labels == ["A_1", "B_1", "C_1", "A_2", "B_2", "C_2", "A_3", "B_3", "C_3",
                      "D_1", "E_1", "F_1^{x1}", "F_1^{~x2}", "F_1^{x3}", "G_1", "H_1", "I_1",
                      "J_1", "J_2", "J_3", "K", "L_1", "L_2", "L_3"]
    assert [a.label for a in inst.agents] == ["v_1", "v_2", "v_3", "c_1", "b_1", "b_2", "b_3", "b_K"]


def test_audit_passes_on_three_literal_formulas():
    rng = random.Random(5)
    for _ in range(40):
        f = random_formula(rng, rng.randint(2, 9), rng.randint(1, 9))
        rep = audit(*reduce(f))
        assert rep.ok
        assert {name for name, _, _ in rep.checks} >= {
            "vertex_count", "agent_count", "variable_blocks_clause", "block_blocks_variable",
            "start_conflict_free", "goal_conflict_free", "positions_distinct"}


def test_deduplicated_single_literal_clause():
    f = Formula3CNF.from_ints(1, [[1, 1, 1]])
    inst, meta = reduce(f)
    assert len(inst.vertices) == 12  # two F vertices fewer than 5 + 8 + 1
    assert audit(inst, meta).ok


def test_minimum_start_spacing_is_column_width(example):
    _, inst, _ = example
    pos = [inst.positions[v] for v in inst.start]
    best = min(sq_dist(p, q) for p, q in itertools.combinations(pos, 2))
    assert best == 3 ** 2
    assert best > inst.threshold ** 2


def test_audit_names_failing_check(example):
    f, inst, meta = example
    names = dict(meta.names)
    names["L_1"], names["K"] = names["K"], names["L_1"]
    with pytest.raises(AuditError, match="block_blocks_variable"):
        audit(inst, ReductionMeta(meta.n, meta.m, names))
    with pytest.raises(AuditError, match="agent_count"):
        audit(inst.with_agents(inst.agents[:-1]), meta)


def test_deterministic_canonical_output():
    f = Formula3CNF.from_ints(4, [[1, -2, 3], [-4, 2, 1], [3, 4, -1]])
    a = dumps(reduce(f)[0].to_json())
    b = dumps(reduce(Formula3CNF.from_ints(4, [[1, -2, 3], [-4, 2, 1], [3, 4, -1]]))[0].to_json())
    assert a == b


def test_coordinates_nonnegative_and_bounded():
    rng = random.Random(6)
    for _ in range(30):
        f = random_formula(rng, rng.randint(2, 12), rng.randint(1, 12))
        inst, meta = reduce(f)
        top = inst.positions[meta[f"I_{f.m}"]].y
        for p in inst.positions:
            assert p.x >= 0 and 0 <= p.y <= top
            assert p.x <= (2 * f.m + 1) * f.num_vars


def _probe(inst, a, b):
    agents = (Agent(0, "p", a, a), Agent(1, "q", b, b))
    return inst.with_agents(agents, check_geometry=False), (a, b)


def test_blocking_pairs_conflict_and_opposite_pairs_free():
    rng = random.Random(8)
    for _ in range(20):
        f = random_formula(rng, rng.randint(2, 7), rng.randint(1, 7))
        inst, meta = reduce(f)
        for j, var, neg, fv in meta.f_vertices():
            blocked = meta[f"B_{var}"] if neg else meta[f"C_{var}"]
            passage = meta[f"C_{var}"] if neg else meta[f"B_{var}"]
            assert not vertex_conflict_free(*_probe(inst, blocked, fv))
            assert vertex_conflict_free(*_probe(inst, passage, fv))
        for i in range(1, f.num_vars + 1):
            assert not vertex_conflict_free(*_probe(inst, meta[f"A_{i}"], meta[f"L_{i}"]))


def _component(inst, v):
    seen = {v}
    todo = deque([v])
    while todo:
        u = todo.popleft()
        for w in inst.neighbors[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def test_gadgets_are_connected_and_separate():
    f = Formula3CNF.from_ints(3, [[1, -2, 3], [2, 3, -1]])
    inst, meta = reduce(f)
    gadgets = [{meta[f"{z}_{i}"] for z in "ABC"} for i in range(1, 4)]
    for j in (1, 2):
        gadgets.append({v for name, v in meta.names.items() if name.split("^")[0].endswith(f"_{j}")
                        and name[0] in "DEFGHI"})
    gadgets.append({v for name, v in meta.names.items() if name[0] in "JKL"})
    assert sorted(v for g in gadgets for v in g) == list(range(len(inst.vertices)))
    for g in gadgets:
        assert _component(inst, next(iter(g))) == g


def test_meta_json_round_trip(example):
    _, inst, meta = example
    assert ReductionMeta.from_json(meta.to_json()) == meta
    assert list(meta.to_json()) == ["n", "m", "names"]
    assert meta.f_vertices() == [(1, 1, False, 11), (1, 2, True, 12), (1, 3, False, 13)]
