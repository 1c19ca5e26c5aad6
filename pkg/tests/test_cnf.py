import random

import pytest

import apsat.cnf as cnf_mod
from apsat.cnf import (
    CnfModel,
    arc_map_comments,
    build_dap_cnf,
    export_dimacs,
    forbid_subcycle,
    sat_solve,
)
from apsat.graph import DirectedGraph, gen_random
from apsat.oracle import brute_force_oracle
from apsat.sat import SatStatus

from conftest import complete_digraph, random_graph
from reference_impls import naive_dpll, parse_dimacs, perm_cover_stats


@pytest.fixture(autouse=True)
def verify_models(monkeypatch):
    monkeypatch.setattr(cnf_mod, "VERIFY_MODELS", True)


def count_models(model: CnfModel, limit: int = 100_000) -> int:
    """Count satisfying arc assignments by solve, block the exact model, repeat."""
    count = 0
    while count < limit:
        outcome = sat_solve(model)
        if outcome.status is SatStatus.UNSAT:
            return count
        assert outcome.status is SatStatus.SAT
        count += 1
        chosen = outcome.chosen_arcs()
        model.add_clause([-model.arc_var[a] for a in chosen])
    raise AssertionError("model count limit hit")


class TestEncodingShape:
    def test_clause_count_formula(self):
        # every exactly-one constraint over d arcs contributes 4d - 1 clauses
        rng = random.Random(3)
        for _ in range(25):
            g = random_graph(rng, rng.randint(2, 7))
            degs = [g.out_degree(u) for u in range(1, g.n + 1)]
            degs += [g.in_degree(v) for v in range(1, g.n + 1)]
            if any(d == 0 for d in degs):
                continue
            model = build_dap_cnf(g)
            assert len(model.clauses) == sum(4 * d - 1 for d in degs)
            assert model.num_vars == g.m + sum(degs)
            assert len(model.arc_var) == g.m

    def test_degree_three_constraint_is_eleven_clauses(self):
        # vertex 1 has out-degree 3; isolate its constraint's clause count
        g = DirectedGraph(4, frozenset([(1, 2), (1, 3), (1, 4), (2, 1), (3, 1), (4, 1)]))
        model = build_dap_cnf(g)
        degs = [3, 1, 1, 1, 3, 1, 1, 1]
        assert len(model.clauses) == sum(4 * d - 1 for d in degs)
        assert sum(4 * d - 1 for d in [3]) == 11

    def test_degree_one_forces_arc(self, two_triangles):
        model = build_dap_cnf(two_triangles)
        # 12 constraints, each over a single arc: 3 clauses apiece
        assert len(model.clauses) == 12 * 3
        outcome = sat_solve(model)
        assert outcome.status is SatStatus.SAT
        assert all(outcome.assignment[a] for a in two_triangles.arcs)

    def test_variable_numbering_fixed(self):
        g = DirectedGraph(3, frozenset([(1, 2), (2, 3), (3, 1)]))
        model = build_dap_cnf(g)
        assert model.arc_var == {(1, 2): 1, (2, 3): 2, (3, 1): 3}
        # chains: out-constraints of 1..3, then in-constraints of 1..3
        assert model.aux_vars == [[4], [5], [6], [7], [8], [9]]
        assert model.num_vars == 9

    def test_degenerate_vertex_trivially_unsat(self):
        g = DirectedGraph(3, frozenset([(1, 2), (2, 1), (1, 3)]))  # vertex 3: no out-arc
        model = build_dap_cnf(g)
        assert model.trivially_unsat
        assert len(model.arc_var) == 3
        flag = model.num_vars
        assert model.clauses == [[flag], [-flag]]
        assert sat_solve(model).status is SatStatus.UNSAT


class TestSemantics:
    def test_two_triangles_unique_model(self, two_triangles):
        assert count_models(build_dap_cnf(two_triangles)) == 1

    def test_model_count_equals_cover_count_exhaustive_n3(self):
        pairs = [(u, v) for u in range(1, 4) for v in range(1, 4) if u != v]
        for bits in range(1 << 6):
            g = DirectedGraph(3, frozenset(p for i, p in enumerate(pairs) if bits >> i & 1))
            covers, _ = perm_cover_stats(g)
            assert count_models(build_dap_cnf(g)) == covers

    def test_model_count_random(self):
        rng = random.Random(808)
        for _ in range(300):
            g = random_graph(rng, rng.randint(2, 6))
            expected = brute_force_oracle(g).cover_count
            assert count_models(build_dap_cnf(g)) == expected, g

    def test_sat_iff_cover_exists(self):
        rng = random.Random(909)
        for _ in range(300):
            g = random_graph(rng, rng.randint(2, 6))
            status = sat_solve(build_dap_cnf(g)).status
            assert (status is SatStatus.SAT) == (brute_force_oracle(g).cover_count > 0)

    def test_exactly_one_per_constraint(self):
        rng = random.Random(111)
        checked = 0
        while checked < 50:
            g = random_graph(rng, rng.randint(3, 7))
            model = build_dap_cnf(g)
            if model.trivially_unsat:
                continue
            outcome = sat_solve(model)
            if outcome.status is not SatStatus.SAT:
                continue
            checked += 1
            chosen = set(outcome.chosen_arcs())
            for u in range(1, g.n + 1):
                assert sum(1 for a in chosen if a[0] == u) == 1
                assert sum(1 for a in chosen if a[1] == u) == 1

    def test_chain_variables_are_prefix_or(self):
        g = complete_digraph(4)
        model = build_dap_cnf(g)
        outcome = sat_solve(model)
        assert outcome.status is SatStatus.SAT
        values = model._solver.model()
        arcs_sorted = g.sorted_arcs()
        out_groups = model.aux_vars[: g.n]
        for u in range(1, g.n + 1):
            ys = [model.arc_var[a] for a in arcs_sorted if a[0] == u]
            zs = out_groups[u - 1]
            prefix = False
            for y, z in zip(ys, zs):
                prefix = prefix or values[y] > 0
                assert (values[z] > 0) == prefix
            assert values[zs[-1]] > 0


class TestForbidSubcycle:
    def test_two_cycle_clause_shape(self):
        g = DirectedGraph(2, frozenset([(1, 2), (2, 1)]))
        model = build_dap_cnf(g)
        before = len(model.clauses)
        forbid_subcycle(model, (1, 2))
        assert model.clauses[-1] == [-model.arc_var[(1, 2)], -model.arc_var[(2, 1)]]
        assert len(model.clauses) == before + 1

    def test_blocking_the_unique_cover_gives_unsat(self, two_triangles):
        model = build_dap_cnf(two_triangles)
        forbid_subcycle(model, (1, 2, 3))
        assert sat_solve(model).status is SatStatus.UNSAT

    def test_blocking_absent_cycle_keeps_count(self):
        g = DirectedGraph(
            6,
            frozenset(
                [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (4, 1)]
            ),
        )
        base = count_models(build_dap_cnf(g))
        model = build_dap_cnf(g)
        forbid_subcycle(model, (1, 4))  # in E, but in no cover
        assert count_models(model) == base

    def test_removes_exactly_covers_containing_cycle(self):
        rng = random.Random(321)
        tested = 0
        while tested < 40:
            g = random_graph(rng, rng.randint(3, 6))
            model = build_dap_cnf(g)
            if model.trivially_unsat:
                continue
            outcome = sat_solve(model)
            if outcome.status is not SatStatus.SAT:
                continue
            # pick the first cycle of the found cover
            chosen = dict(outcome.chosen_arcs())
            start = min(chosen)
            cycle = [start]
            v = chosen[start]
            while v != start:
                cycle.append(v)
                v = chosen[v]
            cycle = tuple(cycle)
            before = count_models(build_dap_cnf(g))
            blocked_model = build_dap_cnf(g)
            forbid_subcycle(blocked_model, cycle)
            after = count_models(blocked_model)
            containing = _covers_containing(g, cycle)
            assert before - after == containing
            tested += 1

    def test_rejects_non_arc(self):
        g = DirectedGraph(3, frozenset([(1, 2), (2, 3), (3, 1)]))
        model = build_dap_cnf(g)
        with pytest.raises(ValueError):
            forbid_subcycle(model, (1, 3))
        with pytest.raises(ValueError):
            forbid_subcycle(model, (1,))


def _covers_containing(g: DirectedGraph, cycle: tuple[int, ...]) -> int:
    from itertools import permutations

    wanted = {(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    count = 0
    for perm in permutations(range(1, g.n + 1)):
        arcs = {(i, perm[i - 1]) for i in range(1, g.n + 1)}
        if any(u == v for u, v in arcs):
            continue
        if not arcs <= g.arcs:
            continue
        if wanted <= arcs:
            count += 1
    return count


class TestDimacs:
    def test_tiny_model_exact_text(self):
        model = CnfModel(n=1, num_vars=1, clauses=[[1]], arc_var={}, aux_vars=[])
        assert export_dimacs(model) == "p cnf 1 1\n1 0\n"

    def test_header_matches_body(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 6))
            model = build_dap_cnf(g)
            text = export_dimacs(model)
            num_vars, clauses = parse_dimacs(text)
            assert num_vars == model.num_vars
            assert clauses == model.clauses

    def test_differential_against_reference_solver(self):
        rng = random.Random(60)
        agreements = 0
        while agreements < 100:
            g = random_graph(rng, rng.randint(2, 5))
            model = build_dap_cnf(g)
            # sometimes block a few cycles so UNSAT instances appear too
            if not model.trivially_unsat and rng.random() < 0.5:
                outcome = sat_solve(model)
                if outcome.status is SatStatus.SAT:
                    chosen = dict(outcome.chosen_arcs())
                    start = min(chosen)
                    cycle = [start]
                    v = chosen[start]
                    while v != start:
                        cycle.append(v)
                        v = chosen[v]
                    forbid_subcycle(model, tuple(cycle))
            num_vars, clauses = parse_dimacs(export_dimacs(model))
            reference = naive_dpll(clauses, num_vars)
            mine = sat_solve(model)
            assert (mine.status is SatStatus.SAT) == (reference is not None)
            agreements += 1

    def test_arc_map_comments(self):
        g = DirectedGraph(3, frozenset([(1, 2), (2, 3), (3, 1)]))
        model = build_dap_cnf(g)
        lines = arc_map_comments(model)
        assert "c y 1 = arc (1,2)" in lines
        assert all(line.startswith("c") for line in lines)


class TestAuxBound:
    def test_aux_count_below_quadratic_bound(self):
        rng = random.Random(12)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 8))
            model = build_dap_cnf(g)
            if model.trivially_unsat:
                continue
            aux_total = sum(len(group) for group in model.aux_vars)
            assert aux_total == 2 * g.m
            assert aux_total <= 2 * g.n * g.n
