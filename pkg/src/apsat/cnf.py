"""CNF formulation of the cycle-cover problem, plus cycle-blocking clauses.

One Boolean arc variable per graph arc. For every vertex, two exactly-one
constraints (over its outgoing arcs and over its incoming arcs) are encoded
with a sequential chain of fresh auxiliary variables: the k-th chain variable
says "one of the first k arc variables is true", pairwise exclusion rides on
the chain, and the last chain variable is forced true. Satisfying assignments
restricted to the arc variables are exactly the cycle covers of the graph.

Variable numbering is fixed so DIMACS exports are reproducible: arc variables
first, in sorted (u, v) order, then chain variables for the out-constraints of
vertices 1..n, then for the in-constraints of vertices 1..n.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from .graph import DirectedGraph
from .sat import CdclSolver, SatStatus

# When enabled, every SAT answer is re-checked against the full clause list
# before being returned. Kept off by default: the check is O(model size) per
# call and dominates long enumeration runs.
VERIFY_MODELS = False


@dataclass
class CnfModel:
    """A CNF instance tied to a graph, with the arc <-> variable maps."""

    n: int
    num_vars: int
    clauses: list[list[int]]
    arc_var: dict[tuple[int, int], int]
    aux_vars: list[list[int]]
    trivially_unsat: bool = False
    _solver: CdclSolver | None = field(default=None, repr=False)
    _fed: int = field(default=0, repr=False)

    def add_clause(self, lits: list[int]) -> None:
        if not lits:
            raise ValueError("empty clause not representable")
        if any(abs(l) < 1 or abs(l) > self.num_vars for l in lits):
            raise ValueError("literal out of variable range")
        self.clauses.append(list(lits))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class SatOutcome:
    """Solver verdict; on SAT, the truth value of every arc variable."""

    status: SatStatus
    assignment: dict[tuple[int, int], bool] | None = None

    def chosen_arcs(self) -> list[tuple[int, int]]:
        if self.assignment is None:
            raise ValueError("no assignment: outcome is not SAT")
        return sorted(a for a, val in self.assignment.items() if val)


def _exactly_one_chain(ys: list[int], first_z: int, clauses: list[list[int]]) -> list[int]:
    """Append the clauses forcing exactly one of ys true; returns the chain vars."""
    d = len(ys)
    zs = list(range(first_z, first_z + d))
    clauses.append([-ys[0], zs[0]])
    clauses.append([ys[0], -zs[0]])
    for k in range(1, d):
        clauses.append([zs[k], -ys[k]])
        clauses.append([zs[k], -zs[k - 1]])
        clauses.append([-zs[k], ys[k], zs[k - 1]])
    for k in range(1, d):
        clauses.append([-zs[k - 1], -ys[k]])
    clauses.append([zs[d - 1]])
    return zs


def build_dap_cnf(g: DirectedGraph) -> CnfModel:
    """CNF whose models (on arc variables) are the cycle covers of g.

    A vertex with no outgoing or no incoming arc admits no cover; in that
    case a canonical contradiction (one fresh variable asserted both ways) is
    returned with trivially_unsat set, so callers can short-circuit.
    """
    arcs = g.sorted_arcs()
    arc_var = {a: i + 1 for i, a in enumerate(arcs)}
    m = len(arcs)

    out_of: dict[int, list[int]] = {u: [] for u in range(1, g.n + 1)}
    in_of: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for u, v in arcs:
        out_of[u].append(arc_var[(u, v)])
        in_of[v].append(arc_var[(u, v)])

    degenerate = any(not out_of[w] or not in_of[w] for w in range(1, g.n + 1))
    if degenerate:
        flag = m + 1
        return CnfModel(
            n=g.n,
            num_vars=flag,
            clauses=[[flag], [-flag]],
            arc_var=arc_var,
            aux_vars=[],
            trivially_unsat=True,
        )

    clauses: list[list[int]] = []
    aux_vars: list[list[int]] = []
    next_var = m + 1
    for u in range(1, g.n + 1):
        zs = _exactly_one_chain(out_of[u], next_var, clauses)
        aux_vars.append(zs)
        next_var += len(zs)
    for v in range(1, g.n + 1):
        zs = _exactly_one_chain(in_of[v], next_var, clauses)
        aux_vars.append(zs)
        next_var += len(zs)

    return CnfModel(
        n=g.n,
        num_vars=next_var - 1,
        clauses=clauses,
        arc_var=arc_var,
        aux_vars=aux_vars,
    )


def forbid_subcycle(model: CnfModel, cycle: tuple[int, ...]) -> CnfModel:
    """Block one directed cycle: at least one of its arcs must be unused."""
    if len(cycle) < 2:
        raise ValueError(f"cycle must have length >= 2, got {cycle!r}")
    lits = []
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        var = model.arc_var.get((u, v))
        if var is None:
            raise ValueError(f"cycle arc ({u}, {v}) is not a graph arc")
        lits.append(-var)
    model.clauses.append(lits)
    return model


def _solver_for(model: CnfModel) -> CdclSolver:
    solver = model._solver
    if solver is None:
        solver = CdclSolver(model.num_vars)
        model._solver = solver
        model._fed = 0
    for clause in model.clauses[model._fed :]:
        solver.add_clause(clause)
    model._fed = len(model.clauses)
    return solver


def sat_solve(
    model: CnfModel,
    deadline: float | None = None,
    max_conflicts: int | None = None,
) -> SatOutcome:
    """Complete SAT decision on the model's current clause list.

    Repeated calls reuse the same incremental solver; clauses appended to the
    model since the last call are fed in first. Resource exhaustion comes back
    as BUDGET_EXCEEDED, never as UNSAT.
    """
    solver = _solver_for(model)
    status = solver.solve(deadline=deadline, max_conflicts=max_conflicts)
    if status is not SatStatus.SAT:
        return SatOutcome(status)
    values = solver.model()
    assignment = {arc: values[var] > 0 for arc, var in model.arc_var.items()}
    if VERIFY_MODELS:
        _check_model(model, values)
    return SatOutcome(SatStatus.SAT, assignment)


def _check_model(model: CnfModel, values: list[int]) -> None:
    for clause in model.clauses:
        if not any(values[abs(l)] * (1 if l > 0 else -1) > 0 for l in clause):
            raise AssertionError(f"model violates clause {clause}")


def export_dimacs(model: CnfModel) -> str:
    """Standard DIMACS CNF text for the model's current clause list."""
    buf = io.StringIO()
    buf.write(f"p cnf {model.num_vars} {len(model.clauses)}\n")
    for clause in model.clauses:
        buf.write(" ".join(str(l) for l in clause))
        buf.write(" 0\n")
    return buf.getvalue()


def arc_map_comments(model: CnfModel) -> list[str]:
    """DIMACS comment lines documenting the arc -> variable mapping."""
    lines = [
        "c arc variables (sorted by arc), then chain variables for the",
        "c out-constraints of vertices 1..n, then for the in-constraints",
    ]
    if model.trivially_unsat:
        lines.append("c WARNING: some vertex has no outgoing or no incoming arc;")
        lines.append("c this formula is a canonical contradiction (no cycle cover exists)")
    for (u, v), var in sorted(model.arc_var.items(), key=lambda kv: kv[1]):
        lines.append(f"c y {var} = arc ({u},{v})")
    return lines
