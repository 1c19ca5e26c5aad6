"""Exact solver for the Hamiltonian cycle problem in directed graphs.

Pipeline: assignment-problem relaxation with cost perturbation, cycle
patching, and a complete incremental SAT phase over cycle covers. Ships with
a reproducible random-instance generator, an exhaustive small-instance
oracle, an experiment harness, and exporters (DIMACS CNF, symmetric-TSP
reduction).
"""

from .assignment import CostMatrix, CycleCover, build_initial_matrix, perturb, solve_ap
from .bench import PhaseRow, derive_seed, run_phase, run_scaling
from .cnf import CnfModel, SatOutcome, build_dap_cnf, export_dimacs, forbid_subcycle, sat_solve
from .graph import (
    DirectedGraph,
    GraphParseError,
    InstanceParams,
    arcs_for_c,
    gen_random,
    graph_from_text,
    graph_to_text,
    read_graph,
    write_graph,
)
from .oracle import OracleResult, brute_force_oracle
from .patching import PatchResult, ksp, patch_cost
from .reduction import SymmetricTspInstance, to_tsplib, two_point_reduction
from .sat import CdclSolver, SatStatus
from .solver import (
    SolveReport,
    SubcycleLedger,
    Verdict,
    ap_sat_solve,
    canonical_rotation,
    enumerate_all,
    validate_hc,
)

__all__ = [
    "CdclSolver",
    "CnfModel",
    "CostMatrix",
    "CycleCover",
    "DirectedGraph",
    "GraphParseError",
    "InstanceParams",
    "OracleResult",
    "PatchResult",
    "PhaseRow",
    "SatOutcome",
    "SatStatus",
    "SolveReport",
    "SubcycleLedger",
    "SymmetricTspInstance",
    "Verdict",
    "ap_sat_solve",
    "arcs_for_c",
    "brute_force_oracle",
    "build_dap_cnf",
    "build_initial_matrix",
    "canonical_rotation",
    "derive_seed",
    "enumerate_all",
    "export_dimacs",
    "forbid_subcycle",
    "gen_random",
    "graph_from_text",
    "graph_to_text",
    "ksp",
    "patch_cost",
    "perturb",
    "read_graph",
    "run_phase",
    "run_scaling",
    "sat_solve",
    "solve_ap",
    "to_tsplib",
    "two_point_reduction",
    "validate_hc",
    "write_graph",
]

__version__ = "0.1.0"
