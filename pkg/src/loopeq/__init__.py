"""Exact expansion engine for one-Hermitean-matrix ensembles.

The package computes the higher-order coupling constants of the effective
one-point problem by an exact recursion over moment algebras, expands
correlation functions as weighted vertex diagrams, replays them through an
independent residue recursion, and evaluates the results numerically on a
one-cut spectral curve.
"""
from __future__ import annotations

from .algebra import (
    Expression,
    add,
    diff,
    evaluate,
    ext_prop,
    index_attach,
    int_prop,
    log_moment,
    moment,
    mul,
    project_y1,
    render_json,
    render_text,
    scale,
    sub,
    term,
)
from .couplings import (
    CouplingTable,
    count_terms,
    default_table,
    enumerate_mset,
    fhat,
    lambda_consistency,
    z_poly,
)
from .curve import (
    CurveData,
    Potential,
    QuadratureSpec,
    bergmann,
    eval_expression,
    ext_prop_value,
    gaussian_potential,
    int_prop_value,
    moment_value,
    solve_curve,
)
from .diagrams import (
    Diagram,
    SymFactor,
    VertexStructure,
    catalog,
    correlator,
    enumerate_diagrams,
    symmetry_factor,
    wick_weights,
)
from .oracle import LoopContext, loop_apply, residue_step, w1_recursion
from .verify import run_all

__all__ = [
    "CouplingTable",
    "CurveData",
    "Diagram",
    "Expression",
    "LoopContext",
    "Potential",
    "QuadratureSpec",
    "SymFactor",
    "VertexStructure",
    "add",
    "bergmann",
    "catalog",
    "correlator",
    "count_terms",
    "default_table",
    "diff",
    "enumerate_diagrams",
    "enumerate_mset",
    "eval_expression",
    "evaluate",
    "ext_prop",
    "ext_prop_value",
    "fhat",
    "gaussian_potential",
    "index_attach",
    "int_prop",
    "int_prop_value",
    "lambda_consistency",
    "log_moment",
    "loop_apply",
    "moment",
    "moment_value",
    "mul",
    "project_y1",
    "render_json",
    "render_text",
    "residue_step",
    "run_all",
    "scale",
    "solve_curve",
    "sub",
    "symmetry_factor",
    "term",
    "w1_recursion",
    "wick_weights",
    "z_poly",
]
