"""Exact Laurent-polynomial and vertex-algebra computations.

Rationals are fractions.Fraction; Laurent polynomials are dicts
{exponent: Fraction}; Fock vectors are dicts {partition tuple: Fraction},
with () the vacuum and (1,) the generator h = h(-1)1.
"""

from ._zhukit import (
    CutoffError,
    PreconditionError,
    binom,
    build_A,
    build_Gamma,
    det_closed_form,
    det_exact,
    formal_check_names,
    lemma_names,
    member_o,
    mode,
    mu,
    o_generator,
    phi,
    pi,
    reduce_mod_o,
    run_cli,
    star,
    verify_formal,
    verify_lemma,
    verify_vertex,
    vertex_check_names,
)

__all__ = [
    "CutoffError",
    "PreconditionError",
    "binom",
    "build_A",
    "build_Gamma",
    "det_closed_form",
    "det_exact",
    "formal_check_names",
    "lemma_names",
    "member_o",
    "mode",
    "mu",
    "o_generator",
    "phi",
    "pi",
    "reduce_mod_o",
    "run_cli",
    "star",
    "verify_formal",
    "verify_lemma",
    "verify_vertex",
    "vertex_check_names",
]
