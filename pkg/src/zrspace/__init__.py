"""Exact computations with bi-invariant preorders on Z^n / Q^n and on the
integral Heisenberg group."""
from .errors import (
    CapExceeded, DimensionMismatch, FieldMismatch, GroupMismatch, NotUnimodular,
    PreconditionFailed, PreorderError,
)
from .groups import (
    HEISENBERG, Composite, Heisenberg, HElem, LeftLex, PullbackAb, StandardCheck, Trivial, Zn,
    is_standard, layered, layered_compose,
)
from .linalg import IntLattice
from .preorder import (
    MatrixPreorder, Ordering, cmp, compose, compose_all, decompose, degree,
    distinguishing_vector, equals, meet, pullback, raf_minus, rank, refinement_witness,
    refines, residue_lattice,
)
from .scalar import QuadExt, sign
from .topology import (
    BasicOpen, CantorWitnesses, Infeasible, cantor_witnesses, enumerate_zr_q1, member,
    nonstandard_witness, separate, zr_tree,
)
from .valuation import (
    GroupAlgebraElement, Value, in_max_ideal, in_ring, leading_form, shift_case,
    standard_shift, valuate,
)

__all__ = [
    "BasicOpen", "CantorWitnesses", "CapExceeded", "Composite", "DimensionMismatch",
    "FieldMismatch", "GroupAlgebraElement", "GroupMismatch", "HEISENBERG", "HElem",
    "Heisenberg", "Infeasible", "IntLattice", "LeftLex", "MatrixPreorder", "NotUnimodular",
    "Ordering", "PreconditionFailed", "PreorderError", "PullbackAb", "QuadExt",
    "StandardCheck", "Trivial", "Value", "Zn", "cantor_witnesses", "cmp", "compose",
    "compose_all", "decompose", "degree", "distinguishing_vector", "enumerate_zr_q1",
    "equals", "in_max_ideal", "in_ring", "is_standard", "layered", "layered_compose",
    "leading_form", "meet", "member", "nonstandard_witness", "pullback", "raf_minus", "rank",
    "refinement_witness", "refines", "residue_lattice", "separate", "shift_case", "sign",
    "standard_shift", "valuate", "zr_tree",
]
