"""Exact symbolic toolkit for skew-gentle algebras.

Builds the split quiver presentation of a skew-gentle triple, realizes
the quotient algebra over Q or F_p with certified normal-word bases,
decomposes it as a Morita context ring at the minus idempotent, and
machine-verifies the structural and homological statements attached to
that decomposition (stratifying ideal, corner classification,
Gorensteinness, selfinjectivity), over arbitrary exact fields including
characteristic 2.
"""

from .engine import (
    AlgebraElement,
    CapExceeded,
    PresentedAlgebra,
    multiply,
    oracle_dimension,
    radical_filtration,
    realize,
)
from .fields import F2, F3, QQ, Field, PrimeField, field_by_name
from .gentle import (
    GentleVerdict,
    SkewGentleTriple,
    check_gentle,
    check_skew_gentle,
    find_full_relation_cycles,
    require_triple,
    split_relations,
)
from .quiver import Path, QuiverSpec, RelationExpr, ZERO_PATH, parse, path_compose, serialize
from .splitting import GammaPair, SplitQuiver, build_gamma, split_triple, structure_probes

__all__ = [
    "AlgebraElement",
    "CapExceeded",
    "F2",
    "F3",
    "Field",
    "GammaPair",
    "GentleVerdict",
    "Path",
    "PresentedAlgebra",
    "PrimeField",
    "QQ",
    "QuiverSpec",
    "RelationExpr",
    "SkewGentleTriple",
    "SplitQuiver",
    "ZERO_PATH",
    "build_gamma",
    "check_gentle",
    "check_skew_gentle",
    "field_by_name",
    "find_full_relation_cycles",
    "multiply",
    "oracle_dimension",
    "parse",
    "path_compose",
    "radical_filtration",
    "realize",
    "require_triple",
    "serialize",
    "split_relations",
    "split_triple",
    "structure_probes",
]

__version__ = "0.1.0"
