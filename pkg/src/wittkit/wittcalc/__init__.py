"""Witt groups of fields, the node, and the rewrite rules for C_n, P^n and bundles."""

from wittkit.wittcalc.fields import (
    FieldDesc,
    FieldError,
    FieldKind,
    fundamental_ideal,
    witt_field,
    witt_field_oracle,
)
from wittkit.wittcalc.groups import Atom, GroupExpr, normalize
from wittkit.wittcalc.rules import HypothesisFailed, NotTabulated, Rule, Trace, WittCalcError
from wittkit.wittcalc.schemes import (
    AffineSpace,
    Field,
    Node,
    ProjSpace,
    PuncturedAffine,
    SchemeExpr,
    Symbolic,
    VectorBundleOver,
)
from wittkit.wittcalc.theorems import (
    BALMER_GILLE_WARNING,
    NodeLTable,
    NodeWitt,
    evaluate,
    gw_group,
    gw_projective,
    gw_projective_fibration_view,
    gw_punctured,
    higher_witt_group,
    higher_witt_punctured,
    homotopy_invariance,
    k_group,
    k_minus_one,
    k_theory_punctured,
    node_l_table,
    node_laurent_witt,
    node_witt,
    witt_bass,
    witt_group,
    witt_les_punctured,
    witt_punctured,
)

__all__ = [
    "FieldDesc", "FieldError", "FieldKind", "fundamental_ideal", "witt_field", "witt_field_oracle",
    "Atom", "GroupExpr", "normalize", "HypothesisFailed", "NotTabulated", "Rule", "Trace",
    "WittCalcError", "AffineSpace", "Field", "Node", "ProjSpace", "PuncturedAffine", "SchemeExpr",
    "Symbolic", "VectorBundleOver", "BALMER_GILLE_WARNING", "NodeLTable", "NodeWitt", "evaluate",
    "gw_group", "gw_projective", "gw_projective_fibration_view", "gw_punctured", "higher_witt_group",
    "higher_witt_punctured", "homotopy_invariance", "k_group", "k_minus_one", "k_theory_punctured",
    "node_l_table", "node_laurent_witt", "node_witt", "witt_bass", "witt_group",
    "witt_les_punctured", "witt_punctured",
]
