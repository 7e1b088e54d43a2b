"""Decision diagrams as natural transformations.

Combination sets and Boolean functions share their raw data but not their
functor structure; BDD/SDD readings follow the Boolean-function action and
ZDD/ZSDD readings follow the combination-set action.
"""
from natdd.diagram import (
    Diagram,
    NodeStore,
    TotalOrder,
    eval_bdd,
    interpret_bdd,
    interpret_zdd,
    labels_of,
    mk_decision,
    mk_terminal,
    one_paths,
    relabel,
    respects_order,
)
from natdd.setfun import (
    BooleanFunction,
    CombinationSet,
    FiniteMap,
    Universe,
    UniverseError,
    bf_map,
    cs_intersect,
    cs_map,
    cs_union,
    full_powerset,
    join,
    tau,
    tau_inv,
)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction",
    "CombinationSet",
    "FiniteMap",
    "Universe",
    "UniverseError",
    "bf_map",
    "cs_intersect",
    "cs_map",
    "cs_union",
    "full_powerset",
    "join",
    "tau",
    "tau_inv",
    "Diagram",
    "NodeStore",
    "TotalOrder",
    "eval_bdd",
    "interpret_bdd",
    "interpret_zdd",
    "labels_of",
    "mk_decision",
    "mk_terminal",
    "one_paths",
    "relabel",
    "respects_order",
]
