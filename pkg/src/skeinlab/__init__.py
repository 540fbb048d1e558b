"""skeinlab: exact computations with presented finite ribbon categories.

The package computes handlebody block spaces and admissible skein values for
categories presented either as ribbon Hopf algebra module categories or as
skeletal fusion data, together with the supporting categorical algebra:
canonical end, distinguished invertible object, Nakayama functors, Hopf
integrals, coend gluing and a ribbon-diagram evaluator.  All arithmetic is
exact, over Q or a cyclotomic field.
"""

from importlib import resources

from .backends import (
    FusionCategory,
    HopfCategory,
    Mor,
    Obj,
    category_from_dict,
    load_category,
    validate_fusion,
    validate_hopf,
)
from .blocks import BlockEngine, HandlebodySig
from .coend import compute_invariants, invariants_report
from .diagrams import evaluate, move_check, parse
from .linalg import Field, Matrix, Scalar

__all__ = [
    "BlockEngine",
    "Field",
    "FusionCategory",
    "HandlebodySig",
    "HopfCategory",
    "Matrix",
    "Mor",
    "Obj",
    "Scalar",
    "category_from_dict",
    "compute_invariants",
    "data_path",
    "evaluate",
    "invariants_report",
    "load_category",
    "move_check",
    "parse",
    "validate_fusion",
    "validate_hopf",
]


def data_path(name):
    """Filesystem path of a shipped example category file, e.g. 'sweedler'."""
    if not name.endswith(".json"):
        name = name + ".json"
    return str(resources.files("skeinlab").joinpath("data", name))
