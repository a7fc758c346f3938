"""Exact 2-descent and 3-descent for integral points on y^2 = f(x) over Q."""

from .arith import PrimeSet, SquareClassQ, square_class_decompose
from .descent import (
    CurveData,
    DescentRecord,
    DescentTag,
    ThueInstance,
    bound_report,
    descend_point,
    recover_x,
    tally,
    validate_curve,
)
from .multiquad import MQElement, MQField, build_s_unit_basis, cube_class_decompose, mq_field_build
from .points import SearchBox, enumerate_points
from .quadratic import QuadElement, QuadField, class_group, fundamental_unit

__version__ = "0.1.0"

__all__ = [
    "CurveData",
    "DescentRecord",
    "DescentTag",
    "MQElement",
    "MQField",
    "PrimeSet",
    "QuadElement",
    "QuadField",
    "SearchBox",
    "SquareClassQ",
    "ThueInstance",
    "bound_report",
    "build_s_unit_basis",
    "class_group",
    "cube_class_decompose",
    "descend_point",
    "enumerate_points",
    "fundamental_unit",
    "mq_field_build",
    "recover_x",
    "square_class_decompose",
    "tally",
    "validate_curve",
]
