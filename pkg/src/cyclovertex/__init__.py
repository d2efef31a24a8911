"""Exact computations with vertex Lie algebras, their twisted quasi-modules and
cyclotomic coinvariants on the sphere."""

from .coinv import (MarkedConfig, TensorState, big_little_check, coinvariant_value,
                    little_image_membership, swap_reduce)
from .cycfield import CycScalar, LaurentSeries, RatFun, root
from .fields import CheckResult, check_borcherds, find_locality_order, ope, y_apply
from .modes import LoopElem, bracket, twisted_bracket
from .parser import ParseError, parse_elem, parse_loop, parse_state
from .quasi import check_quasi_borcherds, check_wcom, yw_apply
from .suites import RunReport, run_suite
from .verma import State
from .vla import AxiomError, VlaElem, VlaPresentation, check_axioms, preset

__all__ = [
    "AxiomError", "CheckResult", "CycScalar", "LaurentSeries", "LoopElem", "MarkedConfig",
    "ParseError", "RatFun", "RunReport", "State", "TensorState", "VlaElem", "VlaPresentation",
    "big_little_check", "bracket", "check_axioms", "check_borcherds", "check_quasi_borcherds",
    "check_wcom", "coinvariant_value", "find_locality_order", "little_image_membership", "ope",
    "parse_elem", "parse_loop", "parse_state", "preset", "root", "run_suite", "swap_reduce",
    "twisted_bracket", "y_apply", "yw_apply",
]
