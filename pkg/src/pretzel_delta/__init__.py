"""a2 and Delta-unknotting numbers of pretzel knots."""

from .a2_engine import A2Value, MethodMismatch, SkeinEngine, a2, a2_alexander, a2_skein
from .alexander import SymmetricAlexander, alexander_poly
from .delta import (DeltaCertificate, DeltaResult, build_certificate_oddone, lower_bound,
                    u_delta, verify_certificate)
from .diagram import Diagram, build_diagram
from .formulas import (a2_even_formula, a2_odd_formula, a2_torus,
                       u_delta_oddone_formula, u_delta_positive_formula, u_delta_torus)
from .pretzel import (HypothesisError, NotAKnotError, PretzelClass, cancel_unit_pair,
                      canonical_key, classify, is_positive, mirror, parse_vector)
from .table import KnotTable, KnotTableEntry, load_table

__version__ = "0.1.0"
