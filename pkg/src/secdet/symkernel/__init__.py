from .field import Field, FieldError, QQ, GF32003
from .poly import PolyRing, Polynomial, PolyError, poly_parse, poly_print, poly_pullback, ambient_ring
from .groebner import (
    Ideal, BudgetExceeded, buchberger, groebner_basis, normal_form, ideal_membership,
    ideal_equal, eliminate, elimination_ring, DEFAULT_BUDGET,
)
from .hilbert import HilbertData, hilbert_data
from .gcd import NotDivisible, exact_div, poly_gcd, gcd_list
from . import linalg
