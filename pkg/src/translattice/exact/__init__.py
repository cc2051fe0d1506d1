"""Exact arithmetic: Q(sqrt d), polynomials over it, integer matrices."""
from .quad import QuadElem, Embedding, embed, PLUS, MINUS
from .poly import MPoly, NotDivisible
from .parse import parse_poly, PolySyntaxError
from .elim import (resultant, sylvester_resultant, discriminant, gcd, squarefree_part,
                   is_squarefree, content, primitive_part)
from .series import TruncSeries
from .intmat import (smith_normal_form, smith_invariants, integer_kernel, hermite_normal_form,
                     is_unimodular, det, saturate, as_int_matrix, unimodular_inverse)

__all__ = [
    "QuadElem", "Embedding", "embed", "PLUS", "MINUS", "MPoly", "NotDivisible",
    "parse_poly", "PolySyntaxError", "resultant", "sylvester_resultant", "discriminant",
    "gcd", "squarefree_part", "is_squarefree", "content", "primitive_part", "TruncSeries",
    "smith_normal_form", "smith_invariants", "integer_kernel", "hermite_normal_form",
    "is_unimodular", "det", "saturate", "as_int_matrix", "unimodular_inverse",
]
