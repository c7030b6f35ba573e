"""Squares of spaces of forms, monomial extremal codimensions and checks of the
bounds around them."""

from .forms import (
    BasePointCertificate,
    Form,
    FormSpace,
    HilbertTable,
    apolar_complement,
    base_point_certificate,
    eval_pairing,
    face_dimension,
    hilbert_table,
    ideal_quotient_by_linear,
    lift,
    linear_form,
    product_codim,
    product_space,
    restrict_to_hyperplane,
    span,
    square,
    square_codim,
)
from .macaulay import MacaulayRep, macaulay_rep, macaulay_shift
from .monomials import GRLEX, LEX, Monomial, MonomialOrder, parse_order

__version__ = "0.1.0"
