"""Exact valuation theory over the tropical semifield Q_max."""
from .hyper import (
    FiniteHyperstructure,
    RvalSet,
    check_hyperfield,
    check_hypergroup,
    check_hyperring,
    iso_search,
    krasner,
    quotient_hyperring,
    rval_add,
    rval_axiom_check,
    rval_contains,
    rval_mul,
    signs,
)
from .report import AxiomReport, Witness
from .trop_core import BOTTOM, ONE, Bool, Trop, parse_scalar, trop_add, trop_inv, trop_leq, trop_mul
from .trop_poly import (
    CanonicalPoly,
    LinearFactorization,
    TropPoly,
    ZeroPolynomialError,
    canonicalize,
    expand,
    factor,
    func_equiv,
    poly_add,
    poly_degree,
    poly_eval,
    poly_mul,
    t_order,
)
from .trop_ratfunc import TropRational, rat_add, rat_eq, rat_inv, rat_mul, rat_normalize
from .valuations import (
    ExtVal,
    FFValuation,
    Kind,
    QmaxValuation,
    abstract_curve,
    check_valuation_axioms,
    equivalent,
    ff_classify,
    ff_val_eval,
    qmax_classify,
    qmax_val_eval,
)
from .expr import parse_expr, pretty

__version__ = "0.1.0"
