"""Quantum cluster algebras of Grassmannians and the braid group action on them."""

from .errors import QClusterError
from .qcoeff import QCoeff, qpow
from .qtorus import SkewForm, TorusElement, exact_left_divide, normalized_from_word
from .qseed import QuantumSeed, enumerate_exchange_graph, load_seed, dump_seed, mutate, new_seed
from .grassmann import rectangles_seed, x_i_seed, weakly_separated, scott_lambda
from .qmatrix import PluckerExpr, algebra
from .quasihom import QuasiHomData, check_quasi_hom
from .atlas import GrassmannAtlas, get_atlas
from .braid import BraidWord, apply_sigma, sigma_table
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "QClusterError",
    "QCoeff",
    "qpow",
    "SkewForm",
    "TorusElement",
    "exact_left_divide",
    "normalized_from_word",
    "QuantumSeed",
    "enumerate_exchange_graph",
    "load_seed",
    "dump_seed",
    "mutate",
    "new_seed",
    "rectangles_seed",
    "x_i_seed",
    "weakly_separated",
    "scott_lambda",
    "PluckerExpr",
    "algebra",
    "QuasiHomData",
    "check_quasi_hom",
    "GrassmannAtlas",
    "get_atlas",
    "BraidWord",
    "apply_sigma",
    "sigma_table",
    "Report",
]
