"""trigprove: certified proofs of mixed trigonometric polynomial inequalities.

The prover rewrites f as a combination of sines and cosines of multiple
angles, replaces each by a sign-appropriate Maclaurin bound to obtain a
polynomial P <= f on the interval, certifies P > 0 with exact arithmetic
(Sturm sequences over Q, interval bisection over Q[pi]), and emits an
independently checkable certificate.
"""

from .certificate import CheckResult, check, emit, parse_certificate
from .driver import ProofOutcome, SearchConfig, Witness, prove, reflect_at
from .multiangle import (
    MultiAngleForm,
    MultiAngleSum,
    SubAddend,
    cos_power,
    expand_poly,
    product_expand,
    sin_power,
)
from .pipoly import PI, PiPoly, pi_enclosure, pipoly_enclose, pipoly_sign
from .positivity import (
    NoPositiveRoot,
    PositivityDisproved,
    PositivityProof,
    PositivityUndecided,
    RootEnclosure,
    least_positive_root,
    prove_positive,
    sturm_count,
)
from .problems import (
    MixedTrigPoly,
    MixedTrigTerm,
    ParseError,
    ProblemSpec,
    parse_function,
    parse_problem,
    print_problem,
    reflect,
)
from .rationals import RatInterval, rat
from .series import LocalSign, local_sign, series_coeffs
from .taylor import (
    DegreeAssignment,
    TaylorBound,
    classify,
    maclaurin,
    normalize_signs,
    substitute_bounds,
    template_degree,
)
from .unipoly import UniPoly, unipoly_eval_interval

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "check", "emit", "parse_certificate",
    "ProofOutcome", "SearchConfig", "Witness", "prove", "reflect_at",
    "MultiAngleForm", "MultiAngleSum", "SubAddend",
    "cos_power", "expand_poly", "product_expand", "sin_power",
    "PI", "PiPoly", "pi_enclosure", "pipoly_enclose", "pipoly_sign",
    "NoPositiveRoot", "PositivityDisproved", "PositivityProof",
    "PositivityUndecided", "RootEnclosure",
    "least_positive_root", "prove_positive", "sturm_count",
    "MixedTrigPoly", "MixedTrigTerm", "ParseError", "ProblemSpec",
    "parse_function", "parse_problem", "print_problem", "reflect",
    "RatInterval", "rat",
    "LocalSign", "local_sign", "series_coeffs",
    "DegreeAssignment", "TaylorBound", "classify", "maclaurin",
    "normalize_signs", "substitute_bounds", "template_degree",
    "UniPoly", "unipoly_eval_interval",
]
