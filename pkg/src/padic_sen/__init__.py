"""Weight space modulo torsion, bounded distributions and Sen's period ring, in capped precision."""

from .errors import DomainError
from .kernels import BACKEND
from .padic_fields import (FieldDesc, PadicElement, PrecisionZero, angle, binom_pow, exp,
                           ext_automorphism, log1p, norm, teichmuller, val)
from .weight_space import (QuotientPoint, WeightPoint, classify, eval_char, inverse_theta,
                           mul_points, theta, torsion_char)
from .tate_series import TateSeries, evaluate, exp_theta_series, sup_norm, translate
from .distributions import BoundedDistribution, convolve, dirac, from_moments, theta_op
from .galois import GaloisElement, act_on_distribution, act_on_function, act_on_point
from .fourier import BSenElement, colmez_action, inverse_fourier

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BSenElement", "BoundedDistribution", "DomainError", "FieldDesc", "GaloisElement",
    "PadicElement", "PrecisionZero", "QuotientPoint", "TateSeries", "WeightPoint",
    "act_on_distribution", "act_on_function", "act_on_point", "angle", "binom_pow", "classify",
    "colmez_action", "convolve", "dirac", "eval_char", "evaluate", "exp", "exp_theta_series",
    "ext_automorphism", "from_moments", "inverse_fourier", "inverse_theta", "log1p",
    "mul_points", "norm", "sup_norm", "teichmuller", "theta", "theta_op", "torsion_char",
    "translate", "val",
]
