"""Free infinite divisibility tools for Meixner-type and logistic laws."""

from .config import RunConfig, load_config
from .cumulants import (
    cond_psd_check,
    cumulants_by_series_reversion,
    free_convolve_moments,
    free_cumulants_to_moments,
    moments_to_free_cumulants,
)
from .exceptions import ConvergenceError, PoleError
from .fidcheck import CheckReport, CurveSpec, run_full_check
from .measures import MeasureSpec, parse_measure
from .sequences import FreeCumulantSequence, MomentSequence
from .transforms import (
    ConeSpec,
    EvalMethod,
    cauchy_transform,
    f_inverse_numeric,
    f_of,
    voiculescu_phi,
)

__version__ = "0.1.0"

__all__ = [
    "RunConfig",
    "load_config",
    "cond_psd_check",
    "cumulants_by_series_reversion",
    "free_convolve_moments",
    "free_cumulants_to_moments",
    "moments_to_free_cumulants",
    "ConvergenceError",
    "PoleError",
    "CheckReport",
    "CurveSpec",
    "run_full_check",
    "MeasureSpec",
    "parse_measure",
    "FreeCumulantSequence",
    "MomentSequence",
    "ConeSpec",
    "EvalMethod",
    "cauchy_transform",
    "f_inverse_numeric",
    "f_of",
    "voiculescu_phi",
]
