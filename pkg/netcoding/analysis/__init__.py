"""
Closed-form predictions and exponent estimation.
"""
from .exponents import (
    ASYMPTOTIC,
    LOWER,
    UPPER,
    ExponentCurve,
    achievable_rate_tandem,
    decode_success_probability,
    error_exponent,
    innovative_arrival_log_mgf,
    poisson_tail_lower_bound,
)
from .fitting import ErrorEstimate, ExponentFit, fit_empirical_exponent, wilson_interval
from .fluid import FluidPrediction, fluid_queue_rates, fluid_throughput, thinning_factor

__all__ = [
    'ASYMPTOTIC',
    'LOWER',
    'UPPER',
    'ErrorEstimate',
    'ExponentCurve',
    'ExponentFit',
    'FluidPrediction',
    'achievable_rate_tandem',
    'decode_success_probability',
    'error_exponent',
    'fit_empirical_exponent',
    'fluid_queue_rates',
    'fluid_throughput',
    'innovative_arrival_log_mgf',
    'poisson_tail_lower_bound',
    'thinning_factor',
    'wilson_interval',
]
