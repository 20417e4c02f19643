"""Simultaneous rational function codes over prime fields.

Encoders, decoders, error-model samplers, exact failure-probability bounds,
and a Monte-Carlo harness for codes built from ell rational functions with a
shared denominator, evaluated modulo (x - alpha_j)**lambda_j, optionally with
poles at the evaluation points.
"""

from .bounds import (BoundValue, bound_thm1, bound_thm1_hybrid,
                     bound_thm1_poles, bound_thm2, bound_thm2_hybrid,
                     bound_thm2_poles, product_factor_bound,
                     simplified_exponent, t_bar_e, t_bar_i, t_max,
                     t_max_floor)
from .code import (CodeParams, FractionVector, add_error, distance, encode,
                   enumerate_codebook, error_locator,
                   min_distance_bruteforce, word_from_text, word_to_text)
from .decoder import (DecodeOutcome, FAILURE_REASONS, decode, decode_poles,
                      solve_min_degree)
from .errormodels import (ErrorSpec, draw_epsilon_columns,
                          draw_partial_words, locator_probability_e2,
                          omega_count, sample_B1, sample_B2, sample_E1,
                          sample_E2, sample_H1, sample_H2)
from .experiments import (CampaignConfig, CampaignReport, TrialRecord,
                          gate_threshold, run_campaign)
from .field import PrimeField, Rng, is_prime
from .poles import (PoleWord, SubsetSumWitness, canonicalize,
                    check_subset_sum_constraint, encode_multiprecision,
                    min_distance_bruteforce_poles, partition_error_support,
                    pole_distance, pole_word_from_text, pole_word_to_text,
                    reduce_representative, tight_pair_from_witness,
                    words_equivalent)
from .polynomials import PointSystem, divisor_exponents, poly_from_text, poly_to_text

__version__ = "0.1.0"

__all__ = [
    "BoundValue", "bound_thm1", "bound_thm1_hybrid", "bound_thm1_poles",
    "bound_thm2", "bound_thm2_hybrid", "bound_thm2_poles",
    "product_factor_bound", "simplified_exponent", "t_bar_e", "t_bar_i",
    "t_max", "t_max_floor",
    "CodeParams", "FractionVector", "add_error", "distance", "encode",
    "enumerate_codebook", "error_locator", "min_distance_bruteforce",
    "word_from_text", "word_to_text",
    "DecodeOutcome", "FAILURE_REASONS", "decode", "decode_poles",
    "solve_min_degree",
    "ErrorSpec", "draw_epsilon_columns", "draw_partial_words",
    "locator_probability_e2", "omega_count", "sample_B1", "sample_B2",
    "sample_E1", "sample_E2", "sample_H1", "sample_H2",
    "CampaignConfig", "CampaignReport", "TrialRecord", "gate_threshold",
    "run_campaign",
    "PrimeField", "Rng", "is_prime",
    "PoleWord", "SubsetSumWitness", "canonicalize",
    "check_subset_sum_constraint", "encode_multiprecision",
    "min_distance_bruteforce_poles", "partition_error_support",
    "pole_distance", "pole_word_from_text", "pole_word_to_text",
    "reduce_representative", "tight_pair_from_witness", "words_equivalent",
    "PointSystem", "divisor_exponents", "poly_from_text", "poly_to_text",
    "__version__",
]
