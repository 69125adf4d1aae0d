"""Hilbert-Samuel coefficients over prime fields: Groebner bases, graded
linear algebra, structure tests and an experiment lab."""

from .core import DEFAULT_CHARACTERISTIC, GREVLEX, LEX, PolyRing, Polynomial, RingDesc, TermOrder
from .errors import (
    ChernError,
    FitConsistencyError,
    GenericityError,
    InputError,
    SaturationLimitError,
    UnstableFitError,
)
from .groebner import IdealHandle, colon, intersect, krull_dim, length_zero_dim, normal_form, saturate
from .graded import GradedSubmodule, freeness_probe, hilbert_function, hilbert_series
from .hilbert import EVector, HilbertSamuelTable, evector, fit_evector, hs_sample
from .structure import depth, find_superficial, is_cohen_macaulay, lift_sop, random_sop, reduction_check
from .lab import ExperimentReport, run_corpus
from .dsl import format_script, parse_script

__version__ = "0.1.0"
