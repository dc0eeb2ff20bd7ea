"""Gradual argumentation, weighted conditional knowledge bases and their bridge to
multilayer perceptrons."""

from .activation import Activation, Logistic, PiecewiseRamp, ReLUClamped, parse_activation
from .arggraph import ArgGraph, Edge, Labelling, check_labelling, weight_of_argument
from .errors import CyclicGraphError, GradargError, SchemaError, UnsupportedShapeError, UsageError
from .fuzzy import FuzzyLogic, LogicFamily
from .kb import FiniteInterpretation, WeightedKB, check_model, element_weight
from .solver import SolveOptions, SolveResult, enumerate_labellings, forward_acyclic, solve_fixed_point

__version__ = "0.1.0"

__all__ = [
    "Activation",
    "ArgGraph",
    "CyclicGraphError",
    "Edge",
    "FiniteInterpretation",
    "FuzzyLogic",
    "GradargError",
    "Labelling",
    "LogicFamily",
    "Logistic",
    "PiecewiseRamp",
    "ReLUClamped",
    "SchemaError",
    "SolveOptions",
    "SolveResult",
    "UnsupportedShapeError",
    "UsageError",
    "WeightedKB",
    "check_labelling",
    "check_model",
    "element_weight",
    "enumerate_labellings",
    "forward_acyclic",
    "parse_activation",
    "solve_fixed_point",
    "weight_of_argument",
]
