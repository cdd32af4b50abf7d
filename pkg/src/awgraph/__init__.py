"""Askey-Wilson generators for the subconstituent algebra of a q-Racah
distance-regular graph, with numerical certificates for every step.
"""

import logging

from .awalgebra import (
    AWTriple,
    CentralElements,
    build_C,
    build_central_elements,
    central_expressions,
    delta_action_report,
    verify_centrality,
    verify_T_membership,
)
from .errors import AWGraphError, GraphInputError, NotDistanceRegular, NotQRacah, NonThinModule
from .graph import DistanceRegularData, Graph, compute_distance_data, generate_family, load_graph
from .leonard import LeonardSystemData, ParameterArray, leonard_system, module_A_epsilon, verify_leonard_pair
from .pipeline import Config, analyze_fit, module_inventory, prepare, run_analyze, run_modules, run_qracah, run_spectrum
from .qracah import QRacahFit, fit_qracah, normalize_generators
from .spectral import SpectralData, find_qpoly_orderings, krein_parameters, spectral_decomposition
from .tmodule import (
    algebra_closure,
    build_dual_data,
    classify_types,
    commutant,
    decompose_modules,
)

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "AWGraphError",
    "AWTriple",
    "CentralElements",
    "Config",
    "DistanceRegularData",
    "Graph",
    "GraphInputError",
    "LeonardSystemData",
    "NonThinModule",
    "NotDistanceRegular",
    "NotQRacah",
    "ParameterArray",
    "QRacahFit",
    "SpectralData",
    "algebra_closure",
    "analyze_fit",
    "build_C",
    "build_central_elements",
    "build_dual_data",
    "central_expressions",
    "classify_types",
    "commutant",
    "compute_distance_data",
    "decompose_modules",
    "delta_action_report",
    "find_qpoly_orderings",
    "fit_qracah",
    "generate_family",
    "krein_parameters",
    "leonard_system",
    "load_graph",
    "module_A_epsilon",
    "module_inventory",
    "normalize_generators",
    "prepare",
    "run_analyze",
    "run_modules",
    "run_qracah",
    "run_spectrum",
    "spectral_decomposition",
    "verify_T_membership",
    "verify_centrality",
    "verify_leonard_pair",
]
