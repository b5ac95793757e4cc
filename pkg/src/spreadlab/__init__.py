"""(p,q)-spreading on graphs, with exact solvers and structure-aware
constructions for connected claw-free cubic graphs."""

from .constructions import ConstructionResult
from .decomposition import DeltaDPartition, NotInClassError, delta_d_partition
from .graph import Graph, GraphFormatError, format_edge_list, parse_edge_list
from .solvers import SolveResult, sigma_exact
from .spreading import INF, SpreadParams, closure, is_spreading_set
from .theory import Prediction, predict, verify

__version__ = "0.1.0"

__all__ = [
    "INF", "ConstructionResult", "DeltaDPartition", "Graph", "GraphFormatError",
    "NotInClassError", "Prediction", "SolveResult", "SpreadParams", "closure",
    "delta_d_partition", "format_edge_list", "is_spreading_set", "parse_edge_list",
    "predict", "sigma_exact", "verify",
]
