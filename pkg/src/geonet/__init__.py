"""Generation, analysis and ranking of k-geodetic network topologies."""
from ._accel import DEFAULT_BACKEND, NUMBA_OK
from .economics import CostParams, effectiveness, structure_cost
from .generators import FamilySpec, generate
from .geodetics import classify
from .graph import Graph, build_graph, degree_summary, distance_profile, vertex_connectivity
from .reliability import FailureParams, asymptotic_q2, exact_pairwise_q, monte_carlo_reliability
from .synthesis import SynthesisQuery, synthesize

__version__ = "0.1.0"
