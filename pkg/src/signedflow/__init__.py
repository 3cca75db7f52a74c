"""Nowhere-zero integer flows on signed graphs."""

from .analysis import (Admissibility, BalanceWitness, bridges, find_unbalanced_circuit, is_balanced,
                       is_flow_admissible, support_components)
from .coloring import EdgeColoring, NotColorable, three_edge_color
from .core import (Circuit, IntFlow, ModFlow, Path, PreconditionError, SearchExhausted, SignedFlowError,
                   SignedGraph, build_graph, contract, default_orientation, make_flow, switch, verify_flow)
from .oracle import OracleReport, enumerate_signed, exists_k_flow, min_flow_number
from .theorems import FlowResult, blow_up, cubic_flow, hamiltonian_flow, planar_flow

__version__ = "0.1.0"
