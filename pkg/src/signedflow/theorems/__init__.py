from .cubic import cubic_flow, is_exceptional, odd_circuits
from .result import FlowResult
from .planar import BlowUp, Gadget, blow_up, planar_flow
from .hamiltonian import balanced_chord_circuit, hamilton_circuit, hamiltonian_flow
