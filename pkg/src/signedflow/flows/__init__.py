from .eulerian import (BALANCED, LONG_BARBELL, SHORT_BARBELL, NoTwoFlow, SignedCircuit, five_flow_odd_components,
                       odd_component_flow_violations, lift_z2_to_3flow, signed_circuit_flow, two_flow_eulerian)
from .modular import Phi2Certificate, Phi2Step, lift_z3_to_4flow, phi2_closure, z3_flow_phi2
from .extension import extend_flow_contraction, fill_circuit
from .cover import (CosegmentCover, CoverResult, circuit_components, cover_circuit_4flow, cover_violations,
                    minimal_cosegment_cover)
