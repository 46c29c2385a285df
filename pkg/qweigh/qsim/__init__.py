from .qsim import StateVector, MeasurementBasis, Outcome, Sample, Branch
from .qsim import uniform_state, basis_state, apply_unitary, apply_controlled, apply_global_phase
from .qsim import attach_register, detach_register, measure_register, measure_in_basis, outcome_distribution
from .qsim import measure_membership
from .oracle import QueryOracle, KICKBACK_ANCILLA, oracle_xor4, oracle_phase, oracle_mark_phase, kickback
from .amplify import grover_exact, construct_signed_state, grover_budget, amplification_rounds, final_phases
