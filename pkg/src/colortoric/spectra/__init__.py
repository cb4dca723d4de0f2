from .state import StateVector, ProjectedState, matvec, expectation, build_projected_state, check_cap
from .solver import SpectrumReport, lowest_eigs, spectral_gap, cluster_levels, dense_matrix, dense_spectrum, hamiltonian_operator
from .ground_states import phi_c_group, phi_t_group, tc_ground_states, cc_ground_states, psi_zero, ground_state_splitting
from .ground_states import GroundStateSet, SplittingReport, DualityReport, duality_check, ground_space_overlap, orthonormality_error
