from .hamiltonian import HamiltonianSpec, cc_hamiltonian, tc_hamiltonian, interpolate
from .logicals import Syndrome, syndrome, anyon_pairs, HomologyReport, homology_check
from .logicals import row_operator, row_string_colors, row_operator_in_logical_class, loop_operator, cc_group, tc_group
