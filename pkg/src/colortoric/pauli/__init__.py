from .pauli_string import PauliString, multiply, commutes, product
from .stabilizer import StabilizerGroup, canonicalize, member_with_sign, stabilizer_expectation, phase_expectation
from .stabilizer import apply_pauli, state_from_group
from .sectors import SectorRule, SectorAnalysis, analyze_sectors, derive_sector_constraints, dimension_audit, sector_weight
