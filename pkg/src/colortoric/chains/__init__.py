from .chain import ChainSpec, chain_dense_matrix, chain_dense_spectrum, chain_ff_spectrum, chain_gap, EVEN, ODD, BOTH
from .ensemble import ChainEnsemble, GapCurve, k_lowest_sums, assemble_k_lowest, ensemble_gap, predicted_gap
from .ensemble import single_chain_ensemble, ratio_grid
from .mapping import MapDerivation, Orbit, VerificationReport, derive_map, derive_ensemble, naive_ensemble, map_verify
from .mapping import measured_set, cc_bond_graph, derive_rings, fourfold_clusters
