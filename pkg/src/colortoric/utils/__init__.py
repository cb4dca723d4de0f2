from .bitset import BitVector
from .gf2 import row_reduce_gf2, rank_gf2, nullspace_gf2, solve_gf2, in_span_gf2
from .tolerances import Tolerances, set_tolerances
from .parallel import parallel_map
