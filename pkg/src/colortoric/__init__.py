__version__ = "0.1.0"

import colortoric.utils
import colortoric.pauli
import colortoric.lattice
import colortoric.models
import colortoric.spectra
import colortoric.chains
import colortoric.wilson
import colortoric.io

# Errors
from colortoric.errors import ColortoricError

# Numerical defaults
from colortoric.utils import Tolerances, set_tolerances

# Construction methods
from colortoric.lattice import make_torus, validate, validate_dims
from colortoric.models import interpolate, cc_hamiltonian, tc_hamiltonian

# Spectra and the chain map
from colortoric.spectra import lowest_eigs
from colortoric.chains import derive_map, map_verify

# IO
from colortoric.io import load, save
