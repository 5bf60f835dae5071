"""Pull-back tensors on local-unitary orbits of bipartite pure states."""
from .errors import (ConsistencyError, ContractViolation, DomainError, LupullbackError,
                     ShapeError)
from .linalg import Tolerance
from .measures import (MeasureReport, concurrence, entanglement_entropy, measure_report,
                       schlienz_mahler, segre_quantity, tangle, trace_rr)
from .orbits import haar_unitary, local_orbit_samples, orbit_dimension, random_pure_state
from .pullback import (BlockDecomposition, PullbackTensor, blocks, coadjoint_tensor,
                       degeneracy_directions, fano_block_coefficients, pullback_tensor, split)
from .states import (DensityMatrix, FanoForm, PureState, SchmidtData, density_from_pure,
                     density_matrix, from_fano, is_separable_pure, pure_state,
                     schmidt_decompose, schmidt_state, to_fano)
from .subasis import gell_mann_basis, local_family, structure_constants

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "ConsistencyError",
    "ContractViolation",
    "DensityMatrix",
    "DomainError",
    "FanoForm",
    "LupullbackError",
    "MeasureReport",
    "PullbackTensor",
    "PureState",
    "SchmidtData",
    "ShapeError",
    "Tolerance",
    "blocks",
    "coadjoint_tensor",
    "concurrence",
    "degeneracy_directions",
    "density_from_pure",
    "density_matrix",
    "entanglement_entropy",
    "fano_block_coefficients",
    "from_fano",
    "gell_mann_basis",
    "haar_unitary",
    "is_separable_pure",
    "local_family",
    "local_orbit_samples",
    "measure_report",
    "orbit_dimension",
    "pullback_tensor",
    "pure_state",
    "random_pure_state",
    "schlienz_mahler",
    "schmidt_decompose",
    "schmidt_state",
    "segre_quantity",
    "split",
    "structure_constants",
    "tangle",
    "to_fano",
    "trace_rr",
]
