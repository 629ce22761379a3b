from ._version import __version__, version_info
from .errors import (BudgetExceededError, DivLatticeError, LatticeMismatchError, ModelError, ParseError,
                     PreconditionError, UnsupportedCaseError)
from .lattice import (Cluster, Divisor, IntersectionLattice, definiteness, format_divisor, intersect, is_nef,
                      nef_over, parse_cluster, parse_divisor, rounddown, roundup)
from .connectivity import (chain_connected_component, chain_connected_components, connecting_chain,
                           enumerate_decompositions, is_chain_connected, is_m_connected,
                           is_numerically_connected, is_z_positive)
from .zariski import integral_zariski, is_big_effective, zariski_decompose
from .resolution import (ResolutionModel, anticanonical_cycle, default_Z, delta_invariant, fundamental_cycle,
                         mumford_pullback, pushforward)
from .dualgraph import CurveConfigInput, betti1, build_graph
from .frobenius import frobenius_split
