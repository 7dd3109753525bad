"""Simple closed geodesics on regular tetrahedra in E^3, S^3 and H^3.

Construction, verification, enumeration and counting of type-(p,q)
geodesics, with the constant-curvature geometry kernel, the combinatorial
crossing machinery, existence bounds and the totient-based counting
asymptotics.
"""

from .combinat import (CrossingSequence, GeodesicType, crossing_sequence,
                       isometric_copies, link_nodes, validate_sequence)
from .counting import (CountReport, asymptotic_constant, count_exact,
                       euler_phi, psi, psi_bruteforce, totient_sum)
from .existence import (EpsilonBound, ExistenceVerdict,
                        abstract_shortest_curve_length, edge_sufficient_bound,
                        exists_geodesic, hyperbolic_clearance_bound,
                        hyperbolic_length_lower_bound, necessary_alpha_bound,
                        sufficient_epsilon_bound, threshold_beta)
from .geom import SpaceKind, Segment2, Side, distance, gnomonic_project, side_of
from .paths import (GeodesicPath, NotContained, euclid_geodesic,
                    euclid_mu_interval, generic_hyperbolic_geodesic,
                    midpoint_geodesic, simplicity_check, vertex_clearance)
from .tetra import (GenericTetraSpec, TetrahedronSpec, angle_from_edge,
                    edge_from_angle, face_altitude, generic_from_edges)
from .unfold import Development, build_development, symmetry_check

__version__ = "0.1.0"
