"""Regular and generic tetrahedron parameterizations.

A regular tetrahedron is specified by its space and the planar face angle
alpha; the edge length follows from the constant-curvature edge formula

    spherical:   a = arccos(cos(alpha) / (1 - cos(alpha))),   pi/3 < alpha < 2*pi/3
    hyperbolic:  a = arcosh(cos(alpha) / (1 - cos(alpha))),   0 < alpha < pi/3
    Euclidean:   a = 1 (normalized; everything downstream is scale invariant)

A generic hyperbolic tetrahedron is keyed by its six edge lengths; the
twelve planar angles are derived by the hyperbolic law of cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidAngle, InvalidEdge, InvalidTetrahedron
from .geom import SpaceKind

VERTICES = (1, 2, 3, 4)
EDGES = ("12", "13", "14", "23", "24", "34")
FACES = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))

# opposite-edge pairing of the tetrahedron
OPPOSITE_EDGE = {"12": "34", "34": "12", "13": "24", "24": "13", "14": "23", "23": "14"}

SPHERICAL_EDGE_MAX = math.pi - math.acos(1.0 / 3.0)


def edge_token(u, v):
    return f"{min(u, v)}{max(u, v)}"


def edge_vertices(token):
    return (int(token[0]), int(token[1]))


def edge_from_angle(space, alpha):
    """Edge length of the regular tetrahedron with planar angle alpha."""
    if space == SpaceKind.EUCLIDEAN:
        if abs(alpha - math.pi / 3) > 1e-12:
            raise InvalidAngle("Euclidean regular tetrahedron has alpha = pi/3")
        return 1.0
    if space == SpaceKind.SPHERICAL:
        if not (math.pi / 3 < alpha < 2 * math.pi / 3):
            raise InvalidAngle(f"spherical alpha must lie in (pi/3, 2pi/3), got {alpha}")
        return math.acos(math.cos(alpha) / (1.0 - math.cos(alpha)))
    if not (0.0 < alpha < math.pi / 3):
        raise InvalidAngle(f"hyperbolic alpha must lie in (0, pi/3), got {alpha}")
    return math.acosh(math.cos(alpha) / (1.0 - math.cos(alpha)))


def angle_from_edge(space, a):
    """Inverse of edge_from_angle; round-trips to 1e-10."""
    if space == SpaceKind.EUCLIDEAN:
        return math.pi / 3
    if space == SpaceKind.SPHERICAL:
        if not (0.0 < a < SPHERICAL_EDGE_MAX):
            raise InvalidEdge(f"spherical edge must lie in (0, {SPHERICAL_EDGE_MAX:.6f})")
        return math.acos(math.cos(a) / (1.0 + math.cos(a)))
    if a <= 0.0:
        raise InvalidEdge("hyperbolic edge must be positive")
    return math.acos(math.cosh(a) / (1.0 + math.cosh(a)))


@dataclass(frozen=True)
class TetrahedronSpec:
    """Regular tetrahedron: space + planar angle, edge derived."""

    space: SpaceKind
    alpha: float
    edge: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "edge", edge_from_angle(self.space, self.alpha))

    def face_edge_length(self, u, v):
        return self.edge

    @property
    def is_regular(self):
        return True


def face_altitude(spec):
    """Altitude of a face from a vertex to the opposite edge.

    Hyperbolic faces satisfy tanh(h) = tanh(a) cos(alpha/2); the spherical
    and Euclidean versions follow from the same right-triangle relation.
    """
    a = spec.edge
    if spec.space == SpaceKind.EUCLIDEAN:
        return math.sqrt(3.0) / 2.0 * a
    if spec.space == SpaceKind.SPHERICAL:
        return math.acos(math.cos(a) / math.cos(a / 2.0))
    return math.atanh(math.tanh(a) * math.cos(spec.alpha / 2.0))


def _hyp_triangle_angles(la, lb, lc):
    """Angles (A, B, C) opposite sides (la, lb, lc) of a hyperbolic triangle."""
    if not (la < lb + lc and lb < la + lc and lc < la + lb):
        raise InvalidTetrahedron(f"face sides {la, lb, lc} violate the triangle inequality")

    def ang(opp, s1, s2):
        c = (math.cosh(s1) * math.cosh(s2) - math.cosh(opp)) / (math.sinh(s1) * math.sinh(s2))
        return math.acos(max(-1.0, min(1.0, c)))

    return (ang(la, lb, lc), ang(lb, la, lc), ang(lc, la, lb))


@dataclass(frozen=True)
class GenericTetraSpec:
    """Hyperbolic tetrahedron keyed by six edge lengths.

    Edges are given in lexicographic vertex-pair order
    (a12, a13, a14, a23, a24, a34); opposite pairs are (12,34), (13,24), (14,23).
    The twelve planar angles are derived and exposed per (face, vertex).
    """

    edges: dict  # token -> length
    angles: dict  # (face, vertex) -> angle
    space: SpaceKind = SpaceKind.HYPERBOLIC

    def face_edge_length(self, u, v):
        return self.edges[edge_token(u, v)]

    def angle(self, face, vertex):
        return self.angles[(tuple(sorted(face)), vertex)]

    def all_angles_le(self, limit):
        return all(a <= limit + 1e-12 for a in self.angles.values())

    @property
    def is_regular(self):
        vals = list(self.edges.values())
        return all(abs(v - vals[0]) < 1e-12 for v in vals)


def generic_from_edges(edges):
    """Build a GenericTetraSpec from six lengths (a12, a13, a14, a23, a24, a34)."""
    if len(edges) != 6:
        raise InvalidTetrahedron("exactly six edge lengths required")
    if any(e <= 0 for e in edges):
        raise InvalidTetrahedron("edge lengths must be positive")
    table = dict(zip(EDGES, (float(e) for e in edges)))
    angles = {}
    for face in FACES:
        i, j, k = face
        lij = table[edge_token(i, j)]
        lik = table[edge_token(i, k)]
        ljk = table[edge_token(j, k)]
        # angle at i is opposite side jk, etc.
        a_jk, a_ik, a_ij = _hyp_triangle_angles(ljk, lik, lij)
        angles[(face, i)] = a_jk
        angles[(face, j)] = a_ik
        angles[(face, k)] = a_ij
    return GenericTetraSpec(edges=table, angles=angles)
