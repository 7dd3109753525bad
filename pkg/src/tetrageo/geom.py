"""Constant-curvature 2D geometry kernel.

Three model charts, selected by :class:`SpaceKind`:

* Euclidean plane, points ``(x, y)``;
* unit sphere embedded in R^3, points as unit 3-vectors ``(x, y, z)``;
* Cayley-Klein disk for the hyperbolic plane, points ``(x, y)`` with
  ``x^2 + y^2 < 1`` (geodesics are straight chords).

Hyperbolic computations go through the hyperboloid model internally
(signature (-,+,+)) and convert back to Klein coordinates, which keeps
reflections and distances well conditioned away from the disk rim.

All functions are pure; no state is shared anywhere in the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from .errors import AmbiguousGeodesic, OutOfHemisphere

DEFAULT_TOL = 1e-10

# clamp for Klein chart points, guards artanh overflow near the rim
KLEIN_RIM = 1.0 - 1e-14


class SpaceKind(IntEnum):
    """Curvature selector; the value is the curvature k."""

    HYPERBOLIC = -1
    EUCLIDEAN = 0
    SPHERICAL = 1

    @classmethod
    def parse(cls, name):
        table = {
            "hyperbolic": cls.HYPERBOLIC, "h": cls.HYPERBOLIC, "-1": cls.HYPERBOLIC,
            "euclidean": cls.EUCLIDEAN, "e": cls.EUCLIDEAN, "0": cls.EUCLIDEAN,
            "spherical": cls.SPHERICAL, "s": cls.SPHERICAL, "1": cls.SPHERICAL,
        }
        key = str(name).strip().lower()
        if key not in table:
            raise ValueError(f"unknown space {name!r}")
        return table[key]


class Side(Enum):
    LEFT = "Left"
    RIGHT = "Right"
    ON = "On"


@dataclass(frozen=True)
class Segment2:
    """Geodesic segment between two chart points."""

    a: tuple
    b: tuple
    space: SpaceKind


# ---------------------------------------------------------------------------
# small vector helpers (3-vectors as tuples)

def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _norm3(u):
    return math.sqrt(_dot3(u, u))


def _unit3(u):
    n = _norm3(u)
    return (u[0] / n, u[1] / n, u[2] / n)


def _mdot(u, v):
    """Minkowski inner product, signature (-,+,+)."""
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _mcross(u, v):
    """Euclidean cross of (eta u, eta v): Minkowski-orthogonal to u and v."""
    eu = (-u[0], u[1], u[2])
    ev = (-v[0], v[1], v[2])
    return _cross3(eu, ev)


def lift_klein(p):
    """Klein disk point -> hyperboloid point (x0 > 0)."""
    x, y = p
    r2 = x * x + y * y
    if r2 >= 1.0:
        s = KLEIN_RIM / math.sqrt(r2)
        x, y = x * s, y * s
        r2 = x * x + y * y
    g = 1.0 / math.sqrt(1.0 - r2)
    return (g, g * x, g * y)


def drop_klein(X):
    """Hyperboloid point -> Klein disk coordinates."""
    return (X[1] / X[0], X[2] / X[0])


def _unit_spacelike(n):
    # the norm is positive for genuine spacelike input; the floor only
    # engages when saturated far coordinates cancel catastrophically, where
    # the chart is display-quality anyway
    s = math.sqrt(max(_mdot(n, n), 1e-300))
    return (n[0] / s, n[1] / s, n[2] / s)


def _normalize_timelike(X):
    s = math.sqrt(max(-_mdot(X, X), 1e-300))
    return (X[0] / s, X[1] / s, X[2] / s)


def hyper_line_normal(a, b):
    """Unit spacelike Minkowski normal of the geodesic through Klein points a, b."""
    return _unit_spacelike(_mcross(lift_klein(a), lift_klein(b)))


# ---------------------------------------------------------------------------
# distances

def distance(space, p, q):
    """Geodesic distance between two chart points.

    Spherical distances are the minor-arc angle in [0, pi]; antipodal
    inputs raise :class:`AmbiguousGeodesic`.  Hyperbolic distances equal
    the Klein-disk cross-ratio value arcosh((1 - p.q)/sqrt((1-|p|^2)(1-|q|^2))).
    """
    if space == SpaceKind.EUCLIDEAN:
        return math.hypot(q[0] - p[0], q[1] - p[1])
    if space == SpaceKind.SPHERICAL:
        c = _cross3(p, q)
        d = _dot3(p, q)
        ang = math.atan2(_norm3(c), d)
        if math.pi - ang < 1e-12:
            raise AmbiguousGeodesic("antipodal spherical points")
        return ang
    P = lift_klein(p)
    Q = lift_klein(q)
    return _hyp_dist_lifted(P, Q)


def _hyp_dist_lifted(P, Q):
    # 2 asinh of the half Minkowski chord: <P-Q, P-Q> = 4 sinh^2(d/2).
    # Unlike acosh(-<P,Q>) this has no sqrt(eps) floor near coincidence.
    d0, d1, d2 = P[0] - Q[0], P[1] - Q[1], P[2] - Q[2]
    m = -d0 * d0 + d1 * d1 + d2 * d2
    return 2.0 * math.asinh(0.5 * math.sqrt(max(m, 0.0)))


# ---------------------------------------------------------------------------
# orientation predicate

def side_of(space, seg, p, tol=DEFAULT_TOL):
    """Orientation of p relative to the complete geodesic through seg.

    Returns Side.LEFT / Side.RIGHT / Side.ON; the signed measure is the
    2D cross product (Euclidean/Klein charts, where geodesics are straight)
    or the triple product (sphere).
    """
    m = signed_side_measure(space, seg, p)
    if abs(m) < tol:
        return Side.ON
    return Side.LEFT if m > 0 else Side.RIGHT


def signed_side_measure(space, seg, p):
    a, b = seg.a, seg.b
    if space == SpaceKind.SPHERICAL:
        return _dot3(p, _cross3(a, b))
    # straight chords in both planar charts
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


# ---------------------------------------------------------------------------
# reflections and half turns

def reflect_across(space, seg, p):
    """Isometric reflection of p in the complete geodesic through seg."""
    a, b = seg.a, seg.b
    if space == SpaceKind.EUCLIDEAN:
        dx, dy = b[0] - a[0], b[1] - a[1]
        n2 = dx * dx + dy * dy
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / n2
        fx, fy = a[0] + t * dx, a[1] + t * dy
        return (2 * fx - p[0], 2 * fy - p[1])
    if space == SpaceKind.SPHERICAL:
        n = _unit3(_cross3(a, b))
        d = _dot3(p, n)
        return (p[0] - 2 * d * n[0], p[1] - 2 * d * n[1], p[2] - 2 * d * n[2])
    n = hyper_line_normal(a, b)
    X = lift_klein(p)
    d = _mdot(X, n)
    return drop_klein((X[0] - 2 * d * n[0], X[1] - 2 * d * n[1], X[2] - 2 * d * n[2]))


def half_turn(space, center, p):
    """Rotation by pi about a chart point (the geodesic point reflection)."""
    if space == SpaceKind.EUCLIDEAN:
        return (2 * center[0] - p[0], 2 * center[1] - p[1])
    if space == SpaceKind.SPHERICAL:
        d = _dot3(p, center)
        return (2 * d * center[0] - p[0], 2 * d * center[1] - p[1], 2 * d * center[2] - p[2])
    C = lift_klein(center)
    X = lift_klein(p)
    d = _mdot(X, C)
    return drop_klein((-X[0] - 2 * d * C[0], -X[1] - 2 * d * C[1], -X[2] - 2 * d * C[2]))


def midpoint(space, p, q):
    """Geodesic midpoint of two chart points."""
    if space == SpaceKind.EUCLIDEAN:
        return ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
    if space == SpaceKind.SPHERICAL:
        s = (p[0] + q[0], p[1] + q[1], p[2] + q[2])
        n = _norm3(s)
        if n < 1e-12:
            raise AmbiguousGeodesic("midpoint of antipodal points")
        return (s[0] / n, s[1] / n, s[2] / n)
    P = lift_klein(p)
    Q = lift_klein(q)
    return drop_klein(_normalize_timelike((P[0] + Q[0], P[1] + Q[1], P[2] + Q[2])))


def interpolate(space, p, q, frac):
    """Point at arc-length fraction frac from p toward q."""
    d = distance(space, p, q)
    if d == 0.0:
        return p
    return point_at(space, p, tangent_toward(space, p, q), frac * d)


# ---------------------------------------------------------------------------
# tangents, exponential map, angles

def tangent_toward(space, p, q):
    """Unit tangent vector at p pointing toward q (chart-model specific)."""
    if space == SpaceKind.EUCLIDEAN:
        d = math.hypot(q[0] - p[0], q[1] - p[1])
        return ((q[0] - p[0]) / d, (q[1] - p[1]) / d)
    if space == SpaceKind.SPHERICAL:
        c = _dot3(p, q)
        t = (q[0] - c * p[0], q[1] - c * p[1], q[2] - c * p[2])
        return _unit3(t)
    P = lift_klein(p)
    Q = lift_klein(q)
    c = _mdot(P, Q)
    t = (Q[0] + c * P[0], Q[1] + c * P[1], Q[2] + c * P[2])
    return _unit_spacelike(t)


def point_at(space, p, tangent, dist):
    """Exponential map: walk dist from p along a unit tangent."""
    if space == SpaceKind.EUCLIDEAN:
        return (p[0] + dist * tangent[0], p[1] + dist * tangent[1])
    if space == SpaceKind.SPHERICAL:
        c, s = math.cos(dist), math.sin(dist)
        return (c * p[0] + s * tangent[0], c * p[1] + s * tangent[1], c * p[2] + s * tangent[2])
    P = lift_klein(p)
    c, s = math.cosh(dist), math.sinh(dist)
    return drop_klein((c * P[0] + s * tangent[0], c * P[1] + s * tangent[1], c * P[2] + s * tangent[2]))


def rotate_tangent(space, p, tangent, theta):
    """Rotate a unit tangent at p by theta (counterclockwise in the chart)."""
    if space == SpaceKind.EUCLIDEAN:
        c, s = math.cos(theta), math.sin(theta)
        return (c * tangent[0] - s * tangent[1], s * tangent[0] + c * tangent[1])
    if space == SpaceKind.SPHERICAL:
        u = _cross3(p, tangent)
        c, s = math.cos(theta), math.sin(theta)
        return (c * tangent[0] + s * u[0], c * tangent[1] + s * u[1], c * tangent[2] + s * u[2])
    P = lift_klein(p)
    u = _unit_spacelike(_mcross(tangent, P))  # counterclockwise in the Klein chart
    c, s = math.cos(theta), math.sin(theta)
    return (c * tangent[0] + s * u[0], c * tangent[1] + s * u[1], c * tangent[2] + s * u[2])


def angle_at(space, v, p, q):
    """Unsigned angle at v between the geodesic rays v->p and v->q, in [0, pi]."""
    t1 = tangent_toward(space, v, p)
    t2 = tangent_toward(space, v, q)
    if space == SpaceKind.EUCLIDEAN:
        dot = t1[0] * t2[0] + t1[1] * t2[1]
        crs = t1[0] * t2[1] - t1[1] * t2[0]
        return abs(math.atan2(crs, dot))
    if space == SpaceKind.SPHERICAL:
        dot = _dot3(t1, t2)
        crs = _norm3(_cross3(t1, t2))
        return math.atan2(crs, dot)
    dot = _mdot(t1, t2)
    return math.acos(max(-1.0, min(1.0, dot)))


# ---------------------------------------------------------------------------
# point-to-segment distance

def point_to_segment_distance(space, seg, p):
    """Distance from p to the geodesic segment (foot clamped to the segment)."""
    a, b = seg.a, seg.b
    if space == SpaceKind.EUCLIDEAN:
        dx, dy = b[0] - a[0], b[1] - a[1]
        n2 = dx * dx + dy * dy
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / n2
        t = max(0.0, min(1.0, t))
        return math.hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy))
    if space == SpaceKind.SPHERICAL:
        n = _unit3(_cross3(a, b))
        dn = _dot3(p, n)
        foot = (p[0] - dn * n[0], p[1] - dn * n[1], p[2] - dn * n[2])
        fn = _norm3(foot)
        if fn > 1e-12:
            foot = (foot[0] / fn, foot[1] / fn, foot[2] / fn)
            if _between_on_arc(a, b, foot):
                return abs(math.asin(max(-1.0, min(1.0, dn))))
        return min(distance(space, p, a), distance(space, p, b))
    n = hyper_line_normal(a, b)
    X = lift_klein(p)
    dn = _mdot(X, n)
    foot = _normalize_timelike((X[0] - dn * n[0], X[1] - dn * n[1], X[2] - dn * n[2]))
    A = lift_klein(a)
    B = lift_klein(b)
    dab = _hyp_dist_lifted(A, B)
    if _hyp_dist_lifted(A, foot) <= dab + 1e-12 and _hyp_dist_lifted(B, foot) <= dab + 1e-12:
        return math.asinh(abs(dn))
    return min(_hyp_dist_lifted(X, A), _hyp_dist_lifted(X, B))


def _between_on_arc(a, b, f):
    ab = math.atan2(_norm3(_cross3(a, b)), _dot3(a, b))
    af = math.atan2(_norm3(_cross3(a, f)), _dot3(a, f))
    fb = math.atan2(_norm3(_cross3(f, b)), _dot3(f, b))
    return af + fb <= ab + 1e-9


# ---------------------------------------------------------------------------
# central (gnomonic) projection of the sphere

def gnomonic_project(p, tangent_point):
    """Central projection of a unit-sphere point onto the tangent plane.

    Rays start at the sphere's center; the image lands on the plane tangent
    at ``tangent_point`` and is returned in 2D coordinates of a fixed
    orthonormal frame of that plane.  Great circles map to straight lines.
    """
    c = _dot3(p, tangent_point)
    if c <= 1e-12:
        raise OutOfHemisphere("point not strictly inside the open hemisphere")
    q = (p[0] / c, p[1] / c, p[2] / c)
    e1, e2 = _tangent_frame(tangent_point)
    v = (q[0] - tangent_point[0], q[1] - tangent_point[1], q[2] - tangent_point[2])
    return (_dot3(v, e1), _dot3(v, e2))


def _tangent_frame(t):
    ref = (0.0, 0.0, 1.0) if abs(t[2]) < 0.9 else (1.0, 0.0, 0.0)
    e1 = _unit3(_cross3(ref, t))
    e2 = _cross3(t, e1)
    return e1, e2


def projected_angle_pair(r_over_R, a1, a2):
    """Spherical angle and its gnomonic image for the two-plane construction.

    Both planes pass through the sphere center and the point at polar
    distance r/R on the theta = 0 meridian; the plane pencil is parametrized
    by coefficients a1, a2 in [-1, 1].  Returns (alpha, alpha_hat) where
    alpha is the angle between the planes and alpha_hat the angle between
    their traces on the tangent plane at the pole.
    """
    rr = r_over_R
    s1 = math.sqrt(max(0.0, 1.0 - a1 * a1))
    s2 = math.sqrt(max(0.0, 1.0 - a2 * a2))
    cos_alpha = a1 * a2 + s1 * s2
    num = a1 * a2 * math.cos(rr) ** 2 + s1 * s2
    den = math.sqrt(1.0 - (a1 * math.sin(rr)) ** 2) * math.sqrt(1.0 - (a2 * math.sin(rr)) ** 2)
    cos_hat = num / den
    return (math.acos(max(-1.0, min(1.0, cos_alpha))),
            math.acos(max(-1.0, min(1.0, cos_hat))))


# ---------------------------------------------------------------------------
# representation layer
#
# Chart coordinates are the public face of the kernel, but hyperbolic
# computation in the Klein chart costs ~cosh^2 of the working radius in
# precision.  The rep layer therefore carries hyperbolic points as
# hyperboloid vectors; Euclidean and spherical reps are their charts.

def rep_point(space, p):
    """Chart point -> computational representation."""
    return lift_klein(p) if space == SpaceKind.HYPERBOLIC else p


def chart_point(space, P):
    """Computational representation -> chart point."""
    return drop_klein(P) if space == SpaceKind.HYPERBOLIC else P


def rdistance(space, P, Q):
    if space == SpaceKind.HYPERBOLIC:
        return _hyp_dist_lifted(P, Q)
    return distance(space, P, Q)


def rmidpoint(space, P, Q):
    if space == SpaceKind.HYPERBOLIC:
        return _normalize_timelike((P[0] + Q[0], P[1] + Q[1], P[2] + Q[2]))
    return midpoint(space, P, Q)


def rtangent(space, P, Q):
    if space == SpaceKind.HYPERBOLIC:
        c = _mdot(Q, P)
        return _unit_spacelike((Q[0] + c * P[0], Q[1] + c * P[1], Q[2] + c * P[2]))
    return tangent_toward(space, P, Q)


def rpoint_at(space, P, tangent, dist):
    if space == SpaceKind.HYPERBOLIC:
        c, s = math.cosh(dist), math.sinh(dist)
        return (c * P[0] + s * tangent[0], c * P[1] + s * tangent[1], c * P[2] + s * tangent[2])
    return point_at(space, P, tangent, dist)


def rrotate_tangent(space, P, tangent, theta):
    if space == SpaceKind.HYPERBOLIC:
        u = _unit_spacelike(_mcross(tangent, P))
        c, s = math.cos(theta), math.sin(theta)
        return (c * tangent[0] + s * u[0], c * tangent[1] + s * u[1], c * tangent[2] + s * u[2])
    return rotate_tangent(space, P, tangent, theta)


def rinterpolate(space, P, Q, frac):
    if space == SpaceKind.HYPERBOLIC:
        d = frac * _hyp_dist_lifted(P, Q)
        return rpoint_at(space, P, rtangent(space, P, Q), d)
    return interpolate(space, P, Q, frac)


def rangle(space, V, P, Q):
    if space == SpaceKind.HYPERBOLIC:
        t1 = rtangent(space, V, P)
        t2 = rtangent(space, V, Q)
        return math.acos(max(-1.0, min(1.0, _mdot(t1, t2))))
    return angle_at(space, V, P, Q)


def rreflect(space, A, B, P):
    """Reflect P across the geodesic through A, B (rep coordinates)."""
    if space == SpaceKind.HYPERBOLIC:
        n = _unit_spacelike(_mcross(A, B))
        d = _mdot(P, n)
        return (P[0] - 2 * d * n[0], P[1] - 2 * d * n[1], P[2] - 2 * d * n[2])
    return reflect_across(space, Segment2(A, B, space), P)


def rhalf_turn(space, C, P):
    if space == SpaceKind.HYPERBOLIC:
        d = _mdot(P, C)
        return (-P[0] - 2 * d * C[0], -P[1] - 2 * d * C[1], -P[2] - 2 * d * C[2])
    return half_turn(space, C, P)


def rpoint_seg_dist(space, V, A, B):
    if space == SpaceKind.HYPERBOLIC:
        n = _unit_spacelike(_mcross(A, B))
        dn = _mdot(V, n)
        foot = _normalize_timelike((V[0] - dn * n[0], V[1] - dn * n[1], V[2] - dn * n[2]))
        dab = _hyp_dist_lifted(A, B)
        if (_hyp_dist_lifted(A, foot) <= dab + 1e-12
                and _hyp_dist_lifted(B, foot) <= dab + 1e-12):
            return math.asinh(abs(dn))
        return min(_hyp_dist_lifted(V, A), _hyp_dist_lifted(V, B))
    return point_to_segment_distance(space, Segment2(A, B, space), V)


def rside_measure(space, A, B, P):
    """Signed orientation of P against the geodesic through A, B (rep).

    Signs agree with the chart convention of side_of (positive = Left).
    """
    if space == SpaceKind.SPHERICAL:
        return _dot3(P, _cross3(A, B))
    if space == SpaceKind.HYPERBOLIC:
        c = _mcross(A, B)
        return P[0] * c[0] - P[1] * c[1] - P[2] * c[2]
    return (B[0] - A[0]) * (P[1] - A[1]) - (B[1] - A[1]) * (P[0] - A[0])


def projected_angle_bound_check(r, R, alpha, samples=32):
    """Check |alpha_hat_r - pi/3| < pi tan^2(r/R) + eps over a plane-pencil sample.

    alpha must be pi/3 + eps with eps in (0, pi/6); r/R < pi/2.  Used by the
    verification harness only.
    """
    rr = r / R
    if rr >= math.pi / 2:
        raise ValueError("r/R must be below pi/2")
    eps = alpha - math.pi / 3
    bound = math.pi * math.tan(rr) ** 2 + eps
    if rr == 0.0:
        return True  # projection is the identity on directions at the pole
    # a_i = cos(phi_i) with phi1 - phi2 = +-alpha keeps the plane angle at alpha
    for k in range(samples):
        phi1 = (k + 0.5) * math.pi / samples
        for phi2 in (phi1 + alpha, phi1 - alpha):
            a1, a2 = math.cos(phi1), math.cos(phi2)
            got_alpha, got_hat = projected_angle_pair(rr, a1, a2)
            if abs(got_alpha - alpha) > 1e-9:
                continue  # pencil member folded past the angle range
            if abs(got_hat - math.pi / 3) >= bound:
                return False
    return True
