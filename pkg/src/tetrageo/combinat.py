"""Combinatorial crossing structure of type-(p,q) geodesics.

The crossing word is generated by tracing a straight line through the
standard triangular tiling of the plane whose vertices carry tetrahedron
labels.  Working in sheared coordinates (x, Y) with Y = y/sqrt(3), the
tiling is cut out by three line families

    rows        Y = m/2          (m integer),
    diagonals   x - Y = n        (n integer),
    diagonals   x + Y = n        (n integer),

and the traced segment runs from (mu, 0) to (mu + qe + 2*pe, qe).  The
orientation (pe, qe) is (p, q) when q is odd and (q, p) otherwise: the
row family must carry the odd member of the pair, else the mu = 1/2 line
passes through a tiling vertex.  All crossing ordinates are exact
rationals, so vertex hits are detected exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoLinkNodes, VertexHit
from .tetra import OPPOSITE_EDGE, edge_token


@dataclass(frozen=True)
class GeodesicType:
    """Coprime ordered pair naming the combinatorial class."""

    p: int
    q: int

    def __post_init__(self):
        if not (0 <= self.p <= self.q) or (self.p, self.q) == (0, 0):
            raise ValueError(f"need 0 <= p <= q, (p,q) != (0,0); got {(self.p, self.q)}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime; got {(self.p, self.q)}")

    @property
    def n_crossings(self):
        return 4 * (self.p + self.q)

    @property
    def norm(self):
        """p^2 + pq + q^2, the quantity entering every closed-form bound."""
        return self.p * self.p + self.p * self.q + self.q * self.q

    def effective(self):
        """(pe, qe) with the odd count on the row family."""
        if self.q % 2 == 1:
            return (self.p, self.q)
        return (self.q, self.p)


@dataclass(frozen=True)
class CrossingSequence:
    """Cyclic word of crossed edges, with exact crossing fractions when traced."""

    gtype: GeodesicType
    tokens: tuple
    fractions: tuple = None  # Fraction from the smaller-labelled endpoint, or None

    def __len__(self):
        return len(self.tokens)

    def multiplicities(self):
        counts = {}
        for tok in self.tokens:
            counts[tok] = counts.get(tok, 0) + 1
        return counts

    def faces(self):
        """Face of each segment: union of consecutive crossed edges."""
        n = len(self.tokens)
        out = []
        for i in range(n):
            labels = set(self.tokens[i]) | set(self.tokens[(i + 1) % n])
            if len(labels) != 3:
                raise ValueError("consecutive crossings do not bound a face")
            out.append(tuple(sorted(int(c) for c in labels)))
        return out


def _vertex_label(x, m):
    """Tetrahedron label of the tiling vertex at (x, Y=m/2); x, m exact."""
    r = m % 4
    if r == 0:
        l = int(x)
        return 1 if l % 2 == 0 else 2
    if r == 2:
        l = int(x)
        return 2 if l % 2 == 0 else 1
    l = int(x - Fraction(1, 2))
    if r == 1:
        return 3 if l % 2 == 0 else 4
    return 4 if l % 2 == 0 else 3


def _row_offset(m):
    return Fraction(0) if m % 2 == 0 else Fraction(1, 2)


def trace_crossings(t: GeodesicType, mu):
    """All crossings of the tiling segment, sorted by x; exact arithmetic.

    Returns a list of (x, token, fraction) with fraction measured from the
    smaller-labelled endpoint.  Raises VertexHit if the line meets a tiling
    vertex (or if two crossings coincide, which is the same event).
    """
    mu = Fraction(mu)
    pe, qe = t.effective()
    slope = Fraction(qe, qe + 2 * pe)
    out = []

    def add(x, yy, v0, l0, v1, l1, frac_from_v0):
        if frac_from_v0 <= 0 or frac_from_v0 >= 1:
            raise VertexHit(f"tiling line through mu={mu} hits a vertex near x={x}")
        tok = edge_token(l0, l1)
        frac = frac_from_v0 if l0 < l1 else 1 - frac_from_v0
        out.append((x, tok, frac))

    # row crossings, m = 0 .. 2*qe - 1 (the m = 2*qe endpoint is identified with m = 0)
    for m in range(0, 2 * qe):
        x = mu + Fraction(m * (qe + 2 * pe), 2 * qe)
        off = _row_offset(m)
        x0 = (x - off).__floor__() + off
        l0 = _vertex_label(x0, m)
        l1 = _vertex_label(x0 + 1, m)
        add(x, Fraction(m, 2), x0, l0, x0 + 1, l1, x - x0)

    # diagonals x - Y = n (climbing family), crossed 2*pe times
    if pe > 0:
        lo = (mu).__floor__() + 1
        hi = (mu + 2 * pe).__ceil__() - 1
        for n in range(lo, hi + 1):
            x = (n - slope * mu) / (1 - slope)
            yy = slope * (x - mu)
            y0 = (2 * yy).__floor__()
            Y0 = Fraction(y0, 2)
            m0 = y0
            v0x = n + Y0
            v1x = n + Y0 + Fraction(1, 2)
            l0 = _vertex_label(v0x, m0)
            l1 = _vertex_label(v1x, m0 + 1)
            add(x, yy, v0x, l0, v1x, l1, 2 * (yy - Y0))

    # diagonals x + Y = n (descending family), crossed 2*(pe+qe) times
    lo = (mu).__floor__() + 1
    hi = (mu + 2 * (pe + qe)).__ceil__() - 1
    for n in range(lo, hi + 1):
        x = (n + slope * mu) / (1 + slope)
        yy = slope * (x - mu)
        y0 = (2 * yy).__floor__()
        Y0 = Fraction(y0, 2)
        m0 = y0
        v0x = n - Y0
        v1x = n - Y0 - Fraction(1, 2)
        l0 = _vertex_label(v0x, m0)
        l1 = _vertex_label(v1x, m0 + 1)
        add(x, yy, v0x, l0, v1x, l1, 2 * (yy - Y0))

    out.sort(key=lambda rec: rec[0])
    n_total = t.n_crossings
    if len(out) != n_total:
        raise VertexHit(f"expected {n_total} crossings, traced {len(out)}")
    for i in range(1, len(out)):
        if out[i][0] == out[i - 1][0]:
            raise VertexHit("two crossings coincide: segment passes a tiling vertex")
    return out


def crossing_sequence(t: GeodesicType, mu=Fraction(1, 2)):
    """Canonical crossing word of type (p,q), anchored at the A1A2 crossing at mu.

    With the default mu = 1/2 the word starts at the midpoint of an A1A2
    edge and its quarter points land on edge midpoints (the symmetry points
    of the development).
    """
    recs = trace_crossings(t, mu)
    seq = CrossingSequence(
        gtype=t,
        tokens=tuple(rec[1] for rec in recs),
        fractions=tuple(rec[2] for rec in recs),
    )
    if Fraction(mu) == Fraction(1, 2):
        n = len(seq)
        for idx in (0, n // 4, n // 2, 3 * n // 4):
            assert seq.fractions[idx] == Fraction(1, 2), "midpoint anchor violated"
    return seq


def validate_sequence(s: CrossingSequence, t: GeodesicType):
    """True iff s satisfies every invariant of a type-(p,q) crossing word."""
    n = 4 * (t.p + t.q)
    if len(s.tokens) != n:
        return False
    counts = s.multiplicities()
    seen = set()
    per_pair = []
    for tok, opp in OPPOSITE_EDGE.items():
        if tok in seen or opp in seen:
            continue
        seen.update((tok, opp))
        c1, c2 = counts.get(tok, 0), counts.get(opp, 0)
        if c1 != c2:
            return False
        per_pair.append(c1)
    if sorted(per_pair) != sorted((t.p, t.q, t.p + t.q)):
        return False
    for i in range(n):
        a, b = s.tokens[i], s.tokens[(i + 1) % n]
        if a == b or len(set(a) & set(b)) != 1:
            return False
    # three consecutive crossings around one vertex, then the first edge again
    for i in range(n):
        w = [s.tokens[(i + k) % n] for k in range(4)]
        if w[3] == w[0] and set(w[0]) & set(w[1]) & set(w[2]):
            return False
    return True


def link_node_windows(s: CrossingSequence):
    """Centers i where crossings i-1, i, i+1 lie on edges at one vertex."""
    n = len(s.tokens)
    wins = []
    for i in range(n):
        common = (set(s.tokens[(i - 1) % n])
                  & set(s.tokens[i])
                  & set(s.tokens[(i + 1) % n]))
        if common:
            wins.append(i)
    return wins


def link_nodes(s: CrossingSequence):
    """The two link nodes, as antipodal positions splitting the word in half.

    Symmetric types admit more than one antipodal window pair; the pair
    anchored at the smallest position is returned.  Type (0,1) has no
    windows at all and raises NoLinkNodes.
    """
    wins = link_node_windows(s)
    if not wins:
        raise NoLinkNodes(f"type {s.gtype.p, s.gtype.q} has no link nodes")
    n = len(s.tokens)
    half = n // 2
    wset = set(wins)
    for i in wins:
        j = (i + half) % n
        if j in wset:
            return (min(i, j), max(i, j))
    raise NoLinkNodes("no antipodal window pair found")


ROTATION_PERMS = (
    {1: 1, 2: 2, 3: 3, 4: 4},
    {1: 2, 2: 3, 3: 1, 4: 4},  # rotation by 2*pi/3 about the altitude at A4
    {1: 3, 2: 1, 3: 2, 4: 4},  # rotation by 4*pi/3
)


def relabel_sequence(s: CrossingSequence, perm):
    """Apply a vertex relabelling; fractions stay tied to their endpoints."""
    toks = []
    fracs = [] if s.fractions is not None else None
    for i, tok in enumerate(s.tokens):
        u, v = int(tok[0]), int(tok[1])
        pu, pv = perm[u], perm[v]
        toks.append(edge_token(pu, pv))
        if fracs is not None:
            f = s.fractions[i]
            # stored from the smaller label; flip if the permutation swaps order
            fracs.append(f if (u < v) == (pu < pv) else 1 - f)
    return CrossingSequence(
        gtype=s.gtype,
        tokens=tuple(toks),
        fractions=tuple(fracs) if fracs is not None else None,
    )


def isometric_copies(t: GeodesicType):
    """The three isometry-related copies of the canonical word."""
    base = crossing_sequence(t)
    return tuple(relabel_sequence(base, perm) for perm in ROTATION_PERMS)
