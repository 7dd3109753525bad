"""Developments: unrolled face chains in the model charts.

A development along a crossing word of length N consists of N placed face
copies F_0..F_{N-1}; faces F_{i-1} and F_i share the glue edge e_i, and
the two cap copies of e_0 bound the chain.  Placement is canonical (first
edge centered on the chart axis, first face in the upper half-chart), so
outputs are byte-reproducible.

Spherical chains may overlap themselves on the sphere; the development is
an abstract chain and overlap is never an error.  If the chain leaves an
open hemisphere a warning is emitted when the hemisphere check is on.

Hyperbolic chains are computed on the hyperboloid and converted to Klein
coordinates only for the stored chart points; long chains still saturate
any global chart, so the published coordinates of very large developments
are display quality while all metric checks use the internal points.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from . import frames as frames_mod
from .combinat import CrossingSequence
from .geom import (SpaceKind, chart_point, rangle, rdistance, rhalf_turn,
                   rinterpolate, rmidpoint, rpoint_at, rreflect,
                   rrotate_tangent, rside_measure, rtangent)


class HemisphereWarning(UserWarning):
    """Spherical chain does not fit in an open hemisphere (a*(p+q) >= pi/2)."""


@dataclass
class PlacedFace:
    labels: tuple          # sorted vertex labels (i, j, k)
    points: dict           # label -> chart point
    reps: dict             # label -> rep point (hyperboloid for H)
    vertex_ids: dict       # label -> id shared with glued neighbours


@dataclass
class Development:
    space: SpaceKind
    spec: object
    sequence: CrossingSequence
    faces: list
    glue_edges: list       # (token, (vid_minus, vid_plus)) for e_0 .. e_N
    vertex_points: dict    # vid -> chart point
    vertex_reps: dict      # vid -> rep point
    sym_points: dict = field(default_factory=dict)   # chart points
    sym_reps: dict = field(default_factory=dict)
    boundary: list = field(default_factory=list)     # (vid, label, point, angle)

    def glue_edge_reps(self, i):
        tok, (va, vb) = self.glue_edges[i]
        return self.vertex_reps[va], self.vertex_reps[vb]

    def glue_edge_points(self, i):
        tok, (va, vb) = self.glue_edges[i]
        return self.vertex_points[va], self.vertex_points[vb]

    def crossing_point(self, i, fraction):
        """Chart point at the given fraction (from the smaller label) of e_i."""
        a, b = self.glue_edge_reps(i)
        return chart_point(self.space, rinterpolate(self.space, a, b, float(fraction)))

    def boundary_angles(self):
        return [rec[3] for rec in self.boundary]


def first_face_reps(space, ell, d_minus, d_plus):
    """Canonical triangle: base centered on the chart axis, apex above."""
    if space == SpaceKind.EUCLIDEAN:
        vm = (-ell / 2.0, 0.0)
        vp = (ell / 2.0, 0.0)
    elif space == SpaceKind.SPHERICAL:
        vm = (math.cos(ell / 2.0), -math.sin(ell / 2.0), 0.0)
        vp = (math.cos(ell / 2.0), math.sin(ell / 2.0), 0.0)
    else:
        vm = (math.cosh(ell / 2.0), -math.sinh(ell / 2.0), 0.0)
        vp = (math.cosh(ell / 2.0), math.sinh(ell / 2.0), 0.0)
    apex = rep_third_point(space, vm, vp, ell, d_minus, d_plus, None)
    return vm, vp, apex


def rep_third_point(space, pc, pd, ell_cd, d_c, d_d, opposite_to):
    """Rep point at distance d_c from pc and d_d from pd, on the chosen side.

    With opposite_to=None the point lands on the +y (counterclockwise) side.
    """
    if space == SpaceKind.EUCLIDEAN:
        cg = (d_c * d_c + ell_cd * ell_cd - d_d * d_d) / (2.0 * d_c * ell_cd)
    elif space == SpaceKind.SPHERICAL:
        cg = ((math.cos(d_d) - math.cos(ell_cd) * math.cos(d_c))
              / (math.sin(ell_cd) * math.sin(d_c)))
    else:
        cg = ((math.cosh(ell_cd) * math.cosh(d_c) - math.cosh(d_d))
              / (math.sinh(ell_cd) * math.sinh(d_c)))
    gamma = math.acos(max(-1.0, min(1.0, cg)))
    base = rtangent(space, pc, pd)
    w_pos = rpoint_at(space, pc, rrotate_tangent(space, pc, base, gamma), d_c)
    if opposite_to is None:
        return w_pos
    if rside_measure(space, pc, pd, w_pos) * rside_measure(space, pc, pd, opposite_to) < 0:
        return w_pos
    return rpoint_at(space, pc, rrotate_tangent(space, pc, base, -gamma), d_c)


def build_development(spec, s: CrossingSequence, hemisphere_check=True):
    """Place the face chain of a crossing word in the spec's chart.

    Regular faces are propagated by reflecting the previous apex across the
    glue edge; generic faces are solved from their own edge lengths.  The
    symmetry points X1, Y1, X2, Y2, X1' are the midpoints of the start,
    quarter, half, three-quarter and closing glue edges.
    """
    space = spec.space
    tokens = list(s.tokens)
    n = len(tokens)
    tokens_ext = tokens + [tokens[0]]

    if hemisphere_check and space == SpaceKind.SPHERICAL:
        if spec.edge * (s.gtype.p + s.gtype.q) >= math.pi / 2:
            warnings.warn(
                "spherical chain does not fit an open hemisphere; "
                "the development is abstract and may overlap",
                HemisphereWarning, stacklevel=2)

    vertex_reps = {}
    next_vid = [0]

    def new_vertex(rep):
        vid = next_vid[0]
        next_vid[0] += 1
        vertex_reps[vid] = rep
        return vid

    faces = []
    glue_edges = []

    if space == SpaceKind.HYPERBOLIC:
        # compose local edge frames: every face is solved in small local
        # coordinates and pushed to the chart by an accumulated isometry,
        # so the chain never feeds far-point cancellations back into itself
        steps = frames_mod.build_chain(tokens_ext, spec.face_edge_length)
        acc = frames_mod.IDENTITY3
        prev_ids = None
        for i, step in enumerate(steps):
            reps = {lab: frames_mod._matvec(acc, v) for lab, v in step.verts.items()}
            labels = tuple(sorted(step.verts.keys()))
            if prev_ids is None:
                ids = {lab: new_vertex(reps[lab]) for lab in labels}
            else:
                c, d = int(tokens_ext[i][0]), int(tokens_ext[i][1])
                w_label = (set(labels) - {c, d}).pop()
                ids = {c: prev_ids[c], d: prev_ids[d], w_label: new_vertex(reps[w_label])}
                reps = {c: vertex_reps[prev_ids[c]], d: vertex_reps[prev_ids[d]],
                        w_label: reps[w_label]}
            faces.append(PlacedFace(labels=labels, points={}, reps=reps, vertex_ids=ids))
            glue_edges.append((tokens_ext[i],
                               (ids[int(tokens_ext[i][0])], ids[int(tokens_ext[i][1])])))
            acc = frames_mod._matmul(acc, frames_mod._mink_inverse(step.transition))
            prev_ids = ids
        last = faces[-1]
        glue_edges.append((tokens_ext[n],
                           (last.vertex_ids[int(tokens_ext[n][0])],
                            last.vertex_ids[int(tokens_ext[n][1])])))
    else:
        a0, b0 = int(tokens[0][0]), int(tokens[0][1])
        apex0 = int((set(tokens_ext[1]) - set(tokens[0])).pop())
        vm, vp, w = first_face_reps(
            space, spec.face_edge_length(a0, b0),
            spec.face_edge_length(a0, apex0), spec.face_edge_length(b0, apex0))
        ids = {a0: new_vertex(vm), b0: new_vertex(vp), apex0: new_vertex(w)}
        reps = {a0: vm, b0: vp, apex0: w}
        faces.append(PlacedFace(labels=tuple(sorted((a0, b0, apex0))),
                                points={}, reps=reps, vertex_ids=ids))
        glue_edges.append((tokens[0], (ids[a0], ids[b0])))
        for i in range(1, n + 1):
            tok = tokens_ext[i]
            c, d = int(tok[0]), int(tok[1])
            prev = faces[-1]
            glue_edges.append((tok, (prev.vertex_ids[c], prev.vertex_ids[d])))
            if i == n:
                break
            nxt_tok = tokens_ext[i + 1]
            w_label = int((set(nxt_tok) - set(tok)).pop())
            behind_label = (set(prev.labels) - {c, d}).pop()
            pc, pd = prev.reps[c], prev.reps[d]
            if spec.is_regular:
                w_rep = rreflect(space, pc, pd, prev.reps[behind_label])
            else:
                w_rep = rep_third_point(
                    space, pc, pd, spec.face_edge_length(c, d),
                    spec.face_edge_length(c, w_label), spec.face_edge_length(d, w_label),
                    prev.reps[behind_label])
            ids = {c: prev.vertex_ids[c], d: prev.vertex_ids[d], w_label: new_vertex(w_rep)}
            reps = {c: pc, d: pd, w_label: w_rep}
            faces.append(PlacedFace(labels=tuple(sorted((c, d, w_label))),
                                    points={}, reps=reps, vertex_ids=ids))

    vertex_points = {vid: chart_point(space, rep) for vid, rep in vertex_reps.items()}
    for face in faces:
        face.points = {lab: vertex_points[vid] for lab, vid in face.vertex_ids.items()}

    dev = Development(space=space, spec=spec, sequence=s, faces=faces,
                      glue_edges=glue_edges, vertex_points=vertex_points,
                      vertex_reps=vertex_reps)
    _attach_symmetry_points(dev)
    _attach_boundary(dev)
    return dev


def _attach_symmetry_points(dev):
    n = len(dev.faces)
    names = ("X1", "Y1", "X2", "Y2", "X1p")
    for name, idx in zip(names, (0, n // 4, n // 2, 3 * n // 4, n)):
        a, b = dev.glue_edge_reps(idx)
        rep = rmidpoint(dev.space, a, b)
        dev.sym_reps[name] = rep
        dev.sym_points[name] = chart_point(dev.space, rep)


def _attach_boundary(dev):
    edge_count = {}
    for face in dev.faces:
        lab = face.labels
        for u, v in ((lab[0], lab[1]), (lab[0], lab[2]), (lab[1], lab[2])):
            key = frozenset((face.vertex_ids[u], face.vertex_ids[v]))
            edge_count[key] = edge_count.get(key, 0) + 1
    boundary_edges = [tuple(k) for k, cnt in edge_count.items() if cnt == 1]
    adj = {}
    for u, v in boundary_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = dev.glue_edges[0][1][0]
    cycle = [start]
    prev = None
    cur = start
    while True:
        nbrs = adj[cur]
        nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt

    vid_label = {}
    vid_faces = {}
    for face in dev.faces:
        for label, vid in face.vertex_ids.items():
            vid_label[vid] = label
            vid_faces.setdefault(vid, []).append(face)

    boundary = []
    for vid in cycle:
        rep = dev.vertex_reps[vid]
        label = vid_label[vid]
        total = 0.0
        for face in vid_faces[vid]:
            others = [l for l in face.labels if l != label]
            total += rangle(dev.space, rep, face.reps[others[0]], face.reps[others[1]])
        boundary.append((vid, label, dev.vertex_points[vid], total))
    dev.boundary = boundary


def _center_involution(token):
    """Vertex involution of the half-turn about the midpoint of an edge."""
    a, b = int(token[0]), int(token[1])
    rest = sorted(set((1, 2, 3, 4)) - {a, b})
    return {a: b, b: a, rest[0]: rest[1], rest[1]: rest[0]}


def symmetry_check(dev, tol=1e-8):
    """Half-turn symmetry of the chain about X2, Y1, Y2 (regular specs).

    True iff for each center the adjacent quarter (resp. half) developments
    map onto each other vertex-wise within tol.
    """
    n = len(dev.faces)
    if n % 4 != 0:
        return False
    checks = (("Y1", n // 4, n // 4), ("X2", n // 2, n // 2), ("Y2", 3 * n // 4, n // 4))
    for name, c, span in checks:
        center = dev.sym_reps[name]
        sigma = _center_involution(dev.glue_edges[c][0])
        for k in range(span):
            src = dev.faces[c - 1 - k]
            dst = dev.faces[c + k]
            if tuple(sorted(sigma[l] for l in src.labels)) != dst.labels:
                return False
            for label, rep in src.reps.items():
                image = rhalf_turn(dev.space, center, rep)
                target = dst.reps[sigma[label]]
                if rdistance(dev.space, image, target) > tol:
                    return False
    return True
