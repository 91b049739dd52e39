"""Exact Newton polytopes in vertex representation.

A :class:`Polytope` is the convex hull of finitely many rational points and
is stored by its vertices only. Over Z_max and T_Q point coordinate 0 is the
coefficient exponent, so ``t^c x^n`` becomes the point ``(c, n)``. Every
geometric question is reduced to exact linear feasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import InputError
from .exactnum import LinSystem, eq, ge, lin_feasible, rat, rat_str
from .tropoly import TropPoly

RatPoint = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: Tuple[RatPoint, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __add__(self, other):
        return polytope_add(self, other)

    def __mul__(self, other):
        return polytope_mul(self, other)


def _points(points, dim=None):
    pts = []
    for p in points:
        p = tuple(rat(v) for v in p)
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise InputError(f"mixed dimensions {dim} and {len(p)}")
        pts.append(p)
    return pts, dim


def _diff(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _strictly_extreme(p, others, dim):
    # p is a vertex iff some u has u.p > u.q for every other q
    if not others:
        return True
    return lin_feasible(LinSystem(dim, [ge(_diff(p, q), 1) for q in others]))


def _greedy_vertices(pts):
    """Points that are the unique maximiser of a cheap direction."""
    found = set()
    dim = len(pts[0])
    dirs = []
    for i in range(dim):
        for s in (1, -1):
            e = [0] * dim
            e[i] = s
            dirs.append(e)
    # a few integer directions in general position
    for j in range(1, 4):
        dirs.append([(j * (i + 1)) ** 2 % 7 - 3 for i in range(dim)])
        dirs.append([-v for v in dirs[-1]])
    for u in dirs:
        vals = [sum(a * b for a, b in zip(u, p)) for p in pts]
        best = max(vals)
        top = [p for p, v in zip(pts, vals) if v == best]
        if len(top) == 1:
            found.add(top[0])
    return found


def hull_vertices(points, dim=None) -> Polytope:
    """Canonical vertex set of the convex hull of ``points``."""
    pts, dim = _points(points, dim)
    if dim is None:
        raise InputError("dimension of an empty point set is unknown; pass dim")
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return Polytope(dim, tuple(pts))
    sure = _greedy_vertices(pts)
    # a non-vertex can be dropped from every later test
    alive = list(pts)
    for p in pts:
        if p in sure:
            continue
        others = [q for q in alive if q != p]
        if not _strictly_extreme(p, others, dim):
            alive.remove(p)
    return Polytope(dim, tuple(alive))


def empty_polytope(dim: int) -> Polytope:
    return Polytope(dim, ())


def poly_newt(f: TropPoly) -> Polytope:
    return hull_vertices(f.points(), f.ctx.ambient)


def _same_dim(P: Polytope, Q: Polytope):
    if P.dim != Q.dim:
        raise InputError(f"dimension mismatch {P.dim} vs {Q.dim}")


def polytope_add(P: Polytope, Q: Polytope) -> Polytope:
    _same_dim(P, Q)
    return hull_vertices(P.vertices + Q.vertices, P.dim)


def polytope_mul(P: Polytope, Q: Polytope) -> Polytope:
    _same_dim(P, Q)
    sums = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return hull_vertices(sums, P.dim)


def is_hat_vertex(v, vertices) -> bool:
    """``v`` maximises some functional with ``u0 = 1`` over ``vertices``."""
    dim = len(v)
    lead = [1] + [0] * (dim - 1)
    cons = [eq(lead, 1)] + [ge(_diff(v, w), 0) for w in vertices if w != v]
    return lin_feasible(LinSystem(dim, cons))


def hat_vertices(P: Polytope) -> Polytope:
    """The vertices of ``P`` that lie on its upper hull along coordinate 0."""
    if P.is_empty:
        return P
    if P.dim < 1:
        raise InputError("hat needs a coefficient coordinate")
    top = {}
    for v in P.vertices:
        if v[1:] not in top or v[0] > top[v[1:]]:
            top[v[1:]] = v[0]
    keep = []
    for v in P.vertices:
        # a vertex straight below another one is never on the hat
        if v[0] < top[v[1:]]:
            continue
        if is_hat_vertex(v, P.vertices):
            keep.append(v)
    return Polytope(P.dim, tuple(keep))


def polytope_eq(P: Polytope, Q: Polytope) -> bool:
    _same_dim(P, Q)
    return P.vertices == Q.vertices


def hat_eq(P: Polytope, Q: Polytope) -> bool:
    _same_dim(P, Q)
    return hat_vertices(P).vertices == hat_vertices(Q).vertices


# ---------------------------------------------------------------------------
# JSON and SVG
# ---------------------------------------------------------------------------


def polytope_to_json(P: Polytope) -> dict:
    return {"dim": P.dim, "vertices": [[rat_str(v) for v in p] for p in P.vertices]}


def polytope_from_json(doc) -> Polytope:
    if not isinstance(doc, dict) or "dim" not in doc:
        raise InputError("polytope document needs 'dim' and 'vertices'")
    return hull_vertices(doc.get("vertices", []), doc["dim"])


def _cyclic_order(vertices):
    # counter-clockwise order of the vertices of a convex polygon
    if len(vertices) <= 2:
        return list(vertices)
    cx = sum(p[0] for p in vertices) / len(vertices)
    cy = sum(p[1] for p in vertices) / len(vertices)
    return sorted(vertices, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def polytope_svg(P: Polytope, scale: int = 40, margin: int = 30) -> str:
    """SVG drawing of a 2-dimensional polytope on an integer grid."""
    if P.dim != 2:
        raise InputError(f"SVG output needs a 2-dimensional polytope, got dim {P.dim}")

    verts = _cyclic_order(P.vertices)
    xs = [float(p[0]) for p in verts] or [0.0]
    ys = [float(p[1]) for p in verts] or [0.0]
    x0, x1 = math.floor(min(xs)), math.ceil(max(xs))
    y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    w = (x1 - x0) * scale + 2 * margin
    h = (y1 - y0) * scale + 2 * margin

    def sx(x):
        return margin + (float(x) - x0) * scale

    def sy(y):
        return h - margin - (float(y) - y0) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    for gx in range(x0, x1 + 1):
        out.append(f'<line x1="{sx(gx):g}" y1="{sy(y0):g}" x2="{sx(gx):g}" y2="{sy(y1):g}" '
                   'stroke="#ddd"/>')
    for gy in range(y0, y1 + 1):
        out.append(f'<line x1="{sx(x0):g}" y1="{sy(gy):g}" x2="{sx(x1):g}" y2="{sy(gy):g}" '
                   'stroke="#ddd"/>')
    if len(verts) >= 2:
        pts = " ".join(f"{sx(p[0]):g},{sy(p[1]):g}" for p in verts)
        out.append(f'<polygon points="{pts}" fill="#9ecae1" fill-opacity="0.5" stroke="#08519c"/>')
    for p in verts:
        label = f"({rat_str(p[0])},{rat_str(p[1])})"
        out.append(f'<circle cx="{sx(p[0]):g}" cy="{sy(p[1]):g}" r="3" fill="#08519c"/>')
        out.append(f'<text x="{sx(p[0]) + 5:g}" y="{sy(p[1]) - 5:g}" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
