"""Convex compact polygons in the complex plane and their support functions.

Points of the plane are plain Python ``complex`` numbers. A
:class:`ConvexCompact` stores the extreme points of a polygon in
counterclockwise order; singletons and segments are allowed.

The support function of ``K`` is ``H_K(z) = max{Re(z u) : u in K}`` and the
indicator it induces is ``h(theta) = H_K(exp(i theta))``.
"""

from dataclasses import dataclass
import json

import numpy as np

from ._validation import as_complex, pair

#: collinearity / coincidence tolerance used by the hull and containment tests
GEOM_TOL = 1e-12

_SWEEP = np.exp(1j * np.linspace(-np.pi, np.pi, 360, endpoint=False))


@dataclass(frozen=True)
class ConvexCompact:
    """A nonempty convex polygon given by its extreme points (counterclockwise)."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(as_complex(v, "vertex") for v in self.vertices)
        if not verts:
            raise ValueError("a convex compact needs at least one vertex")
        if len(_extreme_points(verts)) != len(verts):
            raise ValueError("vertices are not the distinct extreme points of their hull")
        object.__setattr__(self, "vertices", verts)

    @property
    def array(self):
        return np.array(self.vertices, dtype=complex)

    @property
    def radius(self):
        """max |u| over the set; the exponential type of functions with this diagram."""
        return float(np.max(np.abs(self.array)))

    def support(self, z):
        return support_function(self, z)

    def to_json(self):
        return {"vertices": [pair(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return hull([as_complex(v, "vertex") for v in data["vertices"]])

    @classmethod
    def segment(cls, v, w):
        return hull([v, w])

    @classmethod
    def point(cls, v):
        return cls((complex(v),))


def _dedupe(points):
    out = []
    for p in points:
        if not any(abs(p - q) <= GEOM_TOL * max(1.0, abs(q)) for q in out):
            out.append(p)
    return out


def support_function(K, z):
    """``H_K(z)``; the maximum of the linear functional is attained at a vertex.

    Works elementwise on arrays of ``z``.
    """
    z = np.asarray(z, dtype=complex)
    vals = np.real(np.multiply.outer(z, K.array))
    out = vals.max(axis=-1)
    return float(out) if out.ndim == 0 else out


def indicator_of_set(K, theta):
    return support_function(K, np.exp(1j * np.asarray(theta, dtype=float)))


def translate_set(K, alpha):
    alpha = as_complex(alpha, "alpha")
    return ConvexCompact(tuple(v + alpha for v in K.vertices))


def vertical_extent(K):
    """Spread ``max Im - min Im`` over the set (twice the constant ``c`` of the density bound)."""
    im = K.array.imag
    return float(im.max() - im.min())


def _cross(o, a, b):
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def _extreme_points(pts):
    pts = _dedupe(sorted(set(pts), key=lambda p: (p.real, p.imag)))
    if len(pts) == 1:
        return pts

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    # exact chain first; a tolerance here would misorder nearly vertical runs
    verts = half(pts)[:-1] + half(reversed(pts))[:-1]
    tol = GEOM_TOL * max(1.0, max(abs(p) for p in pts))
    changed = True
    while changed and len(verts) > 2:
        changed = False
        for i in range(len(verts)):
            a, v, b = verts[i - 1], verts[i], verts[(i + 1) % len(verts)]
            if _segment_distance(v, a, b) <= tol:
                del verts[i]
                changed = True
                break
    return verts


def _segment_distance(p, a, b):
    d = b - a
    if d == 0:
        return abs(p - a)
    t = min(1.0, max(0.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(p - (a + t * d))


def hull(points):
    """Extreme points of the convex hull, counterclockwise (monotone chain).

    Near-coincident points and near-collinear middle points are dropped using
    :data:`GEOM_TOL` relative to the coordinate scale.
    """
    pts = [as_complex(p, "point") for p in points]
    if not pts:
        raise ValueError("hull of an empty point set")
    return ConvexCompact(tuple(_extreme_points(pts)))


def _test_directions(L):
    """Outer edge normals of ``L`` (plus the segment direction for degenerate sets) and a 360-angle sweep."""
    verts = L.vertices
    dirs = []
    m = len(verts)
    if m >= 2:
        for j in range(m):
            edge = verts[(j + 1) % m] - verts[j]
            if edge != 0:
                # for a counterclockwise polygon the outer normal is edge * (-i);
                # conj() turns the normal vector into a direction z with Re(z u) = <normal, u>
                normal = (edge * -1j).conjugate()
                dirs.append(normal / abs(normal))
                if m == 2:
                    d = edge.conjugate() / abs(edge)
                    dirs.extend([d, -d])
    return np.concatenate([np.array(dirs, dtype=complex), _SWEEP])


def contains(L, K, tol=GEOM_TOL):
    """True when ``K`` is a subset of ``L``.

    Returns ``(inside, witness_theta)``; the witness is the angle of the
    direction with the largest violation ``H_K - H_L`` (``None`` if inside).
    """
    dirs = _test_directions(L)
    gap = support_function(K, dirs) - support_function(L, dirs)
    scale = max(1.0, K.radius, L.radius)
    j = int(np.argmax(gap))
    if gap[j] <= tol * scale:
        return True, None
    return False, float(np.angle(dirs[j]))


def segment_on_imaginary_axis(a, b):
    """The set ``[-ia, ia] + ib``."""
    return hull([complex(0, b - a), complex(0, b + a)])


def is_horizontal(K, tol=GEOM_TOL):
    """True for singletons and horizontal segments (zero vertical extent)."""
    return vertical_extent(K) <= tol * max(1.0, K.radius)


__all__ = [
    "ConvexCompact",
    "GEOM_TOL",
    "contains",
    "hull",
    "indicator_of_set",
    "is_horizontal",
    "segment_on_imaginary_axis",
    "support_function",
    "translate_set",
    "vertical_extent",
]
