"""Exact polyhedral kernel for upward-closed polyhedra in the nonnegative orthant.

Every body handled here has the form ``conv(V) + R^n_{>=0}``.  Fixing the
recession cone to the full orthant means containment, support values and
polar bodies all reduce to finite vertex/facet computations, which are done
over :class:`fractions.Fraction` with no rounding anywhere.

Both descriptions (minimal vertices and facets) are computed eagerly by an
incremental double-description pass over homogenized cones, so instances are
immutable and safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import BudgetExceeded, ResurgiaError

Point = tuple[Fraction, ...]
Extended = Union[Fraction, float]  # a Fraction, or one of +/-math.inf

POS_INF = math.inf
NEG_INF = -math.inf

MAX_VERTICES = 5000
MAX_DIM = 16


class GeometryError(ResurgiaError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise GeometryError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise GeometryError(f"not a rational: {x!r}") from None
    if isinstance(x, float):
        raise GeometryError("floats are not accepted; pass a Fraction or 'p/q' string")
    raise GeometryError(f"not a rational: {x!r}")


def as_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def format_rational(x: Extended) -> str:
    """Render ``p/q`` in lowest terms, bare integers, or the infinity sentinels."""
    if x == POS_INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return str(Fraction(x))


def parse_extended(text: str) -> Extended:
    if text == "+inf":
        return POS_INF
    if text == "-inf":
        return NEG_INF
    return as_rational(text)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    den = reduce(_lcm, (Fraction(c).denominator for c in vec), 1)
    ints = [int(Fraction(c) * den) for c in vec]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        raise GeometryError("zero vector has no primitive form")
    return tuple(c // g for c in ints)


class Halfspace:
    """The closed halfspace ``<normal, x> >= offset`` in primitive integer form."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal: Sequence, offset=0):
        normal = as_point(normal)
        offset = as_rational(offset)
        if any(c < 0 for c in normal):
            raise GeometryError(f"halfspace normal must be nonnegative: {normal}")
        if all(c == 0 for c in normal):
            raise GeometryError("halfspace normal must be nonzero")
        if offset < 0:
            raise GeometryError("halfspace offset must be nonnegative")
        prim = _primitive(list(normal) + [offset])
        self.normal: tuple[int, ...] = prim[:-1]
        self.offset: int = prim[-1]

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_noncoordinate(self) -> bool:
        return self.offset > 0

    def value(self, x: Sequence) -> Fraction:
        return Fraction(dot(self.normal, x))

    def satisfied_by(self, x: Sequence) -> bool:
        return dot(self.normal, x) >= self.offset

    def key(self) -> tuple:
        return (self.normal, self.offset)

    def __eq__(self, other):
        return isinstance(other, Halfspace) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        terms = " + ".join(f"{c}*x{i}" for i, c in enumerate(self.normal) if c)
        return f"Halfspace({terms} >= {self.offset})"

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": self.offset}


# --------------------------------------------------------------------------
# double description
# --------------------------------------------------------------------------

def _inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise GeometryError("initial constraint block is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _cone_rays(rows: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : <row, y> >= 0 for every row}``.

    ``rows[:d]`` must be linearly independent; they seed a simplicial cone
    whose rays are the columns of the inverse matrix.  The remaining rows are
    added one at a time, combining adjacent positive/negative ray pairs
    (combinatorial adjacency test on tight-constraint bitmasks).
    """
    inv = _inverse([list(r) for r in rows[:d]])
    rays = [_primitive([inv[i][j] for i in range(d)]) for j in range(d)]
    full = (1 << d) - 1
    tight = [full & ~(1 << j) for j in range(d)]

    for k in range(d, len(rows)):
        a = rows[k]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            bit = 1 << k
            tight = [t | bit if vals[i] == 0 else t for i, t in enumerate(tight)]
            continue
        new_rays, new_tight = [], []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if common.bit_count() < d - 2:
                    continue
                if any(w != p and w != q and tight[w] & common == common
                       for w in range(len(rays))):
                    continue
                vp, vq = vals[p], -vals[q]
                comb = [vp * y + vq * x for x, y in zip(rays[p], rays[q])]
                g = reduce(math.gcd, comb, 0)
                new_rays.append(tuple(c // g for c in comb))
                new_tight.append(common | (1 << k))
        bit = 1 << k
        keep = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in keep] + new_rays
        tight = [tight[i] | bit if vals[i] == 0 else tight[i] for i in keep] + new_tight
        if len(rays) > MAX_VERTICES:
            raise BudgetExceeded(f"double description exceeded {MAX_VERTICES} rays")
    return rays


def _prune_dominated(points: list[Point]) -> list[Point]:
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    kept: list[Point] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in kept):
            kept.append(p)
    return kept


def _facets_of_points(points: list[Point], n: int) -> list[Halfspace]:
    rows = [tuple(int(i == j) for j in range(n)) + (0,) for i in range(n)]
    for p in points:
        den = reduce(_lcm, (c.denominator for c in p), 1)
        rows.append(tuple(int(c * den) for c in p) + (den,))
    facets = set()
    for y in _cone_rays(rows, n + 1):
        h, t = y[:n], y[n]
        if all(c == 0 for c in h):
            continue
        facets.add(Halfspace(h, -t))
    return sorted(facets)


def _vertices_of_halfspaces(halfspaces: list[Halfspace], n: int) -> list[Point]:
    rows = [tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)]
    rows.extend(h.normal + (-h.offset,) for h in halfspaces)
    verts = set()
    for r in _cone_rays(rows, n + 1):
        if r[n] > 0:
            verts.add(tuple(Fraction(c, r[n]) for c in r[:n]))
    return sorted(verts)


# --------------------------------------------------------------------------
# QPolyhedron
# --------------------------------------------------------------------------

class QPolyhedron:
    """Upward-closed rational polyhedron ``conv(vertices) + R^dim_{>=0}``.

    Holds both the minimal vertex list and the facet list (coordinate facets
    ``x_i >= 0`` included when they are genuine facets).  An empty body is a
    distinct value with no vertices; build it with :meth:`empty`.  Use the
    module-level constructors rather than calling ``__init__`` directly.
    """

    __slots__ = ("dim", "vertices", "facets", "_tag")

    def __init__(self, dim: int, vertices: Sequence[Point], facets: Sequence[Halfspace]):
        self.dim = dim
        self.vertices: tuple[Point, ...] = tuple(sorted(vertices))
        self.facets: tuple[Halfspace, ...] = tuple(sorted(facets))
        self._tag = (dim, self.vertices, tuple(f.key() for f in self.facets))

    @classmethod
    def empty(cls, dim: int) -> "QPolyhedron":
        return cls(dim, (), ())

    @classmethod
    def orthant(cls, dim: int) -> "QPolyhedron":
        return hull_plus_orthant([(0,) * dim])

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def canonical_tag(self) -> tuple:
        return self._tag

    @property
    def noncoordinate_facets(self) -> tuple[Halfspace, ...]:
        return tuple(f for f in self.facets if f.is_noncoordinate)

    @property
    def contains_origin(self) -> bool:
        return not self.is_empty and not self.noncoordinate_facets

    def contains_point(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = as_point(x)
        return all(c >= 0 for c in x) and all(f.satisfied_by(x) for f in self.facets)

    def __eq__(self, other):
        return isinstance(other, QPolyhedron) and self._tag == other._tag

    def __hash__(self):
        return hash(self._tag)

    def __repr__(self):
        if self.is_empty:
            return f"QPolyhedron.empty({self.dim})"
        vs = ", ".join("(" + ", ".join(map(str, v)) + ")" for v in self.vertices)
        return f"QPolyhedron(dim={self.dim}, vertices=[{vs}])"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "facets": [f.to_json() for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QPolyhedron":
        try:
            dim = int(data["dim"])
            verts = [as_point(v) for v in data["vertices"]]
        except (KeyError, TypeError) as exc:
            raise GeometryError(f"malformed polyhedron JSON: {exc}") from None
        if not verts:
            return cls.empty(dim)
        poly = hull_plus_orthant(verts)
        if poly.dim != dim:
            raise GeometryError("polyhedron JSON: vertex length disagrees with dim")
        if "facets" in data:
            given = sorted(Halfspace(f["normal"], f["offset"]) for f in data["facets"])
            if tuple(given) != poly.facets:
                raise GeometryError("polyhedron JSON: facets inconsistent with vertices")
        return poly


def _check_dim(dim: int) -> None:
    if dim < 1:
        raise GeometryError("dimension must be positive")
    if dim > MAX_DIM:
        raise BudgetExceeded(f"dimension {dim} exceeds ceiling {MAX_DIM}")


def hull_plus_orthant(points: Iterable[Sequence]) -> QPolyhedron:
    pts = [as_point(p) for p in points]
    if not pts:
        raise GeometryError("hull_plus_orthant needs at least one point")
    n = len(pts[0])
    _check_dim(n)
    for p in pts:
        if len(p) != n:
            raise GeometryError("points have mismatched dimensions")
        if any(c < 0 for c in p):
            raise GeometryError(f"point {p} has a negative coordinate")
    pts = _prune_dominated(pts)
    if len(pts) > MAX_VERTICES:
        raise BudgetExceeded(f"{len(pts)} candidate vertices exceed {MAX_VERTICES}")
    facets = _facets_of_points(pts, n)
    vertices = _vertices_of_halfspaces(facets, n)
    return QPolyhedron(n, vertices, facets)


def from_halfspaces(dim: int, constraints: Iterable) -> QPolyhedron:
    """Intersect ``<h, x> >= c`` constraints with the orthant.

    Constraints are :class:`Halfspace` objects or ``(normal, offset)`` pairs.
    A zero normal with a positive offset is infeasible and yields the empty
    body; with a nonpositive offset it is dropped.
    """
    _check_dim(dim)
    hs = []
    for c in constraints:
        if not isinstance(c, Halfspace):
            normal, offset = c
            normal, offset = as_point(normal), as_rational(offset)
            if len(normal) != dim:
                raise GeometryError("constraint normal has the wrong dimension")
            if all(x == 0 for x in normal):
                if offset > 0:
                    return QPolyhedron.empty(dim)
                continue
            if offset <= 0 and all(x >= 0 for x in normal):
                continue
            c = Halfspace(normal, offset)
        if c.dim != dim:
            raise GeometryError("constraint normal has the wrong dimension")
        hs.append(c)
    vertices = _vertices_of_halfspaces(sorted(set(hs)), dim)
    if not vertices:
        return QPolyhedron.empty(dim)
    return QPolyhedron(dim, vertices, _facets_of_points(vertices, dim))


def _same_dim(P: QPolyhedron, Q: QPolyhedron) -> None:
    if P.dim != Q.dim:
        raise GeometryError(f"dimension mismatch: {P.dim} vs {Q.dim}")


def polar(P: QPolyhedron) -> QPolyhedron:
    """``{a : <a, b> >= 1 for all b in P}``; empty when P contains the origin."""
    if P.is_empty:
        raise GeometryError("the polar of the empty body is not upward-closed")
    nc = P.noncoordinate_facets
    if not nc:
        return QPolyhedron.empty(P.dim)
    return hull_plus_orthant([tuple(Fraction(h, f.offset) for h in f.normal) for f in nc])


def bipolar_check(P: QPolyhedron) -> bool:
    if P.is_empty or P.contains_origin:
        raise GeometryError("bipolar check needs a nonempty origin-free body")
    return polar(polar(P)) == P


def scale(lam, P: QPolyhedron) -> QPolyhedron:
    lam = as_rational(lam)
    if lam <= 0:
        raise GeometryError("scale factor must be positive")
    if P.is_empty:
        return P
    vertices = [tuple(lam * c for c in v) for v in P.vertices]
    facets = [Halfspace(f.normal, lam * f.offset) for f in P.facets]
    return QPolyhedron(P.dim, vertices, facets)


def contains(P: QPolyhedron, Q: QPolyhedron) -> bool:
    """Decide ``Q ⊆ P``."""
    _same_dim(P, Q)
    if Q.is_empty:
        return True
    if P.is_empty:
        return False
    return all(f.satisfied_by(v) for v in Q.vertices for f in P.facets)


def sup_noncontainment_witness(P: QPolyhedron, Q: QPolyhedron):
    """``sup{λ > 0 : λP ⊄ Q}`` with the (vertex, facet) pair attaining it.

    Returns ``(value, vertex, facet)``; vertex and facet are ``None`` when
    the value is ``-inf`` (Q has no non-coordinate facet).  Ties go to the
    lexicographically smallest vertex, then the smallest facet.
    """
    _same_dim(P, Q)
    if P.is_empty:
        raise GeometryError("sup_noncontainment needs a nonempty first body")
    if Q.is_empty:
        return POS_INF, P.vertices[0], None
    best: Extended = NEG_INF
    witness = (None, None)
    for u in P.vertices:
        for f in Q.noncoordinate_facets:
            s = dot(f.normal, u)
            val = POS_INF if s == 0 else Fraction(f.offset) / s
            if val > best:
                best, witness = val, (u, f)
    return best, witness[0], witness[1]


def sup_noncontainment(P: QPolyhedron, Q: QPolyhedron) -> Extended:
    return sup_noncontainment_witness(P, Q)[0]


def min_pairing_witness(P: QPolyhedron, Q: QPolyhedron):
    _same_dim(P, Q)
    if P.is_empty or Q.is_empty:
        raise GeometryError("min_pairing needs nonempty bodies")
    return min((Fraction(dot(u, v)), u, v) for u in P.vertices for v in Q.vertices)


def min_pairing(P: QPolyhedron, Q: QPolyhedron) -> Fraction:
    """Minimum of ``<u, v>`` over ``u in P``, ``v in Q`` (attained at vertices)."""
    return min_pairing_witness(P, Q)[0]


def first_ray_exit(P: QPolyhedron, x: Sequence) -> Extended:
    """Smallest ``λ > 0`` with ``λ·x`` in P, i.e. where the ray first enters P.

    Returns 0 when P contains the origin (every positive multiple lies in P)
    and ``+inf`` when the ray never reaches P.
    """
    x = as_point(x)
    if len(x) != P.dim:
        raise GeometryError("ray direction has the wrong dimension")
    if any(c < 0 for c in x) or all(c == 0 for c in x):
        raise GeometryError("ray direction must be nonnegative and nonzero")
    if P.is_empty:
        return POS_INF
    best = Fraction(0)
    for f in P.noncoordinate_facets:
        s = dot(f.normal, x)
        if s == 0:
            return POS_INF
        best = max(best, Fraction(f.offset) / s)
    return best


def ray_exit_point(P: QPolyhedron, x: Sequence) -> Point:
    lam = first_ray_exit(P, x)
    if lam == POS_INF:
        raise GeometryError("the ray never meets the body")
    return tuple(lam * c for c in as_point(x))
