"""Monomial ideals as finite antichains of exponent vectors.

All operations here are characteristic-free combinatorics: an ideal is its
set of minimal generators, ``x^a`` divides ``x^b`` iff ``a <= b``
componentwise, and products/intersections are computed on exponents.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from . import exactgeom as eg
from .errors import BudgetExceeded, ResurgiaError

Exponent = tuple[int, ...]

DEFAULT_GEN_CEILING = 10**5
MAX_COVERS = 10**4
MAX_VARIABLES = 20


def generator_ceiling() -> int:
    """Generator-count ceiling; ``RESURGIA_GEN_CEILING`` overrides the default."""
    raw = os.environ.get("RESURGIA_GEN_CEILING")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ResurgiaError(f"RESURGIA_GEN_CEILING is not an integer: {raw!r}") from None
    return DEFAULT_GEN_CEILING


@dataclass(frozen=True)
class Ring:
    variables: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if not names:
            raise ResurgiaError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ResurgiaError(f"duplicate variable names: {names}")
        for v in names:
            if not isinstance(v, str) or not v.isidentifier():
                raise ResurgiaError(f"invalid variable name: {v!r}")

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ResurgiaError(f"unknown variable {name!r}") from None

    def monomial_text(self, a: Sequence[int]) -> str:
        parts = []
        for name, e in zip(self.variables, a):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal(gens: Iterable[Exponent]) -> tuple[Exponent, ...]:
    ordered = sorted(set(gens), key=lambda g: (sum(g), g))
    kept: list[Exponent] = []
    for g in ordered:
        if not any(_divides(h, g) for h in kept):
            kept.append(g)
    if len(kept) > generator_ceiling():
        raise BudgetExceeded(f"{len(kept)} generators exceed the ceiling {generator_ceiling()}")
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators in lexicographic order.

    The zero ideal has no generators; the unit ideal is ``{(0, ..., 0)}``.
    Construct through :func:`minimalize` or the helpers below, which enforce
    minimality.
    """

    ring: Ring
    gens: tuple[Exponent, ...]

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.n,)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def __contains__(self, a) -> bool:
        return membership(self, a)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.ring.monomial_text(g) for g in self.gens) + ")"

    def to_text(self) -> str:
        gens = ", ".join(self.ring.monomial_text(g) for g in self.gens)
        return f"vars={','.join(self.ring.variables)}; gens={gens}"

    def to_json(self) -> dict:
        return {"ring": list(self.ring.variables), "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        try:
            ring = Ring(tuple(data["ring"]))
            gens = data["gens"]
        except (KeyError, TypeError) as exc:
            raise ResurgiaError(f"malformed ideal JSON: {exc}") from None
        return minimalize(ring, gens)


def minimalize(ring: Ring, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    checked = []
    for g in gens:
        g = tuple(g)
        if len(g) != ring.n:
            raise ResurgiaError(f"exponent vector {g} does not match {ring.n} variables")
        if any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in g):
            raise ResurgiaError(f"exponents must be nonnegative integers: {g}")
        checked.append(g)
    return MonomialIdeal(ring, _minimal(checked))


def unit_ideal(ring: Ring) -> MonomialIdeal:
    return MonomialIdeal(ring, ((0,) * ring.n,))


def prime_ideal(ring: Ring, support: Iterable[int]) -> MonomialIdeal:
    """The monomial prime generated by the variables with the given indices."""
    idx = sorted(set(support))
    if not idx:
        raise ResurgiaError("a monomial prime needs at least one variable")
    return minimalize(ring, [tuple(int(i == j) for j in range(ring.n)) for i in idx])


def _same_ring(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.ring != J.ring:
        raise ResurgiaError(f"ring mismatch: {I.ring.variables} vs {J.ring.variables}")


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, _minimal(
        tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens))


def power(I: MonomialIdeal, s: int) -> MonomialIdeal:
    if s < 0:
        raise ResurgiaError("power exponent must be nonnegative")
    result = unit_ideal(I.ring)
    base = I
    while s:
        if s & 1:
            result = product(result, base)
        s >>= 1
        if s:
            base = product(base, base)
    return result


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, _minimal(I.gens + J.gens))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return MonomialIdeal(I.ring, _minimal(
        tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens))


def membership(I: MonomialIdeal, a: Sequence[int]) -> bool:
    a = tuple(a)
    if len(a) != I.n:
        raise ResurgiaError("exponent vector has the wrong length")
    return any(_divides(g, a) for g in I.gens)


def ideal_contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff ``J ⊆ I``."""
    _same_ring(I, J)
    return all(membership(I, g) for g in J.gens)


def newton_polyhedron(I: MonomialIdeal) -> eg.QPolyhedron:
    if I.is_zero:
        raise ResurgiaError("the zero ideal has no Newton polyhedron")
    return eg.hull_plus_orthant(I.gens)


def closure_membership(I: MonomialIdeal, a: Sequence[int]) -> bool:
    """Decide ``x^a`` in the integral closure of I via the Newton polyhedron."""
    return newton_polyhedron(I).contains_point(a)


# --------------------------------------------------------------------------
# squarefree / symbolic machinery
# --------------------------------------------------------------------------

def radical(I: MonomialIdeal) -> MonomialIdeal:
    return minimalize(I.ring, [tuple(min(e, 1) for e in g) for g in I.gens])


def _require_squarefree(I: MonomialIdeal) -> None:
    if not I.is_squarefree:
        raise ResurgiaError(f"ideal {I} is not squarefree")


def _require_proper_nonzero(I: MonomialIdeal) -> None:
    if I.is_zero:
        raise ResurgiaError("the zero ideal has no minimal primes here")
    if I.is_unit:
        raise ResurgiaError("the unit ideal has no minimal primes")


def _transversals(I: MonomialIdeal) -> list[frozenset[int]]:
    if I.n > MAX_VARIABLES:
        raise BudgetExceeded(f"{I.n} variables exceed the transversal budget {MAX_VARIABLES}")
    covers = [0]
    for g in I.gens:
        edge = [i for i, e in enumerate(g) if e]
        grown = set()
        for c in covers:
            if any(c >> i & 1 for i in edge):
                grown.add(c)
            else:
                grown.update(c | 1 << i for i in edge)
        ordered = sorted(grown, key=lambda c: (c.bit_count(), c))
        covers = []
        for c in ordered:
            if not any(k & c == k for k in covers):
                covers.append(c)
        if len(covers) > MAX_COVERS:
            raise BudgetExceeded(f"more than {MAX_COVERS} minimal covers")
    return [frozenset(i for i in range(I.n) if c >> i & 1) for c in covers]


def minimal_primes(I: MonomialIdeal) -> list[frozenset[int]]:
    """Minimal primes of a squarefree ideal, as sets of variable indices.

    These are the minimal transversals of the hypergraph whose edges are the
    generator supports.  Sorted by (size, sorted indices).
    """
    _require_squarefree(I)
    _require_proper_nonzero(I)
    return sorted(_transversals(I), key=lambda s: (len(s), sorted(s)))


def minimal_primes_of_radical(I: MonomialIdeal) -> list[frozenset[int]]:
    _require_proper_nonzero(I)
    return minimal_primes(radical(I))


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    _require_squarefree(I)
    return minimalize(I.ring, [tuple(int(i in p) for i in range(I.n))
                               for p in minimal_primes(I)])


def localize_at(I: MonomialIdeal, support: Iterable[int]) -> MonomialIdeal:
    """Set every variable outside ``support`` to 1.

    For a minimal prime ``P_S`` of I this is the monomial generator set of the
    ``P_S``-primary component of I.
    """
    keep = set(support)
    return minimalize(I.ring, [tuple(e if i in keep else 0 for i, e in enumerate(g))
                               for g in I.gens])


def _prime_power(ring: Ring, support: frozenset[int], m: int) -> MonomialIdeal:
    gens = []
    for combo in combinations_with_replacement(sorted(support), m):
        a = [0] * ring.n
        for i in combo:
            a[i] += 1
        gens.append(tuple(a))
    return minimalize(ring, gens)


def symbolic_power(I: MonomialIdeal, m: int) -> MonomialIdeal:
    """``I^(m)``: intersection over minimal primes P of ``(I R_P ∩ R)^m``.

    For squarefree I each localized component is P itself, so this is the
    intersection of ``P^m``.  Embedded components are ignored.
    """
    if m < 1:
        raise ResurgiaError("symbolic power exponent must be at least 1")
    primes = minimal_primes_of_radical(I)
    result = None
    for p in primes:
        comp = _prime_power(I.ring, p, m) if I.is_squarefree else power(localize_at(I, p), m)
        result = comp if result is None else intersect(result, comp)
    return result


def symbolic_membership(I: MonomialIdeal, m: int, a: Sequence[int]) -> bool:
    """Membership in ``I^(m)`` for squarefree I without building generators."""
    _require_squarefree(I)
    return all(sum(a[i] for i in p) >= m for p in minimal_primes(I))


def symbolic_polyhedron(I: MonomialIdeal) -> eg.QPolyhedron:
    """Intersection of the Newton polyhedra of the minimal primary components.

    For squarefree I this is ``{a >= 0 : sum_{i in P} a_i >= 1}`` over minimal
    primes P.
    """
    primes = minimal_primes_of_radical(I)
    if I.is_squarefree:
        cons = [(tuple(int(i in p) for i in range(I.n)), 1) for p in primes]
    else:
        cons = [f for p in primes
                for f in newton_polyhedron(localize_at(I, p)).noncoordinate_facets]
    return eg.from_halfspaces(I.n, cons)


def order(I: MonomialIdeal, w: Sequence) -> Fraction:
    """Monomial valuation ``min <w, g>`` over generators."""
    if I.is_zero:
        raise ResurgiaError("the zero ideal has infinite order")
    return min(Fraction(eg.dot(w, g)) for g in I.gens)
