"""Graded families of monomial ideals, truncations and Newton–Okounkov bodies.

A family is a :class:`GradedFamily` wrapping one declarative rule.  Members
are computed lazily and memoized behind a lock, so ``member`` behaves as a
pure function of ``(rule, i)`` and may be called from several threads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Optional, Sequence, Union

from . import exactgeom as eg
from . import monomials as mono
from .errors import ResurgiaError
from .monomials import MonomialIdeal

DEFAULT_BODY_BUDGET = 12


# --------------------------------------------------------------------------
# rules
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Powers:
    ideal: MonomialIdeal


@dataclass(frozen=True)
class SymbolicPowers:
    ideal: MonomialIdeal


@dataclass(frozen=True)
class ClosurePowers:
    """Integral closures of powers; supports membership queries only."""
    ideal: MonomialIdeal


@dataclass(frozen=True)
class Piecewise:
    """``a_i = I^e(i)`` with ``e(i) = ceil((alpha*i + beta) / gamma)``, except
    at finitely many overridden indices.

    ``beta >= 0`` keeps the exponent map superadditive, so the non-overridden
    part is automatically a graded family.
    """
    ideal: MonomialIdeal
    alpha: int = 1
    beta: int = 0
    gamma: int = 1
    overrides: tuple[tuple[int, MonomialIdeal], ...] = ()

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.gamma < 1:
            raise ResurgiaError("piecewise rule needs alpha >= 0, beta >= 0, gamma >= 1")
        ov = tuple(sorted(dict(self.overrides).items()))
        object.__setattr__(self, "overrides", ov)
        for k, J in ov:
            if k < 1:
                raise ResurgiaError("override indices start at 1")
            if J.ring != self.ideal.ring:
                raise ResurgiaError("override ideal lives in a different ring")

    def exponent(self, i: int) -> int:
        return ceil(Fraction(self.alpha * i + self.beta, self.gamma))


@dataclass(frozen=True)
class Truncated:
    parent: "GradedFamily"
    n: int


Rule = Union[Powers, SymbolicPowers, ClosurePowers, Piecewise, Truncated]


class GradedFamily:
    def __init__(self, rule: Rule):
        if isinstance(rule, Truncated):
            if rule.n < 1:
                raise ResurgiaError("truncation level must be at least 1")
            if not rule.parent.supports_generators:
                raise ResurgiaError("cannot truncate a membership-only family")
            self.ring = rule.parent.ring
        else:
            self.ring = rule.ideal.ring
            if rule.ideal.is_zero:
                raise ResurgiaError("family base ideal must be nonzero")
        self.rule = rule
        self._memo: dict[int, MonomialIdeal] = {}
        self._np_memo: dict[int, eg.QPolyhedron] = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"GradedFamily({describe(self)})"

    @property
    def supports_generators(self) -> bool:
        return not isinstance(self.rule, ClosurePowers)

    def member(self, i: int) -> MonomialIdeal:
        if i < 1:
            raise ResurgiaError("family members are indexed from 1")
        if not self.supports_generators:
            raise ResurgiaError("closure-power families support membership queries only")
        with self._lock:
            if i not in self._memo:
                self._memo[i] = self._compute(i)
            return self._memo[i]

    def _compute(self, i: int) -> MonomialIdeal:
        rule = self.rule
        if isinstance(rule, Powers):
            return mono.power(rule.ideal, i)
        if isinstance(rule, SymbolicPowers):
            return mono.symbolic_power(rule.ideal, i)
        if isinstance(rule, Piecewise):
            ov = dict(rule.overrides)
            return ov[i] if i in ov else mono.power(rule.ideal, rule.exponent(i))
        # Truncated: every product term has a factor of index <= n, so
        # a_{n,k} = sum_{i <= n} a_i * a_{n,k-i} for k > n.
        parent, n = rule.parent, rule.n
        if i <= n:
            return parent.member(i)
        acc = None
        for j in range(1, min(n, i - 1) + 1):
            term = mono.product(parent.member(j), self.member(i - j))
            acc = term if acc is None else mono.ideal_sum(acc, term)
        return acc

    def membership(self, i: int, a: Sequence[int]) -> bool:
        if isinstance(self.rule, ClosurePowers):
            return self.newton_polyhedron(i).contains_point(a)
        return mono.membership(self.member(i), a)

    def closure_membership(self, i: int, a: Sequence[int]) -> bool:
        return self.newton_polyhedron(i).contains_point(a)

    def newton_polyhedron(self, i: int) -> eg.QPolyhedron:
        with self._lock:
            if i not in self._np_memo:
                if isinstance(self.rule, (Powers, ClosurePowers)):
                    P = eg.scale(i, mono.newton_polyhedron(self.rule.ideal))
                else:
                    P = mono.newton_polyhedron(self.member(i))
                self._np_memo[i] = P
            return self._np_memo[i]

    def order(self, i: int, w: Sequence) -> Fraction:
        """``v(a_i) = min <w, x>`` over exponents of ``a_i``."""
        if isinstance(self.rule, ClosurePowers):
            return min(Fraction(eg.dot(w, v)) for v in self.newton_polyhedron(i).vertices)
        return mono.order(self.member(i), w)


def powers(I: MonomialIdeal) -> GradedFamily:
    return GradedFamily(Powers(I))


def symbolic_powers(I: MonomialIdeal) -> GradedFamily:
    return GradedFamily(SymbolicPowers(I))


def closure_powers(I: MonomialIdeal) -> GradedFamily:
    return GradedFamily(ClosurePowers(I))


def piecewise(I: MonomialIdeal, alpha=1, beta=0, gamma=1, overrides=None) -> GradedFamily:
    return GradedFamily(Piecewise(I, alpha, beta, gamma, tuple((overrides or {}).items())))


def truncate(F: GradedFamily, n: int) -> GradedFamily:
    return GradedFamily(Truncated(F, n))


def member(F: GradedFamily, i: int) -> MonomialIdeal:
    return F.member(i)


def describe(F: GradedFamily) -> str:
    r = F.rule
    if isinstance(r, Powers):
        return f"powers{r.ideal}"
    if isinstance(r, SymbolicPowers):
        return f"symbolic{r.ideal}"
    if isinstance(r, ClosurePowers):
        return f"closure-powers{r.ideal}"
    if isinstance(r, Piecewise):
        ov = ", ".join(f"{k}->{J}" for k, J in r.overrides)
        return f"piecewise{r.ideal}[ceil(({r.alpha}i+{r.beta})/{r.gamma}); {ov}]"
    return f"truncate({describe(r.parent)}, {r.n})"


def graded_violation(F: GradedFamily, n: int) -> Optional[tuple[int, int]]:
    """First ``(p, q)`` with ``p + q <= n`` and ``a_p a_q ⊄ a_{p+q}``, if any."""
    for total in range(2, n + 1):
        for p in range(1, total // 2 + 1):
            q = total - p
            prod = mono.product(F.member(p), F.member(q))
            if not mono.ideal_contains(F.member(total), prod):
                return (p, q)
    return None


def validate_graded(F: GradedFamily, n: int) -> bool:
    return graded_violation(F, n) is None


def is_filtration(F: GradedFamily, n: int) -> bool:
    """Check ``a_i ⊇ a_{i+1}`` for ``i < n``."""
    return all(mono.ideal_contains(F.member(i), F.member(i + 1)) for i in range(1, n))


# --------------------------------------------------------------------------
# Newton–Okounkov bodies
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BodyCertificate:
    """A body plus an honest record of how it was obtained.

    ``status`` is ``"exact"`` or ``"approximate"``.  For exact bodies,
    ``index`` is the verified stabilization level k, or ``None`` when the
    body comes from a closed form for the rule.  Approximate bodies are the
    hull of ``(1/k) NP(a_k)`` for ``k <= budget`` and sit inside the true body.
    """
    status: str
    body: eg.QPolyhedron
    index: Optional[int] = None
    budget: Optional[int] = None

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"

    def to_json(self) -> dict:
        return {"status": self.status, "index": self.index, "budget": self.budget,
                "body": self.body.to_json()}


def stabilization_index(body_at: Callable[[int], eg.QPolyhedron], budget: int,
                        available: Optional[Callable[[int], bool]] = None) -> Optional[int]:
    """Smallest ``k <= budget`` whose scaled body has stabilized.

    Requires ``body_at(2k) == 2 body_at(k)`` and ``body_at(3k) == 3 body_at(k)``,
    and additionally that ``(1/j) body_at(j) ⊆ (1/k) body_at(k)`` for every
    ``j <= budget``; the last check rules out levels that only look stable on
    their own multiples.
    """
    have = available or (lambda i: True)
    for k in range(1, budget + 1):
        if not (have(k) and have(2 * k) and have(3 * k)):
            continue
        base = body_at(k)
        if body_at(2 * k) != eg.scale(2, base) or body_at(3 * k) != eg.scale(3, base):
            continue
        limit = eg.scale(Fraction(1, k), base)
        if all(eg.contains(limit, eg.scale(Fraction(1, j), body_at(j)))
               for j in range(1, budget + 1) if have(j)):
            return k
    return None


def union_hull(body_at: Callable[[int], eg.QPolyhedron], indices) -> eg.QPolyhedron:
    pts = [tuple(c / k for c in v) for k in indices for v in body_at(k).vertices]
    return eg.hull_plus_orthant(pts)


def _piecewise_body(rule: Piecewise) -> eg.QPolyhedron:
    # closure of the union of (e(k)/k) NP(I): with beta >= 0 the infimum of
    # e(k)/k is alpha/gamma, approached as k grows.
    base = mono.newton_polyhedron(rule.ideal)
    lim = Fraction(rule.alpha, rule.gamma)
    pts = [(0,) * base.dim] if lim == 0 else [tuple(lim * c for c in v) for v in base.vertices]
    for k, J in rule.overrides:
        pts.extend(tuple(Fraction(c, k) for c in v) for v in mono.newton_polyhedron(J).vertices)
    return eg.hull_plus_orthant(pts)


def okounkov_body(F: GradedFamily, budget: int = DEFAULT_BODY_BUDGET) -> BodyCertificate:
    rule = F.rule
    if isinstance(rule, (Powers, ClosurePowers)):
        return BodyCertificate("exact", mono.newton_polyhedron(rule.ideal), index=1)
    if isinstance(rule, SymbolicPowers):
        return BodyCertificate("exact", mono.symbolic_polyhedron(rule.ideal))
    k = stabilization_index(F.newton_polyhedron, budget)
    if isinstance(rule, Piecewise):
        body = _piecewise_body(rule)
        if k is not None and eg.scale(Fraction(1, k), F.newton_polyhedron(k)) == body:
            return BodyCertificate("exact", body, index=k)
        return BodyCertificate("exact", body)
    if k is not None:
        return BodyCertificate("exact", eg.scale(Fraction(1, k), F.newton_polyhedron(k)), index=k)
    return BodyCertificate("approximate", union_hull(F.newton_polyhedron, range(1, budget + 1)),
                           budget=budget)


def okounkov_truncation_profile(F: GradedFamily, n_max: int,
                                budget: int = DEFAULT_BODY_BUDGET) -> list[tuple[int, eg.QPolyhedron]]:
    return [(n, okounkov_body(truncate(F, n), budget).body) for n in range(1, n_max + 1)]


# --------------------------------------------------------------------------
# JSON family specs
# --------------------------------------------------------------------------

def family_from_json(data: dict) -> GradedFamily:
    try:
        kind = data["kind"]
        if kind == "truncate":
            return truncate(family_from_json(data["parent"]), int(data["n"]))
        ideal = MonomialIdeal.from_json(data["ideal"])
    except (KeyError, TypeError) as exc:
        raise ResurgiaError(f"malformed family JSON: {exc}") from None
    if kind == "powers":
        return powers(ideal)
    if kind == "symbolic":
        return symbolic_powers(ideal)
    if kind == "closure_powers":
        return closure_powers(ideal)
    if kind == "piecewise":
        overrides = {int(k): MonomialIdeal.from_json(v)
                     for k, v in data.get("overrides", {}).items()}
        return piecewise(ideal, int(data.get("alpha", 1)), int(data.get("beta", 0)),
                         int(data.get("gamma", 1)), overrides)
    raise ResurgiaError(f"unknown family kind {kind!r}")


def family_to_json(F: GradedFamily) -> dict:
    r = F.rule
    if isinstance(r, Truncated):
        return {"kind": "truncate", "parent": family_to_json(r.parent), "n": r.n}
    kind = {Powers: "powers", SymbolicPowers: "symbolic",
            ClosurePowers: "closure_powers", Piecewise: "piecewise"}[type(r)]
    out = {"kind": kind, "ideal": r.ideal.to_json()}
    if isinstance(r, Piecewise):
        out.update(alpha=r.alpha, beta=r.beta, gamma=r.gamma,
                   overrides={str(k): J.to_json() for k, J in r.overrides})
    return out
