"""Resurgence, asymptotic resurgence and skew Waldschmidt constants.

Two routes are provided.  ``asymptotic_resurgence`` evaluates the convex-body
formula ``sup{λ > 0 : λ·Δ(a) ⊄ Δ(b)}`` and cross-checks it against the
reciprocal of the minimal pairing with the polar body.  ``resurgence_search``
scans ``s <= S``, ``r <= R`` for non-containments ``a_s ⊄ b_r`` and therefore
only ever certifies a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactgeom as eg
from . import families as fam
from . import monomials as mono
from .errors import ResurgiaError
from .exactgeom import NEG_INF, POS_INF, Extended
from .families import BodyCertificate, GradedFamily
from .monomials import MonomialIdeal

DEFAULT_SEARCH_S = 24
DEFAULT_SEARCH_R = 24
DEFAULT_TRUNCATION_N = 12


class FormulaMismatch(AssertionError):
    """The support and polar-pairing evaluations of one value disagreed."""


@dataclass(frozen=True)
class ResurgenceResult:
    value: Extended
    exact: bool
    bound_direction: str  # "exact", "lower" or "none"
    method: str
    witness: Optional[dict] = None
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": eg.format_rational(self.value),
            "exact": self.exact,
            "bound_direction": self.bound_direction,
            "method": self.method,
            "witness": self.witness,
            "metadata": self.metadata,
        }


def _point_json(p) -> list[str]:
    return [eg.format_rational(c) for c in p]


def body_formula(A: eg.QPolyhedron, B: eg.QPolyhedron) -> tuple[Extended, Optional[dict]]:
    """``sup{λ : λA ⊄ B}`` with its witness, verified through the polar of B.

    Raises :class:`FormulaMismatch` if the finite value differs from
    ``1 / min <a, b>`` over ``a in A``, ``b in B°``.
    """
    value, vertex, facet = eg.sup_noncontainment_witness(A, B)
    if value == NEG_INF:
        return value, None
    witness = {"vertex": _point_json(vertex)}
    if facet is not None:
        witness["facet"] = facet.to_json()
    if value != POS_INF:
        dual = 1 / eg.min_pairing(A, eg.polar(B))
        if dual != value:
            raise FormulaMismatch(f"support value {value} != polar value {dual}")
        witness["exit_point"] = _point_json(eg.ray_exit_point(B, vertex))
    return value, witness


def _direction(cert_a: BodyCertificate, cert_b: BodyCertificate) -> str:
    # An approximate Δ(a) is an inner approximation, so the sup can only grow
    # with more data; an approximate Δ(b) gives no safe direction.
    if not cert_b.is_exact:
        return "none"
    return "exact" if cert_a.is_exact else "lower"


def asymptotic_resurgence(Fa: GradedFamily, Fb: GradedFamily,
                          budget: int = fam.DEFAULT_BODY_BUDGET) -> ResurgenceResult:
    if Fa.ring != Fb.ring:
        raise ResurgiaError("families live in different rings")
    cert_a = fam.okounkov_body(Fa, budget)
    cert_b = fam.okounkov_body(Fb, budget)
    value, witness = body_formula(cert_a.body, cert_b.body)
    direction = _direction(cert_a, cert_b)
    return ResurgenceResult(
        value=value,
        exact=direction == "exact",
        bound_direction=direction,
        method="body-formula",
        witness=witness,
        metadata={"certificate_a": _cert_meta(cert_a), "certificate_b": _cert_meta(cert_b)},
    )


def _cert_meta(cert: BodyCertificate) -> dict:
    return {"status": cert.status, "index": cert.index, "budget": cert.budget}


def dual_pair_resurgence(a: MonomialIdeal, b: MonomialIdeal) -> Extended:
    """``1 / min <u, v>`` over ``u in SP(a)``, ``v in SP(b^∨)``, for squarefree a, b.

    A zero minimum means no scaling of SP(a) ever fits, so the value is ``+inf``.
    """
    if not (a.is_squarefree and b.is_squarefree):
        raise ResurgiaError("dual_pair_resurgence needs squarefree ideals")
    sp_a = mono.symbolic_polyhedron(a)
    sp_dual = mono.symbolic_polyhedron(mono.alexander_dual(b))
    m = eg.min_pairing(sp_a, sp_dual)
    return POS_INF if m == 0 else 1 / m


def duality_check(a: MonomialIdeal) -> bool:
    d = mono.alexander_dual(a)
    return dual_pair_resurgence(a, a) == dual_pair_resurgence(d, d)


def _contained(Fa: GradedFamily, s: int, Fb: GradedFamily, r: int, closure: bool) -> bool:
    test = Fb.closure_membership if closure else Fb.membership
    return all(test(r, g) for g in Fa.member(s).gens)


def resurgence_search(Fa: GradedFamily, Fb: GradedFamily, S: int = DEFAULT_SEARCH_S,
                      R: int = DEFAULT_SEARCH_R, closure: bool = False) -> ResurgenceResult:
    """Largest ``s/r`` with ``s <= S``, ``r <= R`` and ``a_s ⊄ b_r``.

    Scanning in lexicographic ``(s, r)`` order and only accepting strict
    improvements makes the witness the lexicographically smallest maximizer.
    """
    if Fa.ring != Fb.ring:
        raise ResurgiaError("families live in different rings")
    if S < 1 or R < 1:
        raise ResurgiaError("search bounds must be positive")
    best: Extended = NEG_INF
    witness = None
    for s in range(1, S + 1):
        for r in range(1, R + 1):
            q = Fraction(s, r)
            if q <= best:
                continue
            if not _contained(Fa, s, Fb, r, closure):
                best, witness = q, (s, r)
    return ResurgenceResult(
        value=best,
        exact=False,
        bound_direction="lower",
        method="vertex-search",
        witness=None if witness is None else {"s": witness[0], "r": witness[1]},
        metadata={"S": S, "R": R, "closure": closure},
    )


def truncation_resurgence_profile(Fa: GradedFamily, Fb: GradedFamily,
                                  n_max: int = DEFAULT_TRUNCATION_N,
                                  S: int = DEFAULT_SEARCH_S, R: int = DEFAULT_SEARCH_R,
                                  closure: bool = False) -> list[tuple[int, ResurgenceResult]]:
    return [(n, resurgence_search(fam.truncate(Fa, n), Fb, S, R, closure))
            for n in range(1, n_max + 1)]


def _weight(F: GradedFamily, w: Sequence) -> tuple[Fraction, ...]:
    w = eg.as_point(w)
    if len(w) != F.ring.n:
        raise ResurgiaError("weight vector has the wrong length")
    if any(c < 0 for c in w) or all(c == 0 for c in w):
        raise ResurgiaError("weight vector must be nonnegative and nonzero")
    return w


def waldschmidt_sequence(F: GradedFamily, w: Sequence, budget: int) -> list[Fraction]:
    """Running minima ``min_{k <= K} v(a_k)/k`` for ``K = 1..budget``."""
    w = _weight(F, w)
    out, cur = [], None
    for k in range(1, budget + 1):
        val = F.order(k, w) / k
        cur = val if cur is None else min(cur, val)
        out.append(cur)
    return out


def waldschmidt(F: GradedFamily, w: Sequence, budget: int = fam.DEFAULT_BODY_BUDGET) -> Fraction:
    """Skew Waldschmidt constant of F for the monomial valuation with weights w.

    Exact families use the minimum of ``<w, x>`` over vertices of the body;
    otherwise the value is the (non-increasing) sequence value at ``budget``.
    """
    w = _weight(F, w)
    cert = fam.okounkov_body(F, budget)
    if cert.is_exact:
        return min(Fraction(eg.dot(w, v)) for v in cert.body.vertices)
    return waldschmidt_sequence(F, w, budget)[-1]
