"""Convex-body resurgence for ideals carrying a Rees package.

The basis and valuations of a package are never represented symbolically.
What the formulas consume is the value data: the integral target polyhedron
``gamma`` and, for each index k, the finite set of valuation vectors of the
basis monomials occurring in ``a_k``.  Ring-theoretic hypotheses are the
caller's assertions and travel with the results as metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exactgeom as eg
from . import families as fam
from .errors import ResurgiaError
from .exactgeom import POS_INF, QPolyhedron
from .families import BodyCertificate
from .resurgence import ResurgenceResult, body_formula

B_EQUIVALENT_INVARIANTS = ("rho_hat(a, b)", "rho(a, bbar)", "rho_hat(a, bbar)")


@dataclass(frozen=True)
class ReesPackageData:
    d: int
    gamma: QPolyhedron
    label: str = "package"
    assertions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.gamma.dim != self.d:
            raise ResurgiaError("gamma lives in the wrong dimension")
        if self.gamma.is_empty:
            raise ResurgiaError("gamma must be nonempty")
        if any(c.denominator != 1 for v in self.gamma.vertices for c in v):
            raise ResurgiaError("gamma must be an integral polyhedron")
        if not self.gamma.noncoordinate_facets:
            raise ResurgiaError("gamma needs a non-coordinate facet")
        object.__setattr__(self, "assertions", tuple(self.assertions))


@dataclass(frozen=True)
class SymmetricMinorsSymbolic:
    """Values for symbolic powers of the submaximal minors of a symmetric m x m matrix."""
    m: int

    def values(self, k: int) -> tuple[tuple[int, ...], ...]:
        m = self.m
        top = tuple(range(m, 0, -1))          # v(I_m(Y)) = (m, ..., 1)
        low = tuple(range(m - 1, -1, -1))     # v(b) = (m-1, ..., 0)
        j, odd = divmod(k, 2)
        if odd:
            pts = [tuple((j + 1) * a - 1 for a in top), tuple(k * a for a in low)]
        else:
            pts = [tuple(j * a for a in top), tuple(k * a for a in low)]
        return tuple(sorted(set(pts)))

    def closed_form(self) -> QPolyhedron:
        m = self.m
        half = tuple(Fraction(a, 2) for a in range(m, 0, -1))
        return eg.hull_plus_orthant([half, tuple(range(m - 1, -1, -1))])


@dataclass(frozen=True)
class Explicit:
    table: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]


class ReesValuedFamily:
    """Valuation-vector data ``k -> V(a_k)`` of a graded family."""

    def __init__(self, d: int, rule):
        if d < 1:
            raise ResurgiaError("d must be positive")
        self.d = d
        self.rule = rule
        self._bodies: dict[int, QPolyhedron] = {}
        if isinstance(rule, Explicit):
            self._table = dict(rule.table)
            for k, pts in self._table.items():
                if k < 1 or not pts:
                    raise ResurgiaError(f"value table entry {k} is invalid")
                for p in pts:
                    if len(p) != d or any(c < 0 for c in p):
                        raise ResurgiaError(f"value {p} is not in Z^{d}_(>=0)")

    @classmethod
    def explicit(cls, d: int, table: dict) -> "ReesValuedFamily":
        rows = tuple(sorted((int(k), tuple(sorted({tuple(int(c) for c in p) for p in pts})))
                            for k, pts in table.items()))
        return cls(d, Explicit(rows))

    def available(self, k: int) -> bool:
        return not isinstance(self.rule, Explicit) or k in self._table

    def values(self, k: int) -> tuple[tuple[int, ...], ...]:
        if isinstance(self.rule, SymmetricMinorsSymbolic):
            return self.rule.values(k)
        try:
            return self._table[k]
        except KeyError:
            raise ResurgiaError(f"no values supplied for index {k}") from None

    def indices(self, budget: int) -> list[int]:
        return [k for k in range(1, budget + 1) if self.available(k)]

    def body(self, k: int) -> QPolyhedron:
        if k not in self._bodies:
            self._bodies[k] = eg.hull_plus_orthant(self.values(k))
        return self._bodies[k]

    def to_table(self, budget: int) -> dict[int, list[list[int]]]:
        return {k: [list(p) for p in self.values(k)] for k in self.indices(budget)}


def validate_superadditive(vf: ReesValuedFamily, n: int) -> Optional[tuple[int, int]]:
    """First ``(p, q)`` whose pointwise value sums escape ``V(a_{p+q})``, else None."""
    for total in range(2, n + 1):
        if not vf.available(total):
            continue
        target = vf.body(total)
        for p in range(1, total // 2 + 1):
            q = total - p
            if not (vf.available(p) and vf.available(q)):
                continue
            for u in vf.values(p):
                for v in vf.values(q):
                    if not target.contains_point([a + b for a, b in zip(u, v)]):
                        return (p, q)
    return None


def gamma_body(vf: ReesValuedFamily, budget: int = fam.DEFAULT_BODY_BUDGET) -> BodyCertificate:
    if isinstance(vf.rule, SymmetricMinorsSymbolic):
        return BodyCertificate("exact", vf.rule.closed_form())
    idx = vf.indices(budget)
    if not idx:
        raise ResurgiaError("no value data within the budget")
    k = fam.stabilization_index(vf.body, budget, vf.available)
    if k is not None:
        return BodyCertificate("exact", eg.scale(Fraction(1, k), vf.body(k)), index=k)
    return BodyCertificate("approximate", fam.union_hull(vf.body, idx), budget=budget)


def _result(vf, pkg, budget, method, divisor=1, extra=None) -> ResurgenceResult:
    if vf.d != pkg.d:
        raise ResurgiaError(f"dimension mismatch: values in {vf.d}, package in {pkg.d}")
    cert = gamma_body(vf, budget)
    value, witness = body_formula(cert.body, pkg.gamma)
    if divisor != 1 and value not in (POS_INF, -POS_INF):
        value = value / divisor
    direction = "exact" if cert.is_exact else "lower"
    meta = {"package": pkg.label, "assertions": list(pkg.assertions),
            "certificate": {"status": cert.status, "index": cert.index, "budget": cert.budget}}
    meta.update(extra or {})
    return ResurgenceResult(value, cert.is_exact, direction, method, witness, meta)


def rees_resurgence(vf: ReesValuedFamily, pkg: ReesPackageData,
                    budget: int = fam.DEFAULT_BODY_BUDGET) -> ResurgenceResult:
    return _result(vf, pkg, budget, "rees-formula")


def veronese_resurgence(vf: ReesValuedFamily, pkg: ReesPackageData, k: int,
                        budget: int = fam.DEFAULT_BODY_BUDGET) -> ResurgenceResult:
    """Formula value divided by k, for a package of ``b_k`` whose k-th
    Veronese Rees algebra is standard graded."""
    if k < 1:
        raise ResurgiaError("Veronese degree must be at least 1")
    return _result(vf, pkg, budget, "rees-veronese", divisor=k, extra={"veronese_k": k})


def b_equivalent_resurgence(vf: ReesValuedFamily, pkg: ReesPackageData,
                            budget: int = fam.DEFAULT_BODY_BUDGET,
                            shift: Optional[int] = None,
                            hypotheses: tuple[str, ...] = ("b-equivalent", "filtration")
                            ) -> ResurgenceResult:
    extra = {"hypotheses": list(hypotheses), "equal_invariants": list(B_EQUIVALENT_INVARIANTS)}
    if shift is not None:
        extra["shift"] = shift
    return _result(vf, pkg, budget, "rees-b-equivalent", extra=extra)


def symmetric_minors_family(m: int) -> tuple[ReesPackageData, ReesValuedFamily]:
    """Package and symbolic-power values for submaximal minors of a symmetric matrix."""
    if m < 3:
        raise ResurgiaError("the symmetric-minors example needs m >= 3")
    gamma = eg.hull_plus_orthant([tuple(range(m - 1, -1, -1))])
    pkg = ReesPackageData(m, gamma, label=f"symmetric-minors-{m}",
                          assertions=("vector of valuations", "b-equivalent"))
    return pkg, ReesValuedFamily(m, SymmetricMinorsSymbolic(m))


def table_from_json(data: dict) -> tuple[ReesPackageData, ReesValuedFamily]:
    try:
        d = int(data["d"])
        gamma = QPolyhedron.from_json(data["gamma"])
        values = {int(k): v for k, v in data["values"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ResurgiaError(f"malformed Rees table JSON: {exc}") from None
    pkg = ReesPackageData(d, gamma, label=data.get("label", "explicit"),
                          assertions=tuple(data.get("assertions", ())))
    return pkg, ReesValuedFamily.explicit(d, values)


def table_to_json(pkg: ReesPackageData, vf: ReesValuedFamily, budget: int) -> dict:
    return {
        "d": pkg.d,
        "gamma": pkg.gamma.to_json(),
        "values": {str(k): v for k, v in vf.to_table(budget).items()},
        "assertions": list(pkg.assertions),
        "label": pkg.label,
    }
