"""Exact resurgence computations for graded families of monomial ideals."""

from .errors import BudgetExceeded, ResurgiaError
from .exactgeom import (QPolyhedron, Halfspace, hull_plus_orthant, from_halfspaces, polar,
                        contains, scale, sup_noncontainment, min_pairing, first_ray_exit)
from .monomials import (Ring, MonomialIdeal, minimalize, newton_polyhedron,
                        symbolic_polyhedron, symbolic_power, alexander_dual, minimal_primes)
from .families import (GradedFamily, powers, symbolic_powers, closure_powers, piecewise,
                       truncate, okounkov_body)
from .resurgence import (ResurgenceResult, asymptotic_resurgence, resurgence_search,
                         dual_pair_resurgence, waldschmidt, truncation_resurgence_profile)
from .reespkg import (ReesPackageData, ReesValuedFamily, rees_resurgence,
                      veronese_resurgence, symmetric_minors_family)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
