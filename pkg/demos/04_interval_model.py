"""The nonatomic model: piecewise polynomials on [0,1].

Two small finite-rank integral operators separate the two semi-preservation
conditions, and the achievable-support family loses the complement closure
law that the atomic model enjoys.
"""

from fractions import Fraction

from semiband import (
    IntervalRegion,
    PiecewisePoly,
    frop_apply,
    frop_is_sbp,
    frop_is_scp,
    frop_range_supports,
    integrate,
    make_full_support_projection,
    make_sbp_not_scp_operator,
    pp_support,
)
from semiband.interval import frop_moments

HALF = Fraction(1, 2)

# Exact integration of piecewise polynomials.
w = PiecewisePoly.on_interval(0, HALF, (0, 1))          # t on [0,1/2)
f = PiecewisePoly.from_pieces([(0, 1, (Fraction(-1, 4), 1))])  # t - 1/4
print("int_0^1/2 t (t - 1/4) dt =", integrate(w, f))

# A rank-two operator whose functionals live on [0,1/2]: anything supported
# in the right half maps to zero, so the operator is semi band preserving.
T = make_sbp_not_scp_operator()
print("\nrange supports:", frop_range_supports(T))
print("semi band preserving?", frop_is_sbp(T).holds)

scp = frop_is_scp(T)
print("semi containment preserving?", scp.holds)
print("witness pairings (int w_k g):", frop_moments(T, scp.witness.g))
print("supp Tg =", pp_support(frop_apply(T, scp.witness.g)))
print("supp Tf =", pp_support(frop_apply(T, scp.witness.f)))

# The complement [1/2,1] of [0,1/2] inside [0,1] is NOT achievable: the
# interval model is not essentially one-dimensional, so the relative
# complement law of the atomic world genuinely fails here.
print("[1/2,1] achievable?", IntervalRegion.of((HALF, 1)) in frop_range_supports(T))

# A projection onto the span of 1 and t: every nonzero range element has
# full support, so both conditions hold trivially although the operator is
# nothing like a blockwise average.
B = make_full_support_projection()
print("\nprojection onto span{1, t}: range supports", frop_range_supports(B))
print("both conditions hold?", frop_is_sbp(B).holds and frop_is_scp(B).holds)
gram = [[integrate(wk, phi) for _, phi in B.terms] for wk, _ in B.terms]
print("biorthogonality matrix:", gram)
