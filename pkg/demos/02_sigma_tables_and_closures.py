"""The family of achievable range supports and its closure laws.

For an operator T, a set of atoms A is achievable when some input f has
supp(Tf) exactly A.  The family of achievable supports is always closed
under pairwise union; when T is semi band preserving it is also closed
under intersection and relative complement, and atoms outside the union
of the family are annihilated.
"""

from fractions import Fraction

from semiband import (
    AtomicSpace,
    Operator,
    SupportSet,
    apply,
    enumerate_sigma,
    is_sbp,
    make_averaging,
    minimal_supports,
    realize_support,
    support,
    verify_sigma_closures,
)

M = make_averaging(3, [SupportSet.of(1, 2), SupportSet.of(3)])
sigma = enumerate_sigma(M)
print("achievable supports of the averaging operator:", sigma.supports)
print("their union S_T:", sigma.s_t)
print("minimal supports:", minimal_supports(sigma))

# Concrete realizers: a vector g with supp(Mg) exactly the requested set.
g = realize_support(M, SupportSet.of(1, 2, 3))
print("\nrealizer of {1,2,3}:", g, "->", apply(M, g), "supp", support(apply(M, g)))

rep = verify_sigma_closures(M, sigma)
print("closure report:", rep.union, rep.intersection, rep.complement)

# A non semi-band-preserving operator can break the intersection and
# complement laws; the union law survives regardless.
sp = AtomicSpace.lp(3, 2)
T = Operator(sp, (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
))
sigma_t = enumerate_sigma(T)
print("\nsecond operator achievable supports:", sigma_t.supports)
rep_t = verify_sigma_closures(T, sigma_t)
print("union:", rep_t.union, " intersection:", rep_t.intersection, " complement:", rep_t.complement)
print("semi band preserving?", is_sbp(T).holds)
if rep_t.witness:
    print("witness note:", rep_t.witness.note)
