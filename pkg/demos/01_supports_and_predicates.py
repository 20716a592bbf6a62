"""Supports, disjointness and bands on a finite atomic space.

Vectors are exact rational tuples over atoms 1..n; every question below is
decided exactly, never numerically.
"""

from semiband import (
    AtomicSpace,
    band_contains,
    is_disjoint,
    is_strictly_monotone,
    norm_value,
    support,
    vec,
)

f = vec(0, 3, 0, -2)
g = vec(1, 0, 0, 0)
h = vec(0, "1/3", 0, 5)

print("supp f =", support(f))
print("supp g =", support(g))
print("f and g disjoint?", is_disjoint(f, g))
print("h inside the band generated by f?", band_contains(f, h))

# Weighted p-norms. The 2-norm is kept as an exact square, so sqrt(25) is
# recognized as exactly 5 rather than 4.999...
sp2 = AtomicSpace.lp(2, 2)
print("\n||(3,4)||_2 =", norm_value(sp2, vec(3, 4)))

sp1 = AtomicSpace.lp(2, 1, weights=[2, 3])
print("||(1,1)||_1 with weights (2,3) =", norm_value(sp1, vec(1, 1)))
print("dual norm of (1,1) there      =", norm_value(sp1, vec(1, 1), side="dual"))

# General rational exponents produce certified enclosures of width <= 1e-30.
sp32 = AtomicSpace.lp(2, "3/2")
v = norm_value(sp32, vec(1, 1))
print("\n||(1,1)||_{3/2} is enclosed by", v)

# Strict monotonicity (||x + y|| > ||x|| for positive x, y) holds exactly
# when p < inf; the sup-norm returns a concrete witness pair.
print("\n1-norm strictly monotone?", is_strictly_monotone(sp1).holds)
spi = AtomicSpace.lp(2, "inf")
res = is_strictly_monotone(spi)
print("sup-norm strictly monotone?", res.holds, "witness x, y =", res.witness)
