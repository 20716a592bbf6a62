"""Weighted conditional expectation operators: build, decompose, perturb.

An operator is semi band preserving exactly when it decomposes as
Tf = sum_j <psi_j, f> u_j over pairwise disjoint blocks.  The decomposition
below recovers blocks, range vectors and functionals from the raw matrix
and proves itself by exact reassembly.
"""

from semiband import (
    SupportSet,
    Witness,
    decompose_wce,
    gen_random_wce,
    is_sbp,
    is_scp,
    make_averaging,
    operator_norm,
    replay_witness,
)
from semiband.atomic import AtomicSpace
from semiband.generators import perturb_off_block

M = make_averaging(3, [SupportSet.of(1, 2), SupportSet.of(3)])
form = decompose_wce(M)
print("blocks:", form.blocks)
print("u:     ", form.u)
print("psi:   ", form.psi)
for p in (1, 2, "inf"):
    print(f"norm on the unweighted {p}-norm space:", operator_norm(AtomicSpace.lp(3, p), M))

# Random valid forms round-trip exactly through decomposition.
rnd = gen_random_wce(42, 6)
T = rnd.to_operator()
print("\nrandom form blocks:", rnd.blocks)
print("semi band preserving?", is_sbp(T).holds, " semi containment preserving?", is_scp(T).holds)
print("decomposition recovers the form exactly?", decompose_wce(T) == rnd)

# One nonzero entry outside every block usually destroys the property, and
# then decomposition returns a concrete witness pair that replays.
perturbed = perturb_off_block(7, rnd)
if perturbed is not None:
    T2, pos = perturbed
    res = decompose_wce(T2)
    if isinstance(res, Witness):
        print(f"\nafter perturbing entry {pos}: witness kind {res.kind}")
        print("witness replays exactly?", replay_witness(T2, res))
    else:
        print(f"\nperturbing entry {pos} happened to keep the property")
