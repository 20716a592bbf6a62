"""Independent oracles used to cross-check the decision procedures.

Nothing here reuses the reductions from ``operators``: the symbolic oracle
evaluates the defining implications on concrete vectors built by kernel
analysis of input strata, and the sampled oracles draw random pairs (with
exact integer arithmetic vectorized through numpy) that can confirm a
violation but never overturn one.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

from .atomic import (
    Vector,
    band_contains,
    basis_vector,
    is_disjoint,
    support_mask,
    vec_add,
    vec_scale,
    zero_vector,
)
from .interval import (
    FiniteRankOp,
    PiecewisePoly,
    frop_apply,
    nullspace,
    pp_band_contains,
    pp_disjoint,
    pp_restrict,
    pp_support,
)
from .operators import Operator, apply


def _generic_in_span(vectors: list[tuple[Vector, Vector]], n: int) -> tuple[Vector, Vector]:
    """A combination of (image, preimage) pairs whose image support is the
    union of the individual supports; small positive multipliers suffice."""
    acc_v = zero_vector(n)
    acc_p = zero_vector(n)
    for v, pre in vectors:
        target = support_mask(acc_v) | support_mask(v)
        if target == support_mask(acc_v):
            continue
        for a in range(1, n + 2):
            cand = vec_add(acc_v, vec_scale(a, v))
            if support_mask(cand) == target:
                acc_v = cand
                acc_p = vec_add(acc_p, vec_scale(a, pre))
                break
        else:  # pragma: no cover
            raise AssertionError("no cancellation-free combination")
    return acc_v, acc_p


def _input_strata(T: Operator) -> dict[int, Vector]:
    """For every input-support pattern, the achievable image supports with a
    concrete realizer each: kernel analysis of the coefficient space."""
    n = T.n
    nzcols = [j for j in range(1, n + 1) if any(T.entry(i, j) != 0 for i in range(1, n + 1))]
    strata: dict[int, Vector] = {0: zero_vector(n)}
    for r in range(len(nzcols) + 1):
        for combo in itertools.combinations(nzcols, r):
            if not combo:
                continue
            cols = [T.column(j) for j in combo]
            hit_rows = sorted(
                {i for c in cols for i in range(1, n + 1) if c[i - 1] != 0}
            )
            for zr in range(len(hit_rows) + 1):
                for zero_rows in itertools.combinations(hit_rows, zr):
                    rows = [
                        tuple(T.entry(i, j) for j in combo) for i in zero_rows
                    ]
                    if rows:
                        coeff_basis = nullspace(rows, len(combo))
                    else:
                        coeff_basis = [
                            tuple(
                                Fraction(1 if t == s else 0) for t in range(len(combo))
                            )
                            for s in range(len(combo))
                        ]
                    pairs = []
                    for c in coeff_basis:
                        g = [Fraction(0)] * n
                        for coef, j in zip(c, combo):
                            g[j - 1] = coef
                        g = tuple(g)
                        pairs.append((apply(T, g), g))
                    v, pre = _generic_in_span(pairs, n)
                    k = support_mask(v)
                    if k not in strata:
                        if support_mask(apply(T, pre)) != k:  # pragma: no cover
                            raise AssertionError("stratum realizer failed to replay")
                        strata[k] = pre
    return strata


def _generic_per_pattern(T: Operator) -> dict[int, Vector]:
    """One generic representative f per input-support pattern, maximizing
    the image support within the pattern."""
    n = T.n
    nzcols = [j for j in range(1, n + 1) if any(T.entry(i, j) != 0 for i in range(1, n + 1))]
    reps: dict[int, Vector] = {0: zero_vector(n)}
    for r in range(1, len(nzcols) + 1):
        for combo in itertools.combinations(nzcols, r):
            pairs = [(T.column(j), basis_vector(n, j)) for j in combo]
            _, pre = _generic_in_span(pairs, n)
            mask = 0
            for j in combo:
                mask |= 1 << (j - 1)
            # the generic preimage uses positive coefficients, so its own
            # support is exactly the pattern
            reps[mask] = pre
    return reps


def sbp_scp_exhaustive(T: Operator) -> tuple[bool, bool]:
    """Decide both semi-preservation conditions by direct implication checks
    over one generic representative per input pattern and every image
    stratum found by kernel analysis.  Exact; intended for small n."""
    strata = _input_strata(T)
    reps = _generic_per_pattern(T)
    sbp = True
    scp = True
    for g in strata.values():
        tg = apply(T, g)
        for f in reps.values():
            tf = apply(T, f)
            if is_disjoint(f, tg) and not is_disjoint(tf, tg):
                sbp = False
            if band_contains(tg, f) and not band_contains(tg, tf):
                scp = False
        if not (sbp or scp):
            break
    return sbp, scp


def beta_bruteforce(T: Operator) -> bool:
    """Direct check of the band-inclusion condition over all input patterns
    and rows, via kernel analysis; exact, intended for tiny n."""
    n = T.n
    for gmask in range(1, 1 << n):
        atoms = [j for j in range(1, n + 1) if gmask >> (j - 1) & 1]
        for k in range(1, n + 1):
            row = tuple(T.entry(k, j) for j in atoms)
            if all(x == 0 for x in row):
                continue
            kern = nullspace([row], len(atoms))
            # a full-support kernel vector exists iff no coordinate is
            # forced to zero across the kernel
            full = all(any(v[t] != 0 for v in kern) for t in range(len(atoms)))
            if full:
                return False
    return True


def sigma_realization_check(
    T: Operator, samples_per_pattern: int = 3, seed: int = 0
) -> tuple[bool, str]:
    """Two-sided check of an enumerated support table.

    Lower side: supports of images of random inputs must appear in the
    table.  Upper side: every tabulated support must be realized exactly by
    the deterministic realizer, verified through a plain matrix product.
    """
    from .operators import SupportSet, enumerate_sigma, realize_support

    n = T.n
    sigma = enumerate_sigma(T)
    rng = random.Random(f"sigma-oracle:{seed}:{n}")
    for fmask in range(1 << n):
        for _ in range(samples_per_pattern):
            f = tuple(
                Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                if fmask >> i & 1
                else Fraction(0)
                for i in range(n)
            )
            m = support_mask(apply(T, f))
            if m not in sigma.masks:
                return False, f"sampled support {m:b} missing from the table"
    for m in sigma.masks:
        g = realize_support(T, SupportSet.from_mask(m))
        if support_mask(apply(T, g)) != m:
            return False, f"tabulated support {m:b} failed to realize"
    return True, "ok"


def _int_matrix(T: Operator) -> np.ndarray:
    scale = math.lcm(*(x.denominator for row in T.rows for x in row))
    M = np.array(
        [[int(x * scale) for x in row] for row in T.rows], dtype=np.int64
    )
    bound = int(np.abs(M).max(initial=0)) * 9 * T.n
    if bound >= 2**62:  # pragma: no cover - tiny rationals in practice
        raise OverflowError("integer scaling too large for vectorized sampling")
    return M


def sampled_implication_check(
    T: Operator, which: str, pairs: int, seed: int
) -> tuple[Vector, Vector] | None:
    """Draw random (f, g) pairs satisfying the antecedent by construction
    and look for a consequent violation.  Returns an exact violating pair
    (re-verified with rationals) or None."""
    n = T.n
    M = _int_matrix(T)
    rng = np.random.default_rng(seed)
    G = rng.integers(-9, 10, size=(n, pairs)) * (rng.random((n, pairs)) < 0.6)
    TG = M @ G
    tg_nz = TG != 0
    F_raw = rng.integers(-9, 10, size=(n, pairs)) * (rng.random((n, pairs)) < 0.6)
    if which == "sbp":
        F = F_raw * ~tg_nz
        TF = M @ F
        viol = np.any((TF != 0) & tg_nz, axis=0)
    elif which == "scp":
        F = F_raw * tg_nz
        TF = M @ F
        viol = np.any((TF != 0) & ~tg_nz, axis=0)
    else:
        raise ValueError("which must be 'sbp' or 'scp'")
    idx = np.flatnonzero(viol)
    for i in idx[:4]:
        f = tuple(Fraction(int(x)) for x in F[:, i])
        g = tuple(Fraction(int(x)) for x in G[:, i])
        tf, tg = apply(T, f), apply(T, g)
        if which == "sbp" and is_disjoint(f, tg) and not is_disjoint(tf, tg):
            return f, g
        if which == "scp" and band_contains(tg, f) and not band_contains(tg, tf):
            return f, g
    return None


def small_matrix_family(n: int, max_nnz: int, values=(Fraction(-1), Fraction(1, 2), Fraction(1))):
    """Every n x n matrix with at most max_nnz nonzero entries drawn from the
    value set, deduplicated up to simultaneous row/column relabeling."""
    # flat index maps: entry (i,j) of the relabeled matrix comes from p[i]*n+p[j]
    perm_maps = [
        [p[i] * n + p[j] for i in range(n) for j in range(n)]
        for p in itertools.permutations(range(n))
    ]
    seen = set()
    out = []
    positions = list(range(n * n))
    for nnz in range(max_nnz + 1):
        for pos in itertools.combinations(positions, nnz):
            for vals in itertools.product(values, repeat=nnz):
                flat = [Fraction(0)] * (n * n)
                for idx, v in zip(pos, vals):
                    flat[idx] = v
                canon = min(tuple(flat[i] for i in pm) for pm in perm_maps)
                if canon in seen:
                    continue
                seen.add(canon)
                out.append(tuple(tuple(canon[i * n + j] for j in range(n)) for i in range(n)))
    return out


# -- sampled oracle for the interval model ----------------------------------

_GRID = [Fraction(k, 8) for k in range(9)]


def random_piecewise(rng: random.Random, max_pieces: int = 6, max_degree: int = 3) -> PiecewisePoly:
    interior = sorted(rng.sample(_GRID[1:-1], rng.randint(0, max_pieces - 1)))
    pts = [Fraction(0), *interior, Fraction(1)]
    pieces = []
    for lo, hi in zip(pts, pts[1:]):
        if rng.random() < 0.3:
            coeffs = ()
        else:
            coeffs = tuple(
                Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, max_degree + 1))
            )
        pieces.append((lo, hi, coeffs))
    return PiecewisePoly.from_pieces(pieces)


def sampled_frop_check(
    T: FiniteRankOp, which: str, pairs: int, seed: int
) -> tuple[PiecewisePoly, PiecewisePoly] | None:
    """Random antecedent-satisfying pairs for the interval model; returns a
    violating pair or None."""
    rng = random.Random(f"frop-oracle:{seed}")
    for _ in range(pairs):
        g = random_piecewise(rng)
        tg = frop_apply(T, g)
        s = pp_support(tg)
        f_raw = random_piecewise(rng)
        if which == "sbp":
            f = pp_restrict(f_raw, s.complement())
            if not pp_disjoint(frop_apply(T, f), tg):
                return f, g
        elif which == "scp":
            f = pp_restrict(f_raw, s)
            if not pp_band_contains(tg, frop_apply(T, f)):
                return f, g
        else:
            raise ValueError("which must be 'sbp' or 'scp'")
    return None
