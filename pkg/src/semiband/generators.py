"""Deterministic random generators for test campaigns.

All draws come from ``random.Random`` seeded with a string key, so the same
(seed, parameters) always yields the same object regardless of process
state or hash randomization.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .atomic import AtomicSpace, SupportSet
from .operators import Operator
from .wce import WceForm, make_wce


def _rng(tag: str, *parts) -> random.Random:
    return random.Random(":".join([tag, *map(str, parts)]))


def _small_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if x != 0 or not nonzero:
            return x


def random_partition(rng: random.Random, n: int) -> list[SupportSet]:
    """Disjoint nonempty blocks drawn by sequential random sizes over a
    shuffled atom list; occasionally leaves atoms unassigned."""
    atoms = list(range(1, n + 1))
    rng.shuffle(atoms)
    blocks = []
    pos = 0
    while pos < n:
        size = rng.randint(1, n - pos)
        blocks.append(SupportSet(frozenset(atoms[pos : pos + size])))
        pos += size
    if len(blocks) > 1 and rng.random() < 0.125:
        blocks.pop(rng.randrange(len(blocks)))
    return blocks


def gen_random_wce(seed: int, n: int) -> WceForm:
    """A valid weighted conditional expectation form.

    Every u_j has full support on its block and every psi_j is a nonzero
    functional supported inside it, so the resulting matrix is genuinely
    semi band preserving and the form round-trips through decomposition.
    """
    if n < 1:
        raise ValueError("need at least one atom")
    rng = _rng("wce", seed, n)
    space = AtomicSpace.lp(n, 2)
    blocks = random_partition(rng, n)
    u, psi = [], []
    for b in blocks:
        uj = [Fraction(0)] * n
        for a in b:
            uj[a - 1] = _small_rational(rng, nonzero=True)
        pj = [Fraction(0)] * n
        while all(x == 0 for x in pj):
            for a in b:
                pj[a - 1] = _small_rational(rng)
        u.append(tuple(uj))
        psi.append(tuple(pj))
    return make_wce(space, blocks, tuple(u), tuple(psi))


def gen_random_operator(seed: int, n: int, density: float) -> Operator:
    """Matrix with ~density fraction of nonzero small-rational entries."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0,1]")
    rng = _rng("op", seed, n, density)
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            if rng.random() < density:
                row.append(_small_rational(rng, nonzero=True))
            else:
                row.append(Fraction(0))
        rows.append(tuple(row))
    return Operator(AtomicSpace.lp(n, 2), tuple(rows))


def perturb_off_block(seed: int, form: WceForm) -> tuple[Operator, tuple[int, int]] | None:
    """Add one nonzero entry at a position (row, col) lying outside every
    block of the form; returns the perturbed operator and the position, or
    None when a single block covers all atoms (no such position exists)."""
    rng = _rng("perturb", seed)
    n = form.space.n
    block_of = {}
    for b in form.blocks:
        for a in b:
            block_of[a] = b
    positions = []
    for col in range(1, n + 1):
        for row in range(1, n + 1):
            b = block_of.get(col)
            if b is None or row not in b:
                positions.append((row, col))
    if not positions:
        return None
    row, col = positions[rng.randrange(len(positions))]
    delta = _small_rational(rng, nonzero=True)
    T = form.to_operator()
    rows = [list(r) for r in T.rows]
    rows[row - 1][col - 1] += delta
    if rows[row - 1][col - 1] == 0:
        rows[row - 1][col - 1] = delta
    return Operator(form.space, tuple(tuple(r) for r in rows)), (row, col)
