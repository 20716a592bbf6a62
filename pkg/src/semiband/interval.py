"""Symbolic nonatomic model: piecewise-polynomial functions on [0,1].

Functions are finite lists of polynomial pieces with rational breakpoints;
supports are finite unions of closed rational intervals, always handled
modulo null sets.  Finite-rank integral operators Tf = sum_k (int w_k f) phi_k
admit exact, universal semi-band / semi-containment decisions because both
conditions are linear in the achievable moment vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BudgetExceededError,
    UnachievableSupportError,
    ValidationError,
)

MAX_DEGREE = 16
MAX_PIECES = 64
#: cap on pieces entering the subset enumeration (2**k feasibility probes)
MAX_ENUM_PIECES = 20

Poly = tuple[Fraction, ...]  # coefficients in ascending powers of t, stripped


def poly(*coeffs) -> Poly:
    return _strip(tuple(Fraction(c) for c in coeffs))


def _strip(c: Poly) -> Poly:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _strip(tuple(out))


def poly_scale(c, a: Poly) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(tuple(out))


def poly_eval(a: Poly, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def poly_integral(a: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    anti = tuple([Fraction(0)] + [c / (i + 1) for i, c in enumerate(a)])
    return poly_eval(anti, hi) - poly_eval(anti, lo)


@dataclass(frozen=True)
class IntervalRegion:
    """A finite union of disjoint closed intervals in [0,1], modulo null sets.

    Canonical form: sorted, merged, no degenerate (single point) intervals.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    @staticmethod
    def of(*pairs) -> "IntervalRegion":
        cleaned = []
        for lo, hi in pairs:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise ValidationError("interval endpoints out of order")
            if lo < hi:
                cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[list[Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return IntervalRegion(tuple((lo, hi) for lo, hi in merged))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def union(self, other: "IntervalRegion") -> "IntervalRegion":
        return IntervalRegion.of(*(self.intervals + other.intervals))

    def intersect(self, other: "IntervalRegion") -> "IntervalRegion":
        out = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo, hi = max(alo, blo), min(ahi, bhi)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalRegion.of(*out)

    def difference(self, other: "IntervalRegion") -> "IntervalRegion":
        out = []
        for alo, ahi in self.intervals:
            segs = [(alo, ahi)]
            for blo, bhi in other.intervals:
                nxt = []
                for lo, hi in segs:
                    if bhi <= lo or blo >= hi:
                        nxt.append((lo, hi))
                        continue
                    if blo > lo:
                        nxt.append((lo, blo))
                    if bhi < hi:
                        nxt.append((bhi, hi))
                segs = nxt
            out.extend(segs)
        return IntervalRegion.of(*out)

    def contains(self, other: "IntervalRegion") -> bool:
        """other is a subset of self, modulo null sets."""
        return other.difference(self).is_empty

    def complement(self) -> "IntervalRegion":
        return IntervalRegion.of((Fraction(0), Fraction(1))).difference(self)

    def __repr__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(f"[{lo},{hi}]" for lo, hi in self.intervals)


EMPTY_REGION = IntervalRegion(())
FULL_REGION = IntervalRegion(((Fraction(0), Fraction(1)),))


@dataclass(frozen=True)
class PiecewisePoly:
    """A function on [0,1]: half-open polynomial pieces, the last one closed.

    Canonical form merges adjacent pieces carrying the same polynomial.
    """

    pieces: tuple[tuple[Fraction, Fraction, Poly], ...]

    def __post_init__(self):
        ps = self.pieces
        if not ps:
            raise ValidationError("a piecewise function needs at least one piece")
        if ps[0][0] != 0 or ps[-1][1] != 1:
            raise ValidationError("pieces must cover [0,1]")
        prev = Fraction(0)
        for lo, hi, _ in ps:
            if lo != prev:
                raise ValidationError("pieces must be contiguous")
            if lo >= hi:
                raise ValidationError("pieces must be non-degenerate")
            prev = hi
        if len(ps) > MAX_PIECES:
            raise BudgetExceededError(f"{len(ps)} pieces exceed the budget of {MAX_PIECES}")
        for _, _, c in ps:
            if len(c) > MAX_DEGREE + 1:
                raise BudgetExceededError(
                    f"degree {len(c) - 1} exceeds the budget of {MAX_DEGREE}"
                )

    @staticmethod
    def from_pieces(pieces: Iterable[tuple]) -> "PiecewisePoly":
        norm = []
        for lo, hi, coeffs in pieces:
            norm.append((Fraction(lo), Fraction(hi), _strip(tuple(Fraction(c) for c in coeffs))))
        merged: list[tuple[Fraction, Fraction, Poly]] = []
        for lo, hi, c in norm:
            if merged and merged[-1][2] == c and merged[-1][1] == lo:
                merged[-1] = (merged[-1][0], hi, c)
            else:
                merged.append((lo, hi, c))
        return PiecewisePoly(tuple(merged))

    @staticmethod
    def zero() -> "PiecewisePoly":
        return PiecewisePoly.from_pieces([(0, 1, ())])

    @staticmethod
    def const(c) -> "PiecewisePoly":
        return PiecewisePoly.from_pieces([(0, 1, (Fraction(c),))])

    @staticmethod
    def on_interval(lo, hi, coeffs) -> "PiecewisePoly":
        """The polynomial with the given coefficients on [lo,hi), zero elsewhere."""
        lo, hi = Fraction(lo), Fraction(hi)
        pieces = []
        if lo > 0:
            pieces.append((0, lo, ()))
        pieces.append((lo, hi, tuple(Fraction(c) for c in coeffs)))
        if hi < 1:
            pieces.append((hi, 1, ()))
        return PiecewisePoly.from_pieces(pieces)

    @staticmethod
    def indicator(lo, hi) -> "PiecewisePoly":
        return PiecewisePoly.on_interval(lo, hi, (1,))

    def breakpoints(self) -> list[Fraction]:
        pts = [self.pieces[0][0]]
        pts.extend(hi for _, hi, _ in self.pieces)
        return pts

    def poly_at(self, t: Fraction) -> Poly:
        """The polynomial of the piece whose half-open span contains t."""
        for lo, hi, c in self.pieces:
            if lo <= t < hi:
                return c
        return self.pieces[-1][2]

    def is_zero(self) -> bool:
        return all(not c for _, _, c in self.pieces)


def _refine(fs: Sequence[PiecewisePoly]) -> list[tuple[Fraction, Fraction]]:
    pts = {Fraction(0), Fraction(1)}
    for f in fs:
        pts.update(f.breakpoints())
    spts = sorted(pts)
    return list(zip(spts, spts[1:]))


def pp_map(op, *fs: PiecewisePoly) -> PiecewisePoly:
    """Apply a polynomial-level operation piecewise on the common refinement."""
    segs = _refine(fs)
    pieces = []
    for lo, hi in segs:
        pieces.append((lo, hi, op(*(f.poly_at(lo) for f in fs))))
    return PiecewisePoly.from_pieces(pieces)


def pp_add(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return pp_map(poly_add, f, g)


def pp_scale(c, f: PiecewisePoly) -> PiecewisePoly:
    return pp_map(lambda a: poly_scale(c, a), f)


def pp_mul(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return pp_map(poly_mul, f, g)


def pp_restrict(f: PiecewisePoly, region: IntervalRegion) -> PiecewisePoly:
    """f times the indicator of the region (modulo null sets)."""
    pts = {Fraction(0), Fraction(1)}
    pts.update(f.breakpoints())
    for lo, hi in region.intervals:
        pts.add(lo)
        pts.add(hi)
    spts = sorted(pts)
    pieces = []
    for lo, hi in zip(spts, spts[1:]):
        inside = any(blo <= lo and hi <= bhi for blo, bhi in region.intervals)
        pieces.append((lo, hi, f.poly_at(lo) if inside else ()))
    return PiecewisePoly.from_pieces(pieces)


def pp_support(f: PiecewisePoly) -> IntervalRegion:
    """Union of closures of the pieces whose polynomial is not identically
    zero (a nonzero polynomial vanishes only on a null set)."""
    return IntervalRegion.of(*((lo, hi) for lo, hi, c in f.pieces if c))


def pp_disjoint(f: PiecewisePoly, g: PiecewisePoly) -> bool:
    return pp_support(f).intersect(pp_support(g)).is_empty


def pp_band_contains(g: PiecewisePoly, f: PiecewisePoly) -> bool:
    """f lies in the band generated by g: supp f inside supp g mod null."""
    return pp_support(g).contains(pp_support(f))


def pp_equal(f: PiecewisePoly, g: PiecewisePoly) -> bool:
    return pp_map(lambda a, b: poly_add(a, poly_scale(-1, b)), f, g).is_zero()


def integrate(w: PiecewisePoly, f: PiecewisePoly) -> Fraction:
    """Exact integral of w*f over [0,1]."""
    total = Fraction(0)
    for lo, hi in _refine((w, f)):
        total += poly_integral(poly_mul(w.poly_at(lo), f.poly_at(lo)), lo, hi)
    return total


@dataclass(frozen=True)
class FiniteRankOp:
    """Tf = sum_k (int w_k f) phi_k with piecewise-polynomial data."""

    terms: tuple[tuple[PiecewisePoly, PiecewisePoly], ...]

    @staticmethod
    def of(*terms) -> "FiniteRankOp":
        return FiniteRankOp(tuple((w, phi) for w, phi in terms))

    @property
    def rank_bound(self) -> int:
        return len(self.terms)


def frop_apply(T: FiniteRankOp, f: PiecewisePoly) -> PiecewisePoly:
    out = PiecewisePoly.zero()
    for w, phi in T.terms:
        c = integrate(w, f)
        if c != 0:
            out = pp_add(out, pp_scale(c, phi))
    return out


def frop_moments(T: FiniteRankOp, f: PiecewisePoly) -> tuple[Fraction, ...]:
    return tuple(integrate(w, f) for w, _ in T.terms)


# -- exact linear algebra on rational rows ---------------------------------


def nullspace(rows: list[tuple[Fraction, ...]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : R x = 0}, normalized with free variables set to 1."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -mat[ri][fc]
        basis.append(tuple(v))
    return basis


def _orthogonal_complement(basis: list[tuple[Fraction, ...]], dim: int) -> list[tuple[Fraction, ...]]:
    if not basis:
        ident = []
        for i in range(dim):
            v = [Fraction(0)] * dim
            v[i] = Fraction(1)
            ident.append(tuple(v))
        return ident
    return nullspace(basis, dim)


# -- achievable supports and the two semi-preservation decisions -----------


class _Layout(NamedTuple):
    segs: list[tuple[Fraction, Fraction]]          # common refinement pieces
    kernel_degrees: list[int]                      # max kernel degree per piece, -1 if none
    moment_basis: list[tuple[Fraction, ...]]       # basis of attainable moment vectors
    range_polys: list[list[Poly]]                  # per basis vector, poly per piece


def _kernel_constraint_rows(
    T: FiniteRankOp, segs: list[tuple[Fraction, Fraction]], active: Iterable[int]
) -> list[tuple[Fraction, ...]]:
    rows = []
    m = len(T.terms)
    for idx in active:
        lo, _ = segs[idx]
        polys = [w.poly_at(lo) for w, _ in T.terms]
        deg = max((len(p) for p in polys), default=0)
        for d in range(deg):
            rows.append(tuple(polys[k][d] if d < len(polys[k]) else Fraction(0) for k in range(m)))
    return rows


@lru_cache(maxsize=None)
def _layout(T: FiniteRankOp) -> _Layout:
    fs = [w for w, _ in T.terms] + [phi for _, phi in T.terms]
    segs = _refine(fs) if fs else [(Fraction(0), Fraction(1))]
    kernel_degrees = []
    for lo, _ in segs:
        degs = [len(w.poly_at(lo)) - 1 for w, _ in T.terms if w.poly_at(lo)]
        kernel_degrees.append(max(degs) if degs else -1)
    # attainable moment vectors: orthogonal complement of the kernel-side
    # dependencies over the whole interval
    m = len(T.terms)
    krows = _kernel_constraint_rows(T, segs, range(len(segs)))
    dependencies = nullspace(krows, m) if m else []
    moment_basis = _orthogonal_complement(dependencies, m)
    range_polys = []
    for c in moment_basis:
        per_piece = []
        for lo, _ in segs:
            acc: Poly = ()
            for ck, (_, phi) in zip(c, T.terms):
                if ck != 0:
                    acc = poly_add(acc, poly_scale(ck, phi.poly_at(lo)))
            per_piece.append(acc)
        range_polys.append(per_piece)
    return _Layout(segs, kernel_degrees, moment_basis, range_polys)


def frop_image_subspace(T: FiniteRankOp, region: IntervalRegion) -> list[tuple[Fraction, ...]]:
    """Basis of the moment vectors (int w_k f)_k attainable by functions f
    supported in the region: the orthogonal complement of the kernel
    combinations vanishing a.e. there."""
    m = len(T.terms)
    if m == 0 or region.is_empty:
        return []
    pts = {Fraction(0), Fraction(1)}
    for w, _ in T.terms:
        pts.update(w.breakpoints())
    for lo, hi in region.intervals:
        pts.add(lo)
        pts.add(hi)
    spts = sorted(pts)
    rows = []
    for lo, hi in zip(spts, spts[1:]):
        if not any(blo <= lo and hi <= bhi for blo, bhi in region.intervals):
            continue
        polys = [w.poly_at(lo) for w, _ in T.terms]
        deg = max((len(p) for p in polys), default=0)
        for d in range(deg):
            rows.append(tuple(polys[k][d] if d < len(polys[k]) else Fraction(0) for k in range(m)))
    vanishing = nullspace(rows, m)
    comp = _orthogonal_complement(vanishing, m)
    # intersect with the globally attainable moment space
    layout = _layout(T)
    if len(layout.moment_basis) == m:
        return comp
    return _intersect_spans(layout.moment_basis, comp, m)


def _intersect_spans(a: list[tuple], b: list[tuple], dim: int) -> list[tuple[Fraction, ...]]:
    """Intersection of two spans via orthogonal complements."""
    ca = _orthogonal_complement(a, dim)
    cb = _orthogonal_complement(b, dim)
    return _orthogonal_complement(ca + cb, dim)


class _FuncItem(NamedTuple):
    longvec: tuple[Fraction, ...]
    mask: int


def _range_enumeration(T: FiniteRankOp) -> tuple[list[tuple[Fraction, Fraction]], frozenset[int]]:
    """All piece-masks of supports attainable by range elements."""
    layout = _layout(T)
    segs = layout.segs
    nseg = len(segs)
    # coordinate layout over pieces where some range element is nonzero
    widths = []
    for pi in range(nseg):
        deg = max((len(per[pi]) for per in layout.range_polys), default=0)
        widths.append(deg)
    active = [pi for pi in range(nseg) if widths[pi] > 0]
    if len(active) > MAX_ENUM_PIECES:
        raise BudgetExceededError(
            f"{len(active)} active pieces exceed the enumeration budget of {MAX_ENUM_PIECES}"
        )
    offsets = {}
    pos = 0
    for pi in active:
        offsets[pi] = pos
        pos += widths[pi]
    total = pos

    def to_item(per_piece: list[Poly]) -> _FuncItem:
        xs = [Fraction(0)] * total
        mask = 0
        for pi in active:
            c = per_piece[pi]
            if c:
                mask |= 1 << pi
                off = offsets[pi]
                for d, val in enumerate(c):
                    xs[off + d] = val
        return _FuncItem(tuple(xs), mask)

    def recompute_mask(xs: tuple[Fraction, ...]) -> int:
        mask = 0
        for pi in active:
            off = offsets[pi]
            if any(xs[off + d] != 0 for d in range(widths[pi])):
                mask |= 1 << pi
        return mask

    items = []
    # echelonize the starting basis
    pivots: dict[int, _FuncItem] = {}
    for per in layout.range_polys:
        it = to_item(per)
        xs = list(it.longvec)
        for piv, pit in pivots.items():
            if xs[piv] != 0:
                r = xs[piv] / pit.longvec[piv]
                xs = [a - r * b for a, b in zip(xs, pit.longvec)]
        t = tuple(xs)
        m = recompute_mask(t)
        if m:
            lead = next(i for i, v in enumerate(t) if v != 0)
            pivots[lead] = _FuncItem(t, m)
    items = list(pivots.values())

    def constrain_piece(cur: list[_FuncItem], pi: int) -> list[_FuncItem]:
        out = cur
        for d in range(widths[pi]):
            coord = offsets[pi] + d
            pivot = None
            nxt = []
            for it in out:
                if it.longvec[coord] != 0:
                    if pivot is None:
                        pivot = it
                    else:
                        r = it.longvec[coord] / pivot.longvec[coord]
                        xs = tuple(a - r * b for a, b in zip(it.longvec, pivot.longvec))
                        m = recompute_mask(xs)
                        if m:
                            nxt.append(_FuncItem(xs, m))
                else:
                    nxt.append(it)
            out = nxt
        return out

    results: set[int] = set()

    def union_mask(cur: list[_FuncItem]) -> int:
        m = 0
        for it in cur:
            m |= it.mask
        return m

    def rec(cur: list[_FuncItem], start: int) -> None:
        results.add(union_mask(cur))
        for idx in range(start, len(active)):
            pi = active[idx]
            if union_mask(cur) & (1 << pi):
                rec(constrain_piece(cur, pi), idx + 1)

    rec(items, 0)
    return segs, frozenset(results)


def _mask_region(segs, mask: int) -> IntervalRegion:
    return IntervalRegion.of(*(segs[i] for i in range(len(segs)) if mask >> i & 1))


def frop_range_supports(T: FiniteRankOp) -> tuple[IntervalRegion, ...]:
    """All supports attainable by range elements, as canonical regions."""
    segs, masks = _range_enumeration(T)
    regions = {_mask_region(segs, m) for m in masks}
    return tuple(sorted(regions, key=lambda r: (r.measure(), r.intervals)))


def _bumps_for(T: FiniteRankOp, piece_filter) -> list[tuple[int, int, PiecewisePoly]]:
    """Monomial bump functions t^d on kernel-active pieces passing the filter."""
    layout = _layout(T)
    bumps = []
    for pi, (lo, hi) in enumerate(layout.segs):
        deg = layout.kernel_degrees[pi]
        if deg < 0 or not piece_filter(pi):
            continue
        for d in range(deg + 1):
            coeffs = [Fraction(0)] * d + [Fraction(1)]
            bumps.append((pi, d, PiecewisePoly.on_interval(lo, hi, coeffs)))
    return bumps


@lru_cache(maxsize=None)
def _image_piece_mask(T: FiniteRankOp, f: PiecewisePoly) -> int:
    layout = _layout(T)
    img = frop_apply(T, f)
    mask = 0
    for pi, (lo, _) in enumerate(layout.segs):
        if img.poly_at(lo):
            mask |= 1 << pi
    return mask


def realize_range_support(T: FiniteRankOp, S: IntervalRegion) -> PiecewisePoly:
    """A function g with supp(Tg) equal to the region, exactly."""
    segs, masks = _range_enumeration(T)
    target = 0
    for pi, (lo, hi) in enumerate(segs):
        if S.contains(IntervalRegion.of((lo, hi))):
            target |= 1 << pi
    if _mask_region(segs, target) != S or target not in masks:
        raise UnachievableSupportError(f"range support {S!r} not achievable")
    if target == 0:
        return PiecewisePoly.zero()
    bumps = _bumps_for(T, lambda pi: True)
    images = [frop_apply(T, b) for _, _, b in bumps]
    rows = []
    for pi, (lo, hi) in enumerate(segs):
        if target >> pi & 1:
            continue
        deg = max((len(img.poly_at(lo)) for img in images), default=0)
        for d in range(deg):
            rows.append(
                tuple(
                    img.poly_at(lo)[d] if d < len(img.poly_at(lo)) else Fraction(0)
                    for img in images
                )
            )
    combos = nullspace(rows, len(bumps))
    acc = PiecewisePoly.zero()
    acc_img_mask = 0
    for y in combos:
        f = PiecewisePoly.zero()
        for coef, (_, _, b) in zip(y, bumps):
            if coef != 0:
                f = pp_add(f, pp_scale(coef, b))
        fmask = _image_piece_mask(T, f)
        if fmask | acc_img_mask == acc_img_mask:
            continue
        want = acc_img_mask | fmask
        for a in range(1, len(segs) + 2):
            cand = pp_add(acc, pp_scale(a, f))
            cmask = _image_piece_mask(T, cand)
            if cmask == want:
                acc = cand
                acc_img_mask = cmask
                break
        else:  # pragma: no cover
            raise AssertionError("no cancellation-free combination found")
    if acc_img_mask != target:  # pragma: no cover - guarded by membership test
        raise UnachievableSupportError(f"range support {S!r} not achievable")
    return acc


class FropWitness(NamedTuple):
    kind: str
    f: PiecewisePoly
    g: PiecewisePoly
    note: str


@dataclass(frozen=True)
class FropCheck:
    holds: bool
    witness: FropWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


def frop_is_sbp(T: FiniteRankOp) -> FropCheck:
    """Semi band preserving, decided universally (no sampling).

    For every attainable range support S, every input supported off S must
    have an image vanishing a.e. on S; linearity in the moment vector makes
    checking monomial bumps complete.
    """
    segs, masks = _range_enumeration(T)
    for mask in sorted(masks):
        if mask == 0:
            continue
        bumps = _bumps_for(T, lambda pi: not mask >> pi & 1)
        for pi, d, b in bumps:
            if _image_piece_mask(T, b) & mask:
                g = realize_range_support(T, _mask_region(segs, mask))
                w = FropWitness(
                    "SBP-violation",
                    b,
                    g,
                    f"bump on piece {segs[pi]} is disjoint from supp(Tg) "
                    f"yet its image meets it",
                )
                return FropCheck(False, w)
    return FropCheck(True)


def frop_is_scp(T: FiniteRankOp) -> FropCheck:
    """Semi containment preserving, decided universally."""
    segs, masks = _range_enumeration(T)
    for mask in sorted(masks):
        if mask == 0:
            continue
        bumps = _bumps_for(T, lambda pi: bool(mask >> pi & 1))
        for pi, d, b in bumps:
            if _image_piece_mask(T, b) & ~mask:
                g = realize_range_support(T, _mask_region(segs, mask))
                w = FropWitness(
                    "SCP-violation",
                    b,
                    g,
                    f"bump on piece {segs[pi]} lies in the band of Tg "
                    f"yet its image escapes supp(Tg)",
                )
                return FropCheck(False, w)
    return FropCheck(True)


def replay_frop_witness(T: FiniteRankOp, w: FropWitness) -> bool:
    tg = frop_apply(T, w.g)
    tf = frop_apply(T, w.f)
    if w.kind == "SBP-violation":
        return pp_disjoint(w.f, tg) and not pp_disjoint(tf, tg)
    if w.kind == "SCP-violation":
        return pp_band_contains(tg, w.f) and not pp_band_contains(tg, tf)
    raise ValidationError(f"unknown witness kind {w.kind!r}")


# -- gallery ----------------------------------------------------------------


def make_sbp_not_scp_operator() -> FiniteRankOp:
    """Rank-two operator with both functionals supported in [0,1/2]: the
    image of anything supported in [1/2,1] is zero, so the operator is semi
    band preserving, yet inputs can steer the constant term and break semi
    containment."""
    half = Fraction(1, 2)
    w1 = PiecewisePoly.on_interval(0, half, (2,))
    phi1 = PiecewisePoly.const(1)
    w2 = PiecewisePoly.on_interval(0, half, (0, 1))
    phi2 = PiecewisePoly.on_interval(0, half, (0, 1))
    return FiniteRankOp.of((w1, phi1), (w2, phi2))


def make_full_support_projection() -> FiniteRankOp:
    """A projection onto span{1, t}: kernels biorthogonal to (1, t).

    Every nonzero range element a + b t has at most one zero, hence full
    support; both semi-preservation conditions hold trivially.
    """
    w1 = PiecewisePoly.from_pieces([(0, 1, (Fraction(4), Fraction(-6)))])
    w2 = PiecewisePoly.from_pieces([(0, 1, (Fraction(-6), Fraction(12)))])
    phi1 = PiecewisePoly.const(1)
    phi2 = PiecewisePoly.from_pieces([(0, 1, (Fraction(0), Fraction(1)))])
    return FiniteRankOp.of((w1, phi1), (w2, phi2))


def rank_one_frop(w: PiecewisePoly, phi: PiecewisePoly) -> FiniteRankOp:
    return FiniteRankOp.of((w, phi))
