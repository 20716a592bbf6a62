"""JSON file formats: exact rationals travel as strings.

Schemas (all versioned with "schema": 1):

* operator file:   {"space": {"n": N, "norm": {"p": "1"|"2"|"inf"|"a/b",
                    "weights": [...]}}, "matrix": [[...], ...]} (row-major)
* finite-rank file: {"terms": [{"kernel": PW, "image": PW}, ...]} with
                    PW = {"pieces": [{"from": r, "to": r, "coeffs": [r...]}]}
* reports round-trip losslessly; see build_analysis_report / parse helpers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .atomic import INF, AtomicSpace, SupportSet, Vector
from .errors import ValidationError
from .interval import FiniteRankOp, FropWitness, IntervalRegion, PiecewisePoly
from .operators import Operator, Witness
from .values import ExactValue, IntervalValue, SqrtValue, Value


def rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s: Any, where: str = "value") -> Fraction:
    try:
        f = Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"malformed rational {s!r} at {where}: {exc}") from None
    return f


def vector_to_json(v: Vector) -> list[str]:
    return [rat_str(x) for x in v]


def parse_vector(data, n: int, where: str = "vector") -> Vector:
    if not isinstance(data, list) or len(data) != n:
        raise ValidationError(f"{where} must be a list of {n} rationals")
    return tuple(parse_rat(x, f"{where}[{i + 1}]") for i, x in enumerate(data))


def p_to_json(p) -> str:
    return "inf" if p == INF else rat_str(Fraction(p))


def parse_p(s):
    if s == "inf":
        return INF
    return parse_rat(s, "norm exponent")


def space_to_json(space: AtomicSpace) -> dict:
    return {
        "n": space.n,
        "norm": {
            "p": p_to_json(space.norm.p),
            "weights": [rat_str(w) for w in space.norm.weights],
        },
    }


def parse_space(data: dict) -> AtomicSpace:
    if not isinstance(data, dict) or "n" not in data:
        raise ValidationError("space must carry an atom count 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError("atom count must be a positive integer")
    norm = data.get("norm")
    if norm is None:
        return AtomicSpace.lp(n, 2)
    p = parse_p(norm.get("p", "2"))
    weights = norm.get("weights")
    if weights is None:
        weights = ["1"] * n
    if len(weights) != n:
        raise ValidationError(f"{len(weights)} weights for {n} atoms")
    return AtomicSpace.lp(n, p, [parse_rat(w, f"weight {i + 1}") for i, w in enumerate(weights)])


def operator_to_json(T: Operator) -> dict:
    return {
        "schema": 1,
        "space": space_to_json(T.space),
        "matrix": [[rat_str(x) for x in row] for row in T.rows],
    }


def parse_operator(data: dict) -> Operator:
    if not isinstance(data, dict):
        raise ValidationError("operator file must be a JSON object")
    space = parse_space(data.get("space", {}))
    matrix = data.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != space.n:
        raise ValidationError(f"matrix must have {space.n} rows")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != space.n:
            raise ValidationError(f"row {i + 1} must have {space.n} entries")
        rows.append(
            tuple(parse_rat(x, f"row {i + 1}, column {j + 1}") for j, x in enumerate(row))
        )
    return Operator(space, tuple(rows))


def support_to_json(s: SupportSet) -> list[int]:
    return sorted(s.atoms)


def witness_to_json(w: Witness) -> dict:
    return {
        "kind": w.kind,
        "f": vector_to_json(w.f),
        "g": vector_to_json(w.g),
        "note": w.note,
    }


def parse_witness(data: dict, n: int) -> Witness:
    return Witness(
        data["kind"],
        parse_vector(data["f"], n, "witness f"),
        parse_vector(data["g"], n, "witness g"),
        data.get("note", ""),
    )


def value_to_json(v: Value) -> dict:
    if isinstance(v, ExactValue):
        return {"kind": "exact", "value": rat_str(v.value)}
    if isinstance(v, SqrtValue):
        return {"kind": "sqrt", "square": rat_str(v.square)}
    if isinstance(v, IntervalValue):
        return {"kind": "interval", "lo": rat_str(v.lo), "hi": rat_str(v.hi)}
    raise ValidationError(f"unknown value kind {v!r}")


def parse_value(data: dict) -> Value:
    kind = data.get("kind")
    if kind == "exact":
        return ExactValue(parse_rat(data["value"]))
    if kind == "sqrt":
        return SqrtValue(parse_rat(data["square"]))
    if kind == "interval":
        return IntervalValue(parse_rat(data["lo"]), parse_rat(data["hi"]))
    raise ValidationError(f"unknown value kind {kind!r}")


# -- piecewise polynomial files ----------------------------------------------


def piecewise_to_json(f: PiecewisePoly) -> dict:
    return {
        "pieces": [
            {"from": rat_str(lo), "to": rat_str(hi), "coeffs": [rat_str(c) for c in coeffs]}
            for lo, hi, coeffs in f.pieces
        ]
    }


def parse_piecewise(data: dict, where: str = "function") -> PiecewisePoly:
    if not isinstance(data, dict) or "pieces" not in data:
        raise ValidationError(f"{where} must carry a 'pieces' list")
    pieces = []
    for i, pc in enumerate(data["pieces"]):
        pieces.append(
            (
                parse_rat(pc["from"], f"{where} piece {i + 1} 'from'"),
                parse_rat(pc["to"], f"{where} piece {i + 1} 'to'"),
                tuple(
                    parse_rat(c, f"{where} piece {i + 1} coeff {k}")
                    for k, c in enumerate(pc.get("coeffs", []))
                ),
            )
        )
    try:
        return PiecewisePoly.from_pieces(pieces)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def frop_to_json(T: FiniteRankOp) -> dict:
    return {
        "schema": 1,
        "terms": [
            {"kernel": piecewise_to_json(w), "image": piecewise_to_json(phi)}
            for w, phi in T.terms
        ],
    }


def parse_frop(data: dict) -> FiniteRankOp:
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ValidationError("finite-rank file must carry a 'terms' list")
    terms = []
    for i, t in enumerate(data["terms"]):
        terms.append(
            (
                parse_piecewise(t["kernel"], f"term {i + 1} kernel"),
                parse_piecewise(t["image"], f"term {i + 1} image"),
            )
        )
    return FiniteRankOp(tuple(terms))


def region_to_json(r: IntervalRegion) -> list[list[str]]:
    return [[rat_str(lo), rat_str(hi)] for lo, hi in r.intervals]


def frop_witness_to_json(w: FropWitness) -> dict:
    return {
        "kind": w.kind,
        "f": piecewise_to_json(w.f),
        "g": piecewise_to_json(w.g),
        "note": w.note,
    }


# -- analysis reports ---------------------------------------------------------


def build_analysis_report(T: Operator) -> dict:
    """Run the full atomic pipeline and assemble the report dict."""
    from .operators import (
        enumerate_sigma,
        is_band_preserving,
        is_beta,
        is_disjointness_preserving,
        is_projection,
        is_sbp,
        is_scp,
        minimal_supports,
        operator_norm,
        verify_sigma_closures,
    )
    from .wce import WceForm, decompose_wce

    sigma = enumerate_sigma(T)
    preds = {}
    for name, fn in (
        ("band_preserving", is_band_preserving),
        ("disjointness_preserving", is_disjointness_preserving),
        ("band_inclusion_preserving", is_beta),
        ("semi_band_preserving", is_sbp),
        ("semi_containment_preserving", is_scp),
    ):
        res = fn(T)
        entry: dict[str, Any] = {"holds": res.holds}
        if res.witness is not None:
            entry["witness"] = witness_to_json(res.witness)
        preds[name] = entry
    closures = verify_sigma_closures(T, sigma)
    closure_entry: dict[str, Any] = {
        "union": closures.union,
        "intersection": closures.intersection,
        "complement": closures.complement,
    }
    if closures.witness is not None:
        closure_entry["witness"] = witness_to_json(closures.witness)
    decomp = decompose_wce(T)
    if isinstance(decomp, WceForm):
        wce_entry: dict[str, Any] = {
            "decomposable": True,
            "blocks": [support_to_json(b) for b in decomp.blocks],
            "u": [vector_to_json(u) for u in decomp.u],
            "psi": [vector_to_json(p) for p in decomp.psi],
        }
        classification = "weighted conditional expectation operator"
    else:
        wce_entry = {"decomposable": False, "witness": witness_to_json(decomp)}
        classification = "not a weighted conditional expectation operator"
    return {
        "schema": 1,
        "input": operator_to_json(T),
        "predicates": preds,
        "sigma": {
            "s_t": support_to_json(sigma.s_t),
            "supports": [support_to_json(s) for s in sigma.supports],
        },
        "minimal_supports": [support_to_json(s) for s in minimal_supports(sigma)],
        "closures": closure_entry,
        "projection": is_projection(T),
        "operator_norm": value_to_json(operator_norm(T.space, T)),
        "classification": classification,
        "wce": wce_entry,
    }


def build_interval_report(T: FiniteRankOp) -> dict:
    from .interval import frop_is_sbp, frop_is_scp, frop_range_supports

    supports = frop_range_supports(T)
    sbp = frop_is_sbp(T)
    scp = frop_is_scp(T)
    sbp_entry: dict[str, Any] = {"holds": sbp.holds}
    if sbp.witness is not None:
        sbp_entry["witness"] = frop_witness_to_json(sbp.witness)
    scp_entry: dict[str, Any] = {"holds": scp.holds}
    if scp.witness is not None:
        scp_entry["witness"] = frop_witness_to_json(scp.witness)
    return {
        "schema": 1,
        "input": frop_to_json(T),
        "range_supports": [region_to_json(r) for r in supports],
        "semi_band_preserving": sbp_entry,
        "semi_containment_preserving": scp_entry,
    }


def build_probe_report(p, dims, budget: int, seed: int, findings) -> dict:
    from .wce import ProbeFinding

    out = []
    for f in findings:
        assert isinstance(f, ProbeFinding)
        out.append(
            {
                "space": space_to_json(f.space),
                "matrix": [[rat_str(x) for x in row] for row in f.operator.rows],
                "facts": {
                    "projection": True,
                    "operator_norm": value_to_json(f.norm_evidence),
                    "semi_containment_preserving": True,
                    "strictly_monotone": True,
                    "semi_band_preserving": {
                        "holds": False,
                        "witness": witness_to_json(f.sbp_witness),
                    },
                },
            }
        )
    return {
        "schema": 1,
        "p": p_to_json(p if p == INF else Fraction(p)),
        "dims": list(dims),
        "budget": budget,
        "seed": seed,
        "findings": out,
    }


def parse_probe_report(data: dict):
    """Reconstruct (space, operator, norm evidence, witness) tuples."""
    out = []
    for f in data.get("findings", []):
        space = parse_space(f["space"])
        rows = tuple(
            tuple(parse_rat(x) for x in row) for row in f["matrix"]
        )
        T = Operator(space, rows)
        nrm = parse_value(f["facts"]["operator_norm"])
        w = parse_witness(f["facts"]["semi_band_preserving"]["witness"], space.n)
        out.append((space, T, nrm, w))
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"
