"""JSON schemas shared by the CLI.

Rationals are strings "p/q" (plain "p" for integers).  Polynomials are
arrays of coefficients, lowest degree first; a bare string is a constant,
and a coefficient may itself be an array (a polynomial in the base
variable z sitting inside a fiber-variable polynomial).  Matrices are
arrays of rows.  Divisor keys are rendered as the plain label, "(a,b)"
for an ordered pair, "[a,b]" for an unordered pair, and "[[a,b]]" for an
involution orbit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Tuple, Union

from .exact_algebra import RingMatrix, UniPoly, ValidationError, as_fraction
from .covers_prym import (
    Divisor,
    FiberModel,
    PairFiber,
    SymFiber,
)

__all__ = [
    "scalar_to_json",
    "poly_to_json",
    "poly_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "fiber_to_json",
    "fiber_from_json",
    "pair_fiber_to_json",
    "sym_fiber_to_json",
    "divisor_to_json",
    "divisor_from_json",
    "key_to_string",
    "key_from_string",
]


def scalar_to_json(value: Fraction) -> str:
    return str(value)


def poly_to_json(p: Union[UniPoly, Fraction, int]) -> Any:
    """Constants serialize as bare strings, polynomials as coefficient arrays."""
    if isinstance(p, UniPoly):
        const = p.constant_value()
        if const is not None and isinstance(const, Fraction):
            return scalar_to_json(const)
        return [poly_to_json(c) for c in p.coeffs]
    return scalar_to_json(as_fraction(p))


def poly_from_json(data: Any, var: str = "z", inner: str = "z") -> UniPoly:
    """Parse a polynomial; ``var`` is the top variable, ``inner`` the variable
    of nested coefficient arrays."""
    if isinstance(data, (str, int)):
        return UniPoly(var, [as_fraction(data)])
    if isinstance(data, list):
        coeffs = []
        for item in data:
            if isinstance(item, list):
                coeffs.append(poly_from_json(item, var=inner))
            else:
                coeffs.append(as_fraction(item))
        return UniPoly(var, coeffs)
    raise ValidationError(f"cannot parse polynomial from {data!r}")


def matrix_to_json(m: RingMatrix) -> List[List[Any]]:
    return [[poly_to_json(e) for e in row] for row in m.entries]


def matrix_from_json(data: Any, var: str = "z") -> RingMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValidationError("a matrix is a non-empty array of rows")
    return RingMatrix([[poly_from_json(e, var=var) for e in row] for row in data])


def fiber_to_json(f: FiberModel) -> Dict[str, Any]:
    return {
        "base_label": f.base_label,
        "kind": f.kind,
        "points": [{"label": l, "mult": m} for l, m in f.points],
    }


def fiber_from_json(data: Any) -> FiberModel:
    if not isinstance(data, Mapping):
        raise ValidationError("a fiber is an object with base_label, kind, points")
    try:
        points = tuple((p["label"], int(p["mult"])) for p in data["points"])
        return FiberModel(str(data["base_label"]), points, str(data["kind"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed fiber: missing {exc}") from exc


def pair_fiber_to_json(pf: PairFiber) -> Dict[str, Any]:
    return {
        "base_label": pf.base_label,
        "diagonal_removed": pf.diagonal_removed,
        "points": [{"pair": list(k), "mult": m} for k, m in pf.points],
    }


def sym_fiber_to_json(sf: SymFiber) -> Dict[str, Any]:
    return {
        "base_label": sf.base_label,
        "points": [{"pair": list(k), "mult": m} for k, m in sf.points],
        "involution": [{"from": list(a), "to": list(b)} for a, b in sf.sigma_pairs],
    }


def key_to_string(key, kind: str) -> str:
    """Render a divisor key; ``kind`` is "point", "ordered", "sym", or "orbit"."""
    if kind == "point":
        if isinstance(key, str):
            return key
    elif isinstance(key, tuple) and len(key) == 2:
        a, b = key
        if kind == "ordered":
            return f"({a},{b})"
        if kind == "sym":
            return f"[{a},{b}]"
        if kind == "orbit":
            return f"[[{a},{b}]]"
    raise ValidationError(f"cannot render divisor key {key!r} as {kind!r}")


def key_from_string(text: str, kind: str):
    """Parse a divisor key; ``kind`` is "point", "ordered", or "sym"."""
    text = text.strip()
    if kind == "point":
        return text
    if kind == "ordered":
        if not (text.startswith("(") and text.endswith(")")):
            raise ValidationError(f"ordered pair keys look like (a,b), got {text!r}")
        a, b = (s.strip() for s in text[1:-1].split(","))
        return (a, b)
    if kind == "sym":
        if not (text.startswith("[") and text.endswith("]")):
            raise ValidationError(f"unordered pair keys look like [a,b], got {text!r}")
        a, b = (s.strip() for s in text[1:-1].split(","))
        return tuple(sorted((a, b)))
    raise ValidationError(f"unknown key kind {kind!r}")


def divisor_to_json(d: Divisor, kind: str) -> Dict[str, int]:
    """Render a divisor; ``kind`` names the key shape (see ``key_to_string``)."""
    return {key_to_string(k, kind): w for k, w in d.items()}


def divisor_from_json(data: Any, kind: str) -> Divisor:
    """Parse a divisor; ``kind`` tells how the keys are shaped."""
    if not isinstance(data, Mapping):
        raise ValidationError("a divisor is an object mapping point keys to weights")
    weights = {}
    for text, w in data.items():
        key = key_from_string(str(text), kind)
        try:
            weights[key] = int(w)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"divisor weight for {text!r} must be an integer") from exc
    return Divisor(weights)
