"""Canonical JSON codecs for every wire type.

All rationals are exact strings "p/q" (or "p"); dumps are byte-stable:
sorted keys, fixed separators, canonical term ordering.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence

from . import vec
from .errors import DomainError
from .compact_fourier import CentralData, FourierData, FullSystem
from .geometry import Polytope
from .limits import PropagationTower
from .polynomial import Poly, poly_from_terms
from .pwmodel import ExpPoly
from .rootsys import RootSystem, build_root_system, _build
from .vec import Vector
from .weyl import WeylElement


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


def weight_to_json(w: Vector) -> List[str]:
    return [frac_str(x) for x in w]


def weight_from_json(data: Sequence) -> Vector:
    return tuple(Fraction(x) for x in data)


def root_key(a: Vector) -> str:
    return ",".join(frac_str(x) for x in a)


def rootsystem_to_json(rs: RootSystem) -> dict:
    return {
        "family": rs.family,
        "rank": rs.rank,
        "mult": {root_key(a): rs.mult[a] for a in rs.positive_roots},
    }


def rootsystem_from_json(data: dict) -> RootSystem:
    rs = _build(data["family"], int(data["rank"]), derived=True)
    mult = data.get("mult")
    if not mult:
        return rs
    by_class: Dict[Fraction, int] = {}
    for key, m in mult.items():
        a = vec.parse(key, rs.ambient_dim)
        if not rs.contains_root(a):
            raise DomainError(f"{key} is not a root of {rs.family}{rs.rank}")
        cls = vec.norm_sq(a)
        if by_class.setdefault(cls, int(m)) != int(m):
            raise DomainError("multiplicities not constant on length classes")
    return rs.with_mult({vec.norm_sq(a): by_class.get(vec.norm_sq(a), 1)
                         for a in rs.positive_roots})


def weyl_to_json(w: WeylElement) -> dict:
    return {"perm": [p + 1 for p in w.perm], "signs": list(w.signs)}


def weyl_from_json(data: dict) -> WeylElement:
    return WeylElement(tuple(p - 1 for p in data["perm"]), tuple(data["signs"]))


def poly_to_json(p: Poly) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [{"exp": list(e), "coef": frac_str(c)} for e, c in p.sorted_terms()],
    }


def poly_from_json(data: dict) -> Poly:
    return poly_from_terms(
        int(data["nvars"]),
        [(t["exp"], Fraction(t["coef"])) for t in data.get("terms", [])],
    )


def exppoly_to_json(f: ExpPoly) -> dict:
    terms = []
    for (a, c), p in sorted(f.terms.items()):
        entry = {"a": weight_to_json(a), "p": poly_to_json(p)}
        if c:
            entry["logc"] = frac_str(c)
        terms.append(entry)
    return {"dim": f.dim, "terms": terms}


def exppoly_from_json(data: dict) -> ExpPoly:
    dim = int(data["dim"])
    terms = {}
    for t in data.get("terms", []):
        key = (weight_from_json(t["a"]), Fraction(t.get("logc", 0)))
        p = poly_from_json(t["p"])
        terms[key] = terms.get(key, Poly.zero(dim)) + p
    return ExpPoly(dim, terms)


def fourier_to_json(d: FourierData) -> dict:
    return {
        "rank": d.lattice.rank,
        "entries": [
            {"I": list(i), "coef": frac_str(c) if isinstance(c, Fraction) else c}
            for i, c in sorted(d.coeffs.items())
        ],
    }


def fourier_from_json(data: dict, rs: RootSystem) -> FourierData:
    coeffs = {}
    for t in data.get("entries", []):
        c = t["coef"]
        coeffs[tuple(t["I"])] = c if isinstance(c, float) else Fraction(c)
    return FourierData(rs, coeffs)


def central_to_json(d: CentralData) -> dict:
    return {
        "rank": d.full.rs.rank,
        "entries": [{"J": list(j), "coef": frac_str(c)}
                    for j, c in sorted(d.coeffs.items())],
    }


def central_from_json(data: dict, full: FullSystem) -> CentralData:
    return CentralData(
        full,
        {tuple(t["J"]): Fraction(t["coef"]) for t in data.get("entries", [])},
    )


def polytope_to_json(p: Polytope) -> dict:
    return {
        "ineqs": [{"normal": weight_to_json(n), "bound": frac_str(b)}
                  for n, b in p.inequalities]
    }


def polytope_from_json(data: dict) -> Polytope:
    ineqs = [(weight_from_json(t["normal"]), Fraction(t["bound"]))
             for t in data.get("ineqs", [])]
    if not ineqs:
        raise DomainError("polytope needs at least one inequality")
    return Polytope.from_inequalities(len(ineqs[0][0]), ineqs)


def tower_to_json(t: PropagationTower) -> dict:
    return {"family": t.family, "levels": list(t.levels), "mult_preset": t.mult}


def tower_from_json(data: dict) -> PropagationTower:
    return PropagationTower(data["family"], tuple(data["levels"]),
                            int(data.get("mult_preset", 1)))


def dumps(obj) -> str:
    """Byte-stable canonical serialisation."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def to_float_tree(obj):
    """Replace exact rational strings by floats (for --float output)."""
    if isinstance(obj, dict):
        return {k: to_float_tree(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [to_float_tree(v) for v in obj]
    if isinstance(obj, str):
        try:
            return float(Fraction(obj))
        except (ValueError, ZeroDivisionError):
            return obj
    return obj
