"""Exact rational vectors as tuples of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def vec(*entries) -> Vector:
    return tuple(Fraction(e) for e in entries)


def from_seq(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero(dim: int) -> Vector:
    return (Fraction(0),) * dim


def basis(i: int, dim: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def scale(c, x: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def dot(x: Vector, y: Vector) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def norm_sq(x: Vector) -> Fraction:
    return dot(x, x)


def is_zero(x: Vector) -> bool:
    return all(a == 0 for a in x)


def pad(x: Vector, dim: int) -> Vector:
    if len(x) > dim:
        raise ValueError("cannot pad to a smaller dimension")
    return x + zero(dim - len(x))


def truncate(x: Vector, dim: int) -> Vector:
    return x[:dim]


def centered(x: Vector) -> Vector:
    """Project onto the trace-zero hyperplane (subtract the mean)."""
    m = sum(x, Fraction(0)) / len(x)
    return tuple(a - m for a in x)


def fmt(x: Vector) -> str:
    return ",".join(str(a) for a in x)


def parse(text: str, dim: int | None = None) -> Vector:
    v = tuple(Fraction(part) for part in text.split(","))
    if dim is not None and len(v) != dim:
        raise ValueError(f"expected {dim} coordinates, got {len(v)}")
    return v
