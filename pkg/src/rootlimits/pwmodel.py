"""A finitely presented model of Paley-Wiener data.

Exponential polynomials sum p_j(lambda) * exp(<a_j, lambda> + c_j) with
rational a_j, c_j and exact polynomial parts; the growth parameter is
tracked as the squared support radius max |a_j|^2.  The rho-shifted skew
sector carries its data canonically as the image under the T isomorphism
(an extended-invariant polynomial), so T and its inverse are exact; raw
skew polynomials are admitted and canonicalised by exact division by the
root product, which is the executable form of the wall-vanishing lemma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError, TheoremViolationError
from .invariants import (
    from_effective,
    functions_equal,
    is_invariant,
    restrict_poly,
    to_effective,
)
from .polynomial import Poly
from .rootsys import PropagationPair, RootSystem, rho as restricted_rho
from .vec import Vector
from .weyl import WeylElement, WeylGroup

# ---------------------------------------------------------------------------
# the root product
# ---------------------------------------------------------------------------


def varpi_poly(rs: RootSystem) -> Poly:
    """Product of the linear forms <lambda, alpha> over the positive roots."""
    out = Poly.const(rs.ambient_dim, 1)
    for a in rs.positive_roots:
        out = out * Poly.linear_form(a)
    return out


def varpi_eval(rs: RootSystem, point: Vector) -> Fraction:
    total = Fraction(1)
    for a in rs.positive_roots:
        total *= vec.dot(point, a)
    return total


def compose_shifted(p: Poly, w: WeylElement, rho_vec: Vector) -> Poly:
    """Return lambda -> p(w(lambda + rho) - rho)."""
    winv = w.inverse()
    r = p.shift([-x for x in rho_vec])
    s = r.apply_signed_perm(winv.perm, winv.signs)
    return s.shift(rho_vec)


# ---------------------------------------------------------------------------
# exponential polynomials
# ---------------------------------------------------------------------------

TermKey = Tuple[Vector, Fraction]


class ExpPoly:
    """Finite sum of terms p(lambda) * exp(<a, lambda> + c)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Dict[TermKey, Poly] | None = None):
        self.dim = dim
        self.terms: Dict[TermKey, Poly] = {}
        if terms:
            for (a, c), p in terms.items():
                if len(a) != dim or p.nvars != dim:
                    raise DomainError("exponential term dimension mismatch")
                if not p.is_zero():
                    key = (tuple(Fraction(x) for x in a), Fraction(c))
                    if key in self.terms:
                        self.terms[key] = self.terms[key] + p
                    else:
                        self.terms[key] = p
        self.terms = {k: p for k, p in self.terms.items() if not p.is_zero()}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(p: Poly) -> "ExpPoly":
        return ExpPoly(p.nvars, {(vec.zero(p.nvars), Fraction(0)): p})

    @staticmethod
    def exponential(a: Vector) -> "ExpPoly":
        dim = len(a)
        return ExpPoly(dim, {(tuple(Fraction(x) for x in a), Fraction(0)):
                             Poly.const(dim, 1)})

    @staticmethod
    def zero(dim: int) -> "ExpPoly":
        return ExpPoly(dim)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(vec.is_zero(a) and c == 0 for a, c in self.terms)

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise DomainError("exponential part present; not a polynomial")
        out = Poly.zero(self.dim)
        for p in self.terms.values():
            out = out + p
        return out

    @property
    def radius_sq(self) -> Fraction:
        """Squared support radius max |a_j|^2 (exact)."""
        return max((vec.norm_sq(a) for a, _ in self.terms), default=Fraction(0))

    @property
    def radius(self) -> float:
        return math.sqrt(float(self.radius_sq))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExpPoly)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"ExpPoly(dim={self.dim}, nterms={len(self.terms)})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if self.dim != other.dim:
            raise DomainError("dimension mismatch")
        out = dict(self.terms)
        for key, p in other.terms.items():
            if key in out:
                s = out[key] + p
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = p
        return ExpPoly(self.dim, out)

    def scale(self, c) -> "ExpPoly":
        c = Fraction(c)
        if c == 0:
            return ExpPoly(self.dim)
        return ExpPoly(self.dim, {k: p.scale(c) for k, p in self.terms.items()})

    def mul_poly(self, q: Poly) -> "ExpPoly":
        if q.nvars != self.dim:
            raise DomainError("dimension mismatch")
        return ExpPoly(self.dim, {k: p * q for k, p in self.terms.items()})

    # -- group actions ------------------------------------------------------

    def apply_element(self, w: WeylElement) -> "ExpPoly":
        """F -> F o w^{-1}: exponents move by w, polynomial parts compose."""
        out: Dict[TermKey, Poly] = {}
        for (a, c), p in self.terms.items():
            key = (w.act(a), c)
            img = p.apply_signed_perm(w.perm, w.signs)
            out[key] = out.get(key, Poly.zero(self.dim)) + img
        return ExpPoly(self.dim, out)

    def compose_shifted(self, w: WeylElement, rho_vec: Vector) -> "ExpPoly":
        """F -> (lambda -> F(w(lambda + rho) - rho))."""
        winv = w.inverse()
        out: Dict[TermKey, Poly] = {}
        for (a, c), p in self.terms.items():
            a_new = winv.act(a)
            c_new = c + vec.dot(vec.sub(a_new, a), rho_vec)
            q = compose_shifted(p, w, rho_vec)
            key = (a_new, c_new)
            out[key] = out.get(key, Poly.zero(self.dim)) + q
        return ExpPoly(self.dim, out)

    # -- evaluation -----------------------------------------------------------

    def eval_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for (a, c), p in self.terms.items():
            total += p.eval_float(point) * math.exp(
                sum(float(x) * float(y) for x, y in zip(a, point)) + float(c)
            )
        return total

    def eval_exact(self, point: Vector) -> Fraction:
        if not self.is_polynomial():
            raise DomainError("exact evaluation needs a polynomial carrier")
        return self.to_poly().eval(point)


def symmetrize(f: ExpPoly | Poly, group: WeylGroup) -> ExpPoly:
    """Group average; fixed by the group, same support radius."""
    F = ExpPoly.from_poly(f) if isinstance(f, Poly) else f
    if F.dim != group.dim:
        raise DomainError("dimension mismatch")
    total = ExpPoly.zero(F.dim)
    count = 0
    for w in group.elements():
        total = total + F.apply_element(w)
        count += 1
    return total.scale(Fraction(1, count))


def is_exp_invariant(f: ExpPoly, group: WeylGroup) -> bool:
    return all(f.apply_element(g) == f for g in group.generators())


# ---------------------------------------------------------------------------
# the rho-shifted skew sector and the T isomorphism
# ---------------------------------------------------------------------------


@dataclass
class RhoShiftedSkew:
    """rho-shifted skew Paley-Wiener data.

    Polynomial-sector values are stored through their T image `inv` (an
    extended-invariant polynomial); `expand()` materialises the skew
    polynomial varpi(lambda+rho) inv(lambda+rho) / varpi(rho).  Exponential
    carriers keep an explicit ExpPoly and support no T calculus.
    """

    group: WeylGroup
    rho: Vector
    inv: Optional[Poly] = None
    exp_base: Optional[ExpPoly] = None

    def __post_init__(self):
        if (self.inv is None) == (self.exp_base is None):
            raise DomainError("exactly one carrier must be present")
        if not self.group.rs.is_reduced:
            raise DomainError("skew calculus requires a reduced root system")

    @property
    def is_polynomial(self) -> bool:
        return self.inv is not None

    def expand(self) -> Poly:
        if self.inv is None:
            raise DomainError("exponential carrier has no polynomial expansion")
        rs = self.group.rs
        w0 = varpi_eval(rs, self.rho)
        if w0 == 0:
            raise DomainError("rho is singular for this root system")
        shifted = (varpi_poly(rs) * self.inv).shift(self.rho)
        return shifted.scale(Fraction(1, 1) / w0)

    def shifted_value_at(self, mu: Vector) -> Fraction:
        """Phi(mu - rho), evaluated without full expansion."""
        if self.inv is None:
            raise DomainError("exponential carrier is not pointwise-exact")
        rs = self.group.rs
        return varpi_eval(rs, mu) * self.inv.eval(mu) / varpi_eval(rs, self.rho)


def skew_character_holds(phi: Poly, group: WeylGroup, rho_vec: Vector) -> bool:
    """Check Phi(w(lambda+rho)-rho) = sign(w) Phi(lambda) on the generators.

    The sign is the determinant character extended trivially on the type-D
    diagram involution (which fixes rho), matching the compact picture where
    invariance under the extended group shows up as plain equality on sigma.
    """
    rs = group.rs
    for g in group.generators():
        lhs = compose_shifted(phi, g, rho_vec)
        rhs = phi.scale(group.skew_sign(g))
        if to_effective(lhs, rs) != to_effective(rhs, rs):
            return False
    return True


def wall_residues(phi: Poly, group: WeylGroup, rho_vec: Vector) -> List[Fraction]:
    """Remainders of Phi(lambda - rho) modulo each positive-root form.

    All zero for skew data: the executable content of the wall-vanishing
    lemma.  Returned as 0/nonzero markers (leading remainder coefficients).
    """
    rs = group.rs
    shifted = to_effective(phi.shift([-x for x in rho_vec]), rs)
    out = []
    for a in rs.positive_roots:
        form = to_effective(Poly.linear_form(a), rs)
        _, rem = shifted.div_linear(form)
        out.append(Fraction(0) if rem.is_zero() else sorted(rem.terms.values())[0])
    return out


def skew_from_poly(phi: Poly, group: WeylGroup, rho_vec: Vector) -> RhoShiftedSkew:
    """Canonicalise a raw skew polynomial by exact division by varpi."""
    rs = group.rs
    if phi.nvars != rs.ambient_dim:
        raise DomainError("dimension mismatch")
    if not skew_character_holds(phi, group, rho_vec):
        raise DomainError("polynomial does not satisfy the shifted skew condition")
    shifted = to_effective(phi.shift([-x for x in rho_vec]), rs)
    for a in rs.positive_roots:
        form = to_effective(Poly.linear_form(a), rs)
        quotient, rem = shifted.div_linear(form)
        if not rem.is_zero():
            raise TheoremViolationError(
                "skew polynomial not divisible by a root form",
                {"root": [str(x) for x in a]},
            )
        shifted = quotient
    inv = from_effective(shifted, rs).scale(varpi_eval(rs, rho_vec))
    return RhoShiftedSkew(group, rho_vec, inv=inv)


def rho_skew_symmetrize(f: ExpPoly | Poly, group: WeylGroup,
                        rho_vec: Vector) -> RhoShiftedSkew:
    """Signed average (1/|W|) sum sign(w) F(w(lambda+rho)-rho)."""
    F = ExpPoly.from_poly(f) if isinstance(f, Poly) else f
    if F.dim != group.dim:
        raise DomainError("dimension mismatch")
    total = ExpPoly.zero(F.dim)
    count = 0
    for w in group.elements():
        total = total + F.compose_shifted(w, rho_vec).scale(group.skew_sign(w))
        count += 1
    total = total.scale(Fraction(1, count))
    if total.is_polynomial():
        return skew_from_poly(total.to_poly(), group, rho_vec)
    for g in group.generators():
        lhs = total.compose_shifted(g, rho_vec)
        if lhs != total.scale(group.skew_sign(g)):
            raise TheoremViolationError("skew symmetrization failed to be skew")
    return RhoShiftedSkew(group, rho_vec, exp_base=total)


def op_T(skew: RhoShiftedSkew) -> Poly:
    """T(Phi)(lambda) = (varpi(rho)/varpi(lambda)) Phi(lambda - rho)."""
    if skew.inv is None:
        raise DomainError("T calculus is defined on the polynomial sector only")
    return skew.inv


def op_T_inv(f: Poly, group: WeylGroup, rho_vec: Vector) -> RhoShiftedSkew:
    """Inverse of T: Phi(lambda) = varpi(lambda+rho) F(lambda+rho)/varpi(rho)."""
    if f.nvars != group.dim:
        raise DomainError("dimension mismatch")
    if not is_invariant(f, group):
        raise DomainError("T inverse needs an extended-invariant polynomial")
    return RhoShiftedSkew(group, tuple(Fraction(x) for x in rho_vec), inv=f)


# ---------------------------------------------------------------------------
# restriction maps
# ---------------------------------------------------------------------------


def restrict_flat(f: ExpPoly | Poly, pair: PropagationPair):
    """The flat restriction: substitute the embedding, project exponents."""
    if isinstance(f, Poly):
        return restrict_poly(f, pair)
    out: Dict[TermKey, Poly] = {}
    dim = pair.small.ambient_dim
    for (a, c), p in f.terms.items():
        key = (pair.restrict_weight(a), c)
        q = restrict_poly(p, pair)
        out[key] = out.get(key, Poly.zero(dim)) + q
    return ExpPoly(dim, out)


def restrict_rho_shifted(skew: RhoShiftedSkew, pair: PropagationPair,
                         rho_small: Vector | None = None) -> RhoShiftedSkew:
    """The rho-shifted restriction: conjugate flat restriction by T.

    Composite T_small^{-1} ( T_big(Phi) restricted ), exactly the displayed
    formula of the surjectivity theorem for the shifted spaces.
    """
    if skew.group.rs.rank != pair.big.rank or skew.group.rs.family != pair.big.family:
        raise DomainError("skew data does not live on the pair's big space")
    if rho_small is None:
        rho_small = restricted_rho(pair.small)
    f_big = op_T(skew)
    f_small = restrict_poly(f_big, pair)
    small_group = WeylGroup(pair.small, extended=True)
    return op_T_inv(f_small, small_group, rho_small)
