"""Sparse multivariate polynomials with exact rational coefficients.

Terms map exponent tuples to nonzero Fractions.  Poly objects are treated
as immutable: every operation returns a fresh instance and never mutates
its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .errors import DomainError
from .vec import Vector

Exponent = Tuple[int, ...]


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, Fraction] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise DomainError("exponent length does not match nvars")
                c = Fraction(c)
                if c != 0:
                    self.terms[e] = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(nvars)
        return Poly(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(i: int, nvars: int) -> "Poly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return Poly(nvars, {e: Fraction(1)})

    @staticmethod
    def linear_form(coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c != 0:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return Poly(n, terms)

    @staticmethod
    def power_sum(k: int, nvars: int) -> "Poly":
        """p_k = x_1^k + ... + x_n^k."""
        terms = {}
        for i in range(nvars):
            terms[tuple(k if j == i else 0 for j in range(nvars))] = Fraction(1)
        return Poly(nvars, terms)

    @staticmethod
    def monomial_product(nvars: int) -> "Poly":
        """e_n = x_1 * ... * x_n."""
        return Poly(nvars, {(1,) * nvars: Fraction(1)})

    # -- basics -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DomainError("polynomials over different variable counts")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = Poly(self.nvars)
        out.terms = terms
        return out

    def __neg__(self) -> "Poly":
        out = Poly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        out = Poly(self.nvars)
        if c != 0:
            out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise DomainError("negative polynomial power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- evaluation and substitution ------------------------------------

    def eval(self, point: Sequence) -> Fraction:
        point = [Fraction(x) for x in point]
        if len(point) != self.nvars:
            raise DomainError("evaluation point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def eval_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = float(c)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def apply_signed_perm(self, perm: Sequence[int], signs: Sequence[int]) -> "Poly":
        """Compose with the inverse of the map e_i -> signs[i] * e_{perm[i]}.

        This is the usual left action (L_w p)(x) = p(w^{-1} x): the monomial
        x^a goes to prod_i (signs[i] x_{perm[i]})^{a_i}.
        """
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            sign = 1
            for i, k in enumerate(e):
                if k:
                    ne[perm[i]] = k
                    if signs[i] < 0 and k % 2:
                        sign = -sign
            ne = tuple(ne)
            s = out.get(ne, Fraction(0)) + sign * c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    def shift(self, t: Sequence) -> "Poly":
        """Return p(x + t), expanded one variable at a time by binomials."""
        t = [Fraction(x) for x in t]
        if len(t) != self.nvars:
            raise DomainError("shift vector has wrong dimension")
        terms = self.terms
        for i, ti in enumerate(t):
            if ti == 0:
                continue
            new: Dict[Exponent, Fraction] = {}
            for e, c in terms.items():
                k = e[i]
                if k == 0:
                    s = new.get(e, Fraction(0)) + c
                    if s:
                        new[e] = s
                    else:
                        new.pop(e, None)
                    continue
                binom = 1
                power = Fraction(1)
                # (x+t)^k = sum_j C(k,j) t^{k-j} x^j, built from j = k down
                coeffs = [Fraction(0)] * (k + 1)
                for j in range(k, -1, -1):
                    coeffs[j] = c * binom * power
                    binom = binom * j // (k - j + 1)
                    power *= ti
                for j, cj in enumerate(coeffs):
                    if not cj:
                        continue
                    ne = e[:i] + (j,) + e[i + 1:]
                    s = new.get(ne, Fraction(0)) + cj
                    if s:
                        new[ne] = s
                    else:
                        new.pop(ne, None)
            terms = new
        out = Poly(self.nvars)
        out.terms = dict(terms) if terms is self.terms else terms
        return out

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute x_i -> images[i]; all images share one variable count."""
        if len(images) != self.nvars:
            raise DomainError("need one image per variable")
        nvars = images[0].nvars if images else 0
        # cache powers of each image
        powers: List[List[Poly]] = [[Poly.const(nvars, 1)] for _ in images]
        result = Poly(nvars)
        for e, c in self.terms.items():
            term = Poly.const(nvars, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * images[i])
                term = term * cache[k]
            result = result + term
        return result

    def restrict_zero_pad(self, keep: int) -> "Poly":
        """Set variables keep..nvars-1 to zero and drop them."""
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if any(e[keep:]):
                continue
            ne = e[:keep]
            s = out.get(ne, Fraction(0)) + c
            if s:
                out[ne] = s
        p = Poly(keep)
        p.terms = out
        return p

    def extend(self, nvars: int) -> "Poly":
        """View as a polynomial in more variables (new ones unused)."""
        if nvars < self.nvars:
            raise DomainError("cannot extend to fewer variables")
        p = Poly(nvars)
        pad = (0,) * (nvars - self.nvars)
        p.terms = {e + pad: c for e, c in self.terms.items()}
        return p

    def eliminate_last(self, replacement: "Poly") -> "Poly":
        """Substitute the last variable by a polynomial in the remaining ones."""
        if replacement.nvars != self.nvars - 1:
            raise DomainError("replacement must use the remaining variables")
        n = self.nvars - 1
        rep_pows: List[Poly] = [Poly.const(n, 1)]
        result = Poly(n)
        for e, c in self.terms.items():
            k = e[-1]
            while len(rep_pows) <= k:
                rep_pows.append(rep_pows[-1] * replacement)
            base = Poly(n, {e[:-1]: c})
            result = result + base * rep_pows[k]
        return result

    # -- calculus-flavoured helpers -------------------------------------

    def partial(self, i: int) -> "Poly":
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = tuple(v - 1 if j == i else v for j, v in enumerate(e))
                out[ne] = out.get(ne, Fraction(0)) + c * k
        p = Poly(self.nvars)
        p.terms = {e: c for e, c in out.items() if c}
        return p

    def homogeneous_part(self, d: int) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return p

    def homogeneous_degrees(self) -> List[int]:
        return sorted({sum(e) for e in self.terms})

    def div_linear(self, form: "Poly") -> Tuple["Poly", "Poly"]:
        """Divide by a (possibly affine) degree-1 polynomial.

        Returns (quotient, remainder) with remainder free of the pivot
        variable; for homogeneous linear forms the remainder is zero exactly
        when the form divides self.
        """
        if form.nvars != self.nvars or form.degree() > 1 or form.is_zero():
            raise DomainError("divisor must be a nonzero linear polynomial")
        pivot = None
        for e in form.terms:
            for i, k in enumerate(e):
                if k:
                    pivot = i
                    break
            if pivot is not None:
                break
        if pivot is None:
            # constant divisor
            c = form.terms[(0,) * self.nvars]
            return self.scale(1 / c), Poly(self.nvars)
        c = form.terms[tuple(1 if j == pivot else 0 for j in range(self.nvars))]
        # form = c*x_pivot + g  =>  x_pivot = (form - g)/c
        g = form - Poly.var(pivot, self.nvars).scale(c)
        quotient = Poly(self.nvars)
        rem = self
        while True:
            top = {e: v for e, v in rem.terms.items() if e[pivot] > 0}
            if not top:
                break
            d = max(e[pivot] for e in top)
            lead = Poly(self.nvars)
            lead.terms = {
                tuple(v - 1 if j == pivot else v for j, v in enumerate(e)): cv / c
                for e, cv in top.items()
                if e[pivot] == d
            }
            quotient = quotient + lead
            rem = rem - lead * form
        return quotient, rem

    # -- canonical form --------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        return sorted(self.terms.items())


def poly_from_terms(nvars: int, terms: Iterable[Tuple[Sequence[int], object]]) -> Poly:
    out: Dict[Exponent, Fraction] = {}
    for e, c in terms:
        e = tuple(int(k) for k in e)
        c = Fraction(c)
        if len(e) != nvars:
            raise DomainError("exponent length does not match nvars")
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    p = Poly(nvars)
    p.terms = out
    return p


def inner_product_form(alpha: Vector) -> Poly:
    """The linear polynomial lambda -> <lambda, alpha>."""
    return Poly.linear_form(alpha)


def monomials_of_degree(nvars: int, d: int) -> List[Exponent]:
    """All exponent tuples of total degree d, lexicographically sorted."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix: List[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], d, nvars)
    return sorted(out)
