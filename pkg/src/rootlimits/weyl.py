"""Weyl groups of classical root systems as signed permutations.

An element acts by e_i -> signs[i] * e_{perm[i]}.  Type A elements are plain
permutations of the ambient coordinates (signs all +1); the extended group
of type D adjoins the odd sign changes through the diagram involution sigma.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError, ResourceLimitError, TheoremViolationError
from .rootsys import PropagationPair, RootSystem
from .vec import Vector

ENUMERATION_RANK_LIMIT = 8


@dataclass(frozen=True)
class WeylElement:
    perm: Tuple[int, ...]   # 0-based; i -> perm[i]
    signs: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DomainError("perm is not a permutation")
        if len(self.signs) != len(self.perm) or any(s not in (-1, 1) for s in self.signs):
            raise DomainError("signs must be +-1 of matching length")

    @property
    def dim(self) -> int:
        return len(self.perm)

    def act(self, v: Vector) -> Vector:
        if len(v) != self.dim:
            raise DomainError("dimension mismatch in Weyl action")
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(v):
            out[self.perm[i]] = self.signs[i] * x
        return tuple(out)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other (matrix product self * other)."""
        if self.dim != other.dim:
            raise DomainError("dimension mismatch in composition")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.dim))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.dim))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        perm = [0] * self.dim
        signs = [1] * self.dim
        for i in range(self.dim):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def det(self) -> int:
        return perm_sign(self.perm) * math.prod(self.signs)

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm)) and all(s == 1 for s in self.signs)


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def identity_element(dim: int) -> WeylElement:
    return WeylElement(tuple(range(dim)), (1,) * dim)


def reflection(alpha: Vector) -> WeylElement:
    """The reflection s_alpha as a signed permutation."""
    if vec.is_zero(alpha):
        raise DomainError("cannot reflect in the zero vector")
    dim = len(alpha)
    n2 = vec.norm_sq(alpha)
    perm = [0] * dim
    signs = [1] * dim
    for i in range(dim):
        e = vec.basis(i, dim)
        image = vec.sub(e, vec.scale(2 * vec.dot(alpha, e) / n2, alpha))
        nz = [(j, x) for j, x in enumerate(image) if x != 0]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise DomainError("reflection is not a signed permutation in these coordinates")
        perm[i] = nz[0][0]
        signs[i] = 1 if nz[0][1] > 0 else -1
    return WeylElement(tuple(perm), tuple(signs))


def act(w: WeylElement, v: Vector) -> Vector:
    return w.act(v)


def diagram_involution(rs: RootSystem) -> WeylElement:
    """The type-D diagram swap alpha_1 <-> alpha_2; identity otherwise.

    In f-coordinates it is the single sign change f_1 -> -f_1.
    """
    if rs.family == "D":
        signs = (-1,) + (1,) * (rs.ambient_dim - 1)
        return WeylElement(tuple(range(rs.ambient_dim)), signs)
    return identity_element(rs.ambient_dim)


@dataclass(frozen=True)
class WeylGroup:
    rs: RootSystem
    extended: bool = False

    def __post_init__(self):
        if self.extended and self.rs.family != "D":
            # W-tilde = W except in type D; normalise silently
            object.__setattr__(self, "extended", False)

    @property
    def dim(self) -> int:
        return self.rs.ambient_dim

    def order(self) -> int:
        n = self.rs.rank
        fam = self.rs.family
        if fam == "A":
            return math.factorial(n + 1)
        if fam in ("B", "C", "BC"):
            return 2**n * math.factorial(n)
        if self.extended:
            return 2**n * math.factorial(n)
        return 2 ** max(n - 1, 0) * math.factorial(n)

    def generators(self) -> List[WeylElement]:
        gens = [reflection(a) for a in self.rs.simple_roots]
        if self.extended and self.rs.family == "D":
            gens.append(diagram_involution(self.rs))
        return gens

    def elements(self, limit: int = ENUMERATION_RANK_LIMIT) -> Iterator[WeylElement]:
        """All elements, each exactly once, in the canonical (signs, perm) order."""
        if self.rs.rank > limit:
            raise ResourceLimitError(
                f"rank {self.rs.rank} exceeds the enumeration limit {limit}"
            )
        dim = self.dim
        fam = self.rs.family
        if fam == "A":
            sign_patterns: Iterable[Tuple[int, ...]] = [(1,) * dim]
        elif fam == "D" and not self.extended:
            sign_patterns = (
                s for s in itertools.product((-1, 1), repeat=dim)
                if s.count(-1) % 2 == 0
            )
        else:
            sign_patterns = itertools.product((-1, 1), repeat=dim)
        for signs in sorted(sign_patterns):
            for perm in itertools.permutations(range(dim)):
                yield WeylElement(perm, signs)

    def element_list(self) -> List[WeylElement]:
        return list(self.elements())

    def contains(self, w: WeylElement) -> bool:
        if w.dim != self.dim:
            return False
        fam = self.rs.family
        if fam == "A":
            return all(s == 1 for s in w.signs)
        if fam == "D" and not self.extended:
            return w.signs.count(-1) % 2 == 0
        return True

    def skew_sign(self, w: WeylElement) -> int:
        """The determinant character extended trivially on sigma (type D).

        For W itself this is det(w).  For extended type-D groups the diagram
        involution acts with sign +1, which makes the rho-shifted skew
        calculus close under the T isomorphism; on W(D) it agrees with det.
        """
        if self.rs.family == "D":
            return perm_sign(w.perm)
        return w.det()

    def is_poly_invariant(self, p) -> bool:
        return all(p.apply_signed_perm(g.perm, g.signs) == p for g in self.generators())

    def orbit(self, v: Vector) -> List[Vector]:
        seen = {v}
        frontier = [v]
        gens = self.generators()
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g.act(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def __repr__(self):
        tilde = "~" if (self.extended and self.rs.family == "D") else ""
        return f"W{tilde}({self.rs.family}{self.rs.rank})"


def weyl_group(rs: RootSystem, extended: bool = False) -> WeylGroup:
    return WeylGroup(rs, extended)


# ---------------------------------------------------------------------------
# stabilizers and the restriction theorem
# ---------------------------------------------------------------------------


@dataclass
class Subgroup:
    parent: WeylGroup
    elements: List[WeylElement]

    def __len__(self):
        return len(self.elements)


def stabilizer(group: WeylGroup, pair: PropagationPair) -> Subgroup:
    """Elements mapping the embedded small flat to itself."""
    if group.rs.family != pair.big.family or group.rs.rank != pair.big.rank:
        raise DomainError("group does not act on the pair's big space")
    fam = pair.small.family
    block = pair.small.ambient_dim
    kept = []
    for w in group.elements():
        if all(w.perm[i] < block for i in range(block)):
            kept.append(w)
    if fam == "A":
        return Subgroup(group, kept)
    return Subgroup(group, kept)


def restrict_element(w: WeylElement, pair: PropagationPair) -> WeylElement:
    """Restriction of a flat-stabilizing element to the small coordinates."""
    block = pair.small.ambient_dim
    if any(w.perm[i] >= block for i in range(block)):
        raise DomainError("element does not stabilize the embedded flat")
    return WeylElement(tuple(w.perm[:block]), tuple(w.signs[:block]))


def canonical_inclusion(w_small: WeylElement, pair: PropagationPair) -> WeylElement:
    """Extend a small-group element by the identity on the new coordinates."""
    extra = pair.big.ambient_dim - pair.small.ambient_dim
    perm = w_small.perm + tuple(range(w_small.dim, w_small.dim + extra))
    signs = w_small.signs + (1,) * extra
    return WeylElement(perm, signs)


@dataclass
class RestrictionCertificate:
    pair: PropagationPair
    ok: bool
    order_restricted: int
    order_expected: int
    plain_side_ok: bool
    generator_preimages: List[Tuple[WeylElement, WeylElement]]

    def as_report(self) -> dict:
        return {
            "family": self.pair.small.family,
            "rank_small": self.pair.small.rank,
            "rank_big": self.pair.big.rank,
            "status": "ok" if self.ok else "failed",
            "order": self.order_restricted,
            "order_expected": self.order_expected,
            "plain_stabilizer_matches": self.plain_side_ok,
        }


def verify_restriction_theorem(pair: PropagationPair) -> RestrictionCertificate:
    """Certify that stabilizer restrictions recover the extended small group.

    Checks {w|_small : w in W_big stabilizing the flat} and the same for the
    extended big group against W~_small as sets, and exhibits a preimage in
    W_big for each generator of W~_small (the canonical inclusion).

    For a type-D identity pair the plain-group side is genuinely W(D), not
    W~(D): no new coordinate exists to absorb a sign flip, so only proper
    propagations are certified on that side.
    """
    small_ext = WeylGroup(pair.small, extended=True)
    target = {(w.perm, w.signs) for w in small_ext.elements()}

    big_plain = WeylGroup(pair.big, extended=False)
    big_ext = WeylGroup(pair.big, extended=True)

    def restricted_set(group: WeylGroup) -> set:
        out = set()
        for w in stabilizer(group, pair).elements:
            r = restrict_element(w, pair)
            out.add((r.perm, r.signs))
        return out

    ext_side = restricted_set(big_ext)
    plain_side = restricted_set(big_plain)

    ext_ok = ext_side == target
    d_identity = pair.small.family == "D" and pair.is_identity
    plain_ok = plain_side == target if not d_identity else plain_side <= target

    preimages = []
    for g in small_ext.generators():
        cand = canonical_inclusion(g, pair)
        if not big_ext.contains(cand):
            raise TheoremViolationError("canonical inclusion leaves the big group")
        if restrict_element(cand, pair) != g:
            raise TheoremViolationError("canonical inclusion does not restrict to its source")
        preimages.append((g, cand))

    ok = ext_ok and plain_ok
    cert = RestrictionCertificate(
        pair=pair,
        ok=ok,
        order_restricted=len(ext_side),
        order_expected=small_ext.order(),
        plain_side_ok=plain_ok,
        generator_preimages=preimages,
    )
    if not ok:
        raise TheoremViolationError(
            "restriction theorem certificate failed", cert.as_report()
        )
    return cert
