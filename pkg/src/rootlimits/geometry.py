"""The invariant domains Omega and Omega*, membership, inradius, and the
injectivity-radius table.

All polytope data is measured in units of pi: an inequality (normal, b)
means <normal, x> < b*pi, so membership is exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError, TheoremViolationError
from .linalg import RowSpace, solve
from .rootsys import (
    PropagationPair,
    RootSystem,
    SpaceDescriptor,
    highest_root,
    reduced_systems,
    root_coefficients,
)
from .vec import Vector
from .weyl import WeylGroup

Inequality = Tuple[Vector, Fraction]


def _canonical(normal: Vector, bound: Fraction) -> Inequality:
    """Scale so the normal is a primitive integer vector (direction kept)."""
    if vec.is_zero(normal):
        raise DomainError("zero normal in inequality")
    den = math.lcm(*(x.denominator for x in normal))
    ints = [x * den for x in normal]
    g = math.gcd(*(abs(int(x)) for x in ints if x != 0))
    scale = Fraction(den, g)
    return tuple(x * scale for x in normal), bound * scale


@dataclass(frozen=True)
class Polytope:
    """Intersection of strict halfspaces <n, x> < b*pi, symmetric under x -> -x."""

    dim: int
    inequalities: Tuple[Inequality, ...]

    @staticmethod
    def from_inequalities(dim: int, ineqs: Sequence[Inequality]) -> "Polytope":
        seen = {}
        for n, b in ineqs:
            n, b = _canonical(tuple(Fraction(x) for x in n), Fraction(b))
            if n in seen:
                seen[n] = min(seen[n], b)
            else:
                seen[n] = b
        return Polytope(dim, tuple(sorted(seen.items())))

    def is_symmetric(self) -> bool:
        table = dict(self.inequalities)
        return all(table.get(vec.neg(n)) == b for n, b in self.inequalities)

    def contains(self, x: Vector) -> bool:
        """Strict membership; x in units of pi."""
        if len(x) != self.dim:
            raise DomainError("point has wrong dimension")
        return all(vec.dot(n, x) < b for n, b in self.inequalities)

    def same_normal_bound(self, normal: Vector) -> Optional[Fraction]:
        n, b = _canonical(normal, Fraction(1))
        table = dict(self.inequalities)
        got = table.get(n)
        return None if got is None else got / b


def contains(poly: Polytope, x: Sequence) -> bool:
    return poly.contains(tuple(Fraction(v) for v in x))


# ---------------------------------------------------------------------------
# Omega and Omega*
# ---------------------------------------------------------------------------


def omega(rs: RootSystem) -> Polytope:
    """{X : |alpha(X)| < pi/2 for all roots alpha}."""
    half = Fraction(1, 2)
    ineqs = []
    for a in rs.positive_roots:
        ineqs.append((a, half))
        ineqs.append((vec.neg(a), half))
    return Polytope.from_inequalities(rs.ambient_dim, ineqs)


def _sigma_vector(rs2: RootSystem) -> Vector:
    total = vec.zero(rs2.ambient_dim)
    for a in rs2.simple_roots:
        total = vec.add(total, a)
    return vec.scale(2, total)


def omega_star(rs: RootSystem) -> Polytope:
    """Omega for Sigma_2 of type A/C; the sigma-orbit polytope for B/D.

    Computed from the Weyl orbit of twice the sum of the Sigma_2 simple
    roots and cross-checked against the closed coordinate forms.
    """
    rs2 = reduced_systems(rs)[1]
    if rs2.family in ("A", "C"):
        result = omega(rs)
    else:
        group = WeylGroup(rs2)
        sigma = _sigma_vector(rs2)
        half = Fraction(1, 2)
        ineqs = []
        for v in group.orbit(sigma):
            ineqs.append((v, half))
            ineqs.append((vec.neg(v), half))
        result = Polytope.from_inequalities(rs.ambient_dim, ineqs)
    expected = _omega_star_closed_form(rs)
    if expected is not None and result != expected:
        raise TheoremViolationError(
            "orbit construction of Omega* disagrees with the closed form",
            {"family": rs.family, "rank": rs.rank},
        )
    return result


def _omega_star_closed_form(rs: RootSystem) -> Optional[Polytope]:
    n = rs.ambient_dim
    quarter = Fraction(1, 4)
    fam2 = reduced_systems(rs)[1].family
    if fam2 == "B":
        ineqs = []
        for i in range(n):
            e = vec.basis(i, n)
            ineqs.append((e, quarter))
            ineqs.append((vec.neg(e), quarter))
        return Polytope.from_inequalities(n, ineqs)
    if fam2 == "D":
        ineqs = []
        for j in range(n):
            for i in range(j):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = vec.add(vec.scale(sj, vec.basis(j, n)),
                                    vec.scale(si, vec.basis(i, n)))
                        ineqs.append((v, quarter))
        return Polytope.from_inequalities(n, ineqs)
    return None  # A and C coincide with omega by construction


# ---------------------------------------------------------------------------
# implication certificates and the intersection lemma
# ---------------------------------------------------------------------------


def _implies(system: Sequence[Inequality], target: Inequality,
             flat_family: str) -> bool:
    """Is the target halfspace a consequence of the system?

    Searches explicit Farkas combinations: a matching normal, a nonnegative
    two-term combination, or (type A) the trace-zero mean chain
    x_i = (1/(n+1)) sum_j (x_i - x_j).
    """
    tn, tb = _canonical(*target)
    table = dict(system)
    got = table.get(tn)
    if got is not None and got <= tb:
        return True
    ineqs = list(system)
    for i in range(len(ineqs)):
        for j in range(i, len(ineqs)):
            (n1, b1), (n2, b2) = ineqs[i], ineqs[j]
            rows = [[n1[k], n2[k]] for k in range(len(tn))]
            sol = solve(rows, list(tn))
            if sol is None:
                continue
            c1, c2 = sol
            if c1 >= 0 and c2 >= 0 and c1 * b1 + c2 * b2 <= tb:
                return True
    if flat_family == "A":
        # target should be a centered coordinate functional
        dim = len(tn)
        for i in range(dim):
            chain = vec.zero(dim)
            total_bound = Fraction(0)
            ok = True
            for jdx in range(dim):
                if jdx == i:
                    continue
                cand = vec.sub(vec.basis(i, dim), vec.basis(jdx, dim))
                n, b = _canonical(cand, Fraction(1))
                got = table.get(n)
                if got is None:
                    ok = False
                    break
                chain = vec.add(chain, vec.scale(Fraction(1, dim), cand))
                total_bound += Fraction(1, dim) * got
            if ok and vec.centered(chain) == vec.centered(tn) and total_bound <= tb:
                return True
            if ok and chain == tuple(Fraction(x) for x in tn) and total_bound <= tb:
                return True
    return False


def _restricted_system(poly: Polytope, pair: PropagationPair) -> List[Inequality]:
    out = []
    for n, b in poly.inequalities:
        r = pair.restrict_weight(n)
        if vec.is_zero(r):
            if b <= 0:
                raise DomainError("restricted system is empty")
            continue
        out.append(_canonical(r, b))
    return out


def _vertices(ineqs: Sequence[Inequality], dim: int,
              flat_family: str) -> List[Vector]:
    """Vertex enumeration of the closure by basis subsets (small ranks only)."""
    import itertools

    rows_all = [list(n) for n, _ in ineqs]
    if flat_family == "A":
        constraint = ([Fraction(1)] * dim, Fraction(0))
    else:
        constraint = None
    verts = set()
    eff = dim - (1 if constraint else 0)
    for subset in itertools.combinations(range(len(ineqs)), eff):
        rows = [rows_all[i] for i in subset]
        rhs = [ineqs[i][1] for i in subset]
        if constraint:
            rows = rows + [constraint[0]]
            rhs = rhs + [constraint[1]]
        space = RowSpace(dim)
        if not all(space.add(r) for r in rows):
            continue
        x = solve(rows, rhs)
        if x is None:
            continue
        if all(vec.dot(tuple(x), n) <= b for n, b in ineqs):
            verts.add(tuple(x))
    return sorted(verts)


@dataclass
class IntersectionCertificate:
    pair: PropagationPair
    ok: bool
    small_implied_by_restriction: bool
    restriction_implied_by_small: bool
    vertices_checked: bool

    def as_report(self) -> dict:
        return {
            "family": self.pair.small.family,
            "rank_small": self.pair.small.rank,
            "rank_big": self.pair.big.rank,
            "status": "ok" if self.ok else "failed",
            "vertices_checked": self.vertices_checked,
        }


def check_intersection(pair: PropagationPair,
                       with_vertices: Optional[bool] = None) -> IntersectionCertificate:
    """Certify Omega*_small = Omega*_big intersected with the small flat.

    Both inclusions are established by explicit Farkas combinations (the
    executable form of the lemma's proof); at small rank the two inequality
    systems are additionally compared by vertex enumeration.
    """
    fam = pair.small.family
    small = omega_star(pair.small)
    big = omega_star(pair.big)
    restricted = _restricted_system(big, pair)
    small_sys = [_canonical(n, b) for n, b in small.inequalities]

    dir1 = all(_implies(restricted, t, fam) for t in small_sys)
    dir2 = all(_implies(small_sys, t, fam) for t in restricted)

    if with_vertices is None:
        with_vertices = pair.small.rank <= 3 and len(restricted) <= 40
    verts_ok = True
    if with_vertices:
        va = _vertices(small_sys, pair.small.ambient_dim, fam)
        vb = _vertices(restricted, pair.small.ambient_dim, fam)
        verts_ok = va == vb

    ok = dir1 and dir2 and verts_ok
    cert = IntersectionCertificate(pair, ok, dir1, dir2, with_vertices)
    if not ok:
        raise TheoremViolationError("Omega* intersection lemma failed",
                                    cert.as_report())
    return cert


def omega_star_subset_omega(rs: RootSystem) -> bool:
    """Farkas-certified inclusion Omega* <= Omega."""
    fam = rs.family
    star = [_canonical(n, b) for n, b in omega_star(rs).inequalities]
    return all(_implies(star, t, fam) for t in omega(rs).inequalities)


# ---------------------------------------------------------------------------
# radii
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactRadius:
    """A length r given exactly through r^2 (in units of pi^2).

    `value` is r in units of pi when r^2 happens to be a perfect rational
    square, else None.
    """

    sq: Fraction

    @property
    def value(self) -> Optional[Fraction]:
        num, den = self.sq.numerator, self.sq.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    @property
    def float_value(self) -> float:
        return math.sqrt(float(self.sq)) * math.pi


def inradius(poly: Polytope, flat_family: str | None = None) -> ExactRadius:
    """Largest ball radius fitting in the polytope: min over facets of b/|n|.

    The polytope must be bounded and 0-symmetric.  For type A the normals
    already lie in the trace-zero flat, so facet distances are intrinsic.
    """
    if not poly.inequalities:
        raise DomainError("unbounded polytope (no inequalities)")
    if not poly.is_symmetric():
        raise DomainError("inradius requires a 0-symmetric polytope")
    space = RowSpace(poly.dim)
    for n, _ in poly.inequalities:
        space.add(list(n))
    needed = poly.dim - (1 if flat_family == "A" else 0)
    if space.rank < needed:
        raise DomainError("unbounded polytope (normals do not span)")
    best = None
    for n, b in poly.inequalities:
        if b <= 0:
            raise DomainError("empty interior")
        d2 = b * b / vec.norm_sq(n)
        if best is None or d2 < best:
            best = d2
    return ExactRadius(best)


def circumradius_sq(rs: RootSystem) -> Fraction:
    """Squared circumradius of Omega, from the chamber-simplex vertices.

    Omega is the Weyl orbit of {X dominant : delta(X) <= pi/2}, a simplex
    with vertices 0 and fundamental coweights scaled by the highest-root
    coefficients; the maximum norm is attained at a vertex.
    """
    delta = highest_root(rs)
    coeffs = root_coefficients(rs, delta)
    best = Fraction(0)
    for i in range(rs.rank):
        rows = [list(a) for a in rs.simple_roots]
        rhs = [Fraction(1 if j == i else 0) for j in range(rs.rank)]
        if rs.family == "A":
            rows.append([Fraction(1)] * rs.ambient_dim)
            rhs.append(Fraction(0))
        w = solve(rows, rhs)
        if w is None:
            raise DomainError("could not solve for a fundamental coweight")
        v = vec.scale(Fraction(1, 2) / coeffs[i], tuple(w))
        best = max(best, vec.norm_sq(v))
    return best


_SQRT2PI = ExactRadius(Fraction(2))
_2PI = ExactRadius(Fraction(4))


def injectivity_radius(target) -> ExactRadius:
    """Injectivity radius in the -Tr(XY) metric, keyed by the type of Sigma_2.

    sqrt(2) pi for Sigma_2 of type A or C (SU and Sp series), 2 pi for type
    B or D (the SO series); constant along each classical series.  Accepts a
    SpaceDescriptor, a RootSystem, or a compact group name like "SU(5)".
    """
    if isinstance(target, str):
        name = target.strip().upper()
        if name.startswith("SU(") or name.startswith("SP("):
            return _SQRT2PI
        if name.startswith("SO(") or name.startswith("SPIN("):
            return _2PI
        raise DomainError(f"unknown group name {target!r}")
    if isinstance(target, SpaceDescriptor):
        rs = target.restricted
    elif isinstance(target, RootSystem):
        rs = target
    else:
        raise DomainError("expected a descriptor, root system, or group name")
    fam2 = reduced_systems(rs)[1].family
    if fam2 in ("A", "C"):
        return _SQRT2PI
    if fam2 in ("B", "D"):
        return _2PI
    raise DomainError(f"no injectivity radius for Sigma_2 of type {fam2}")
