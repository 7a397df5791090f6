"""Classical restricted root systems in explicit f-basis coordinates.

Conventions, fixed once and used everywhere:

* A_k lives in the trace-zero hyperplane of R^{k+1}; roots f_i - f_j,
  simple roots alpha_j = f_{j+1} - f_j.
* B_k in R^k: +-f_i, +-f_i +- f_j; alpha_1 = f_1, alpha_j = f_j - f_{j-1}.
* C_k in R^k: +-2f_i, +-f_i +- f_j; alpha_1 = 2 f_1, alpha_j = f_j - f_{j-1}.
* D_k in R^k: +-f_i +- f_j; alpha_1 = f_1 + f_2, alpha_2 = f_2 - f_1,
  alpha_j = f_j - f_{j-1} for j >= 3.
* BC_k is the union of the B_k and C_k root vectors; its simple roots are
  those of the indivisible subsystem (type B).

Simple roots are indexed so that propagation (rank growth) adds new simple
roots at the high-index end, i.e. existing alpha_j keep their index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError
from .linalg import solve
from .vec import Vector

FAMILIES = ("A", "B", "C", "D", "BC")

# minimal rank at which the family diagram in the simple-root numbering is
# defined; smaller ranks are still meaningful as root data and appear as
# derived systems (reductions of BC, space-descriptor presets)
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "BC": 1}
MIN_RANK_DERIVED = {"A": 1, "B": 1, "C": 1, "D": 2, "BC": 1}


@dataclass(frozen=True)
class Family:
    label: str
    rank: int

    def __post_init__(self):
        if self.label not in FAMILIES:
            raise DomainError(f"unknown family label {self.label!r}")
        if self.rank < MIN_RANK[self.label]:
            raise DomainError(
                f"rank {self.rank} inadmissible for family {self.label} "
                f"(needs rank >= {MIN_RANK[self.label]})"
            )


def _positive_roots(label: str, rank: int) -> List[Vector]:
    n = rank
    roots: List[Vector] = []
    if label == "A":
        dim = n + 1
        for j in range(dim):
            for i in range(j):
                roots.append(vec.sub(vec.basis(j, dim), vec.basis(i, dim)))
    elif label in ("B", "BC"):
        for i in range(n):
            roots.append(vec.basis(i, n))
        for j in range(n):
            for i in range(j):
                roots.append(vec.sub(vec.basis(j, n), vec.basis(i, n)))
                roots.append(vec.add(vec.basis(j, n), vec.basis(i, n)))
        if label == "BC":
            for i in range(n):
                roots.append(vec.scale(2, vec.basis(i, n)))
    elif label == "C":
        for i in range(n):
            roots.append(vec.scale(2, vec.basis(i, n)))
        for j in range(n):
            for i in range(j):
                roots.append(vec.sub(vec.basis(j, n), vec.basis(i, n)))
                roots.append(vec.add(vec.basis(j, n), vec.basis(i, n)))
    elif label == "D":
        for j in range(n):
            for i in range(j):
                roots.append(vec.sub(vec.basis(j, n), vec.basis(i, n)))
                roots.append(vec.add(vec.basis(j, n), vec.basis(i, n)))
    return sorted(set(roots))


def _simple_roots(label: str, rank: int) -> List[Vector]:
    n = rank
    if label == "A":
        dim = n + 1
        return [vec.sub(vec.basis(j + 1, dim), vec.basis(j, dim)) for j in range(n)]
    if label in ("B", "BC"):
        out = [vec.basis(0, n)]
    elif label == "C":
        out = [vec.scale(2, vec.basis(0, n))]
    elif label == "D":
        if n < 2:
            raise DomainError("type D needs rank >= 2")
        out = [vec.add(vec.basis(0, n), vec.basis(1, n)), vec.sub(vec.basis(1, n), vec.basis(0, n))]
    else:
        raise DomainError(f"unknown family {label!r}")
    for j in range(len(out), n):
        out.append(vec.sub(vec.basis(j, n), vec.basis(j - 1, n)))
    return out


@dataclass(frozen=True)
class RootSystem:
    """A classical (possibly non-reduced) root system with multiplicities."""

    family: str
    rank: int
    ambient_dim: int
    positive_roots: Tuple[Vector, ...]
    simple_roots: Tuple[Vector, ...]
    mult: Dict[Vector, int] = field(compare=False)

    @property
    def roots(self) -> Tuple[Vector, ...]:
        return self.positive_roots + tuple(vec.neg(a) for a in self.positive_roots)

    @property
    def is_reduced(self) -> bool:
        return self.family != "BC"

    def mult_of(self, alpha: Vector) -> int:
        try:
            return self.mult[alpha]
        except KeyError:
            neg = vec.neg(alpha)
            if neg in self.mult:
                return self.mult[neg]
            raise DomainError(f"{alpha} is not a root of {self.family}{self.rank}")

    def contains_root(self, alpha: Vector) -> bool:
        return alpha in self.mult or vec.neg(alpha) in self.mult

    def with_mult(self, mult_by_normsq: Dict[Fraction, int]) -> "RootSystem":
        """Overlay multiplicities, constant on each root-length class."""
        new = {}
        for a in self.positive_roots:
            key = vec.norm_sq(a)
            if key not in mult_by_normsq:
                raise DomainError(f"no multiplicity given for roots of square length {key}")
            m = int(mult_by_normsq[key])
            if m <= 0:
                raise DomainError("multiplicities must be positive")
            new[a] = m
        return RootSystem(
            self.family, self.rank, self.ambient_dim, self.positive_roots,
            self.simple_roots, new,
        )

    def mult_classes(self) -> Dict[Fraction, int]:
        out: Dict[Fraction, int] = {}
        for a in self.positive_roots:
            key = vec.norm_sq(a)
            m = self.mult[a]
            if out.setdefault(key, m) != m:
                raise DomainError("multiplicity is not constant on length classes")
        return out

    def validate_weight(self, mu: Vector):
        if len(mu) != self.ambient_dim:
            raise DomainError("weight has wrong ambient dimension")
        if self.family == "A" and sum(mu, Fraction(0)) != 0:
            raise DomainError("type-A weights must have coordinate sum zero")

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank})"


def _build(family: str, rank: int, derived: bool = False) -> RootSystem:
    floor = MIN_RANK_DERIVED if derived else MIN_RANK
    if family not in FAMILIES:
        raise DomainError(f"unknown family label {family!r}")
    if rank < floor[family]:
        raise DomainError(
            f"rank {rank} inadmissible for family {family} (needs rank >= {floor[family]})"
        )
    ambient = rank + 1 if family == "A" else rank
    if derived and family in ("B", "C") and rank == 1:
        simple = [_positive_roots(family, 1)[0]]
    else:
        simple = _simple_roots(family, rank)
    pos = _positive_roots(family, rank)
    mult = {a: 1 for a in pos}
    return RootSystem(family, rank, ambient, tuple(pos), tuple(simple), mult)


def build_root_system(family, rank: int | None = None) -> RootSystem:
    """Construct the root system of a classical family; multiplicities 1."""
    if isinstance(family, Family):
        return _build(family.label, family.rank)
    if rank is None:
        raise DomainError("rank required")
    return _build(str(family), int(rank))


def reduced_systems(rs: RootSystem) -> Tuple[RootSystem, RootSystem]:
    """Return (Sigma_{1/2}, Sigma_2): indivisible and unmultipliable parts."""
    if rs.is_reduced:
        return rs, rs
    # BC: the indivisible roots form type B, the unmultipliable ones type C
    half = _build("B", rs.rank, derived=True)
    half_mult = {a: rs.mult_of(a) for a in half.positive_roots}
    half = RootSystem("B", rs.rank, rs.ambient_dim, half.positive_roots,
                      half.simple_roots, half_mult)
    two = _build("C", rs.rank, derived=True)
    two_mult = {a: rs.mult_of(a) for a in two.positive_roots}
    two = RootSystem("C", rs.rank, rs.ambient_dim, two.positive_roots,
                     two.simple_roots, two_mult)
    return half, two


def rho(rs: RootSystem) -> Vector:
    """Half the multiplicity-weighted sum of positive roots."""
    total = vec.zero(rs.ambient_dim)
    for a in rs.positive_roots:
        total = vec.add(total, vec.scale(rs.mult[a], a))
    return vec.scale(Fraction(1, 2), total)


def root_coefficients(rs: RootSystem, gamma: Vector) -> List[Fraction]:
    """Coefficients of gamma in the simple-root basis."""
    a = [[rs.simple_roots[j][i] for j in range(len(rs.simple_roots))]
         for i in range(rs.ambient_dim)]
    sol = solve(a, list(gamma))
    if sol is None:
        raise DomainError("vector is not in the span of the simple roots")
    return sol


def highest_root(rs: RootSystem) -> Vector:
    """The unique positive root dominating all others (irreducible systems)."""
    if rs.family == "D" and rs.rank == 2:
        raise DomainError("D_2 is reducible; no highest root")
    best = None
    best_height = None
    for a in rs.positive_roots:
        h = sum(root_coefficients(rs, a), Fraction(0))
        if best_height is None or h > best_height:
            best, best_height = a, h
    # dominance check: every positive root is componentwise below
    top = root_coefficients(rs, best)
    for a in rs.positive_roots:
        ca = root_coefficients(rs, a)
        if any(x > y for x, y in zip(ca, top)):
            raise DomainError("no componentwise-maximal root; system reducible?")
    return best


def class_one_fundamental_weights(rs: RootSystem) -> List[Vector]:
    """Weights xi_i with <xi_i, alpha_j> / <alpha_j, alpha_j> = delta_ij.

    Defined over the simple roots of a reduced system; apply to Sigma_2 of a
    non-reduced one first.
    """
    if not rs.is_reduced:
        raise DomainError("class-one weights are defined on a reduced system; "
                          "use reduced_systems(rs)[1]")
    n = rs.ambient_dim
    out = []
    for i in range(rs.rank):
        rows = [list(a) for a in rs.simple_roots]
        rhs = [vec.norm_sq(a) if j == i else Fraction(0)
               for j, a in enumerate(rs.simple_roots)]
        if rs.family == "A":
            rows.append([Fraction(1)] * n)
            rhs.append(Fraction(0))
        sol = solve(rows, rhs)
        if sol is None:
            raise DomainError("singular Gram system for fundamental weights")
        out.append(tuple(sol))
    return out


def lambda_plus_member(mu: Vector, rs: RootSystem) -> bool:
    """Spherical-lattice membership: (mu, a)/(a, a) a nonnegative integer."""
    rs.validate_weight(mu)
    for a in rs.positive_roots:
        r = vec.dot(mu, a) / vec.norm_sq(a)
        if r < 0 or r.denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class SphericalLatticePoint:
    index: Tuple[int, ...]
    weight: Vector


def mu_of_index(index: Sequence[int], rs: RootSystem) -> SphericalLatticePoint:
    """The lattice point sum_j index[j] * xi_j."""
    index = tuple(int(k) for k in index)
    if len(index) != rs.rank:
        raise DomainError(f"index length {len(index)} != rank {rs.rank}")
    if any(k < 0 for k in index):
        raise DomainError("index entries must be nonnegative")
    base = rs if rs.is_reduced else reduced_systems(rs)[1]
    xi = class_one_fundamental_weights(base)
    w = vec.zero(rs.ambient_dim)
    for k, x in zip(index, xi):
        w = vec.add(w, vec.scale(k, x))
    return SphericalLatticePoint(index, w)


# ---------------------------------------------------------------------------
# the classification table of classical irreducible symmetric spaces
# ---------------------------------------------------------------------------

ROW_NAMES = {
    1: "group SU(j)",
    2: "group SO(2j+1)",
    3: "group SO(2j)",
    4: "group Sp(j)",
    5: "AIII SU(p+q)/S(U(p)xU(q))",
    6: "AI SU(j)/SO(j)",
    7: "AII SU(2j)/Sp(j)",
    8: "BDI SO(p+q)/(SO(p)xSO(q))",
    9: "DIII SO(2j)/U(j)",
    10: "CII Sp(p+q)/(Sp(p)xSp(q))",
    11: "CI Sp(j)/U(j)",
}

GROUP_ROWS = (1, 2, 3, 4)

# square lengths in the f-basis: short = 1 (f_i), middle = 2 (f_i +- f_j), long = 4 (2 f_i)
_SHORT, _MID, _LONG = Fraction(1), Fraction(2), Fraction(4)


@dataclass(frozen=True)
class SpaceDescriptor:
    row: int
    params: Tuple[int, ...]
    restricted: RootSystem
    rank: int
    dim: int

    @property
    def name(self) -> str:
        return ROW_NAMES[self.row]

    @property
    def is_group_manifold(self) -> bool:
        return self.row in GROUP_ROWS

    def full_system(self) -> RootSystem:
        """The root system Delta of the compact group, where available.

        For the group-manifold rows this is the classical system of G itself
        (the restricted system has the same vectors with multiplicity 2).
        """
        if not self.is_group_manifold:
            raise DomainError(
                "full root-system data is only built in for group manifolds; "
                "supply Delta explicitly for other rows"
            )
        fam = {1: "A", 2: "B", 3: "D", 4: "C"}[self.row]
        j = self.params[0]
        rank = j - 1 if fam == "A" else j
        return _build(fam, rank, derived=True)


def _descriptor(row, params, family, rank, mult_by_class) -> SpaceDescriptor:
    rs = _build(family, rank, derived=True).with_mult(mult_by_class)
    dim = rank + sum(rs.mult[a] for a in rs.positive_roots)
    return SpaceDescriptor(row, tuple(params), rs, rank, dim)


def space_descriptor(row: int, *params: int) -> SpaceDescriptor:
    """Build the restricted root data of one row of the classification table.

    Rows 1-4, 6, 7, 9, 11 take one parameter j; rows 5, 8, 10 take (p, q).
    The multiplicity presets are validated against the table's dimension
    column by the identity dim = rank + sum of multiplicities.
    """
    params = tuple(int(x) for x in params)
    if row in (1, 2, 3, 4, 6, 7, 9, 11):
        if len(params) != 1:
            raise DomainError(f"row {row} takes one parameter j")
        (j,) = params
    elif row in (5, 8, 10):
        if len(params) != 2:
            raise DomainError(f"row {row} takes parameters (p, q)")
        p, q = min(params), max(params)
        if p < 1:
            raise DomainError("need p, q >= 1")
    else:
        raise DomainError("row must be in 1..11")

    if row == 1:
        if j < 2:
            raise DomainError("SU(j) needs j >= 2")
        d = _descriptor(row, params, "A", j - 1, {_MID: 2})
        expected = j * j - 1
    elif row == 2:
        if j < 1:
            raise DomainError("SO(2j+1) needs j >= 1")
        d = _descriptor(row, params, "B", j, {_SHORT: 2, _MID: 2})
        expected = 2 * j * j + j
    elif row == 3:
        if j < 2:
            raise DomainError("SO(2j) needs j >= 2")
        d = _descriptor(row, params, "D", j, {_MID: 2})
        expected = 2 * j * j - j
    elif row == 4:
        if j < 1:
            raise DomainError("Sp(j) needs j >= 1")
        d = _descriptor(row, params, "C", j, {_LONG: 2, _MID: 2})
        expected = 2 * j * j + j
    elif row == 5:
        if p == q:
            d = _descriptor(row, params, "C", p, {_LONG: 1, _MID: 2})
        else:
            d = _descriptor(row, params, "BC", p,
                            {_SHORT: 2 * (q - p), _LONG: 1, _MID: 2})
        expected = 2 * p * q
    elif row == 6:
        if j < 2:
            raise DomainError("SU(j)/SO(j) needs j >= 2")
        d = _descriptor(row, params, "A", j - 1, {_MID: 1})
        expected = (j - 1) * (j + 2) // 2
    elif row == 7:
        if j < 2:
            raise DomainError("SU(2j)/Sp(j) needs j >= 2")
        d = _descriptor(row, params, "A", j - 1, {_MID: 4})
        expected = 2 * j * j - j - 1
    elif row == 8:
        if p + q < 3:
            raise DomainError("SO(p+q) needs p + q >= 3")
        if p == q:
            d = _descriptor(row, params, "D", p, {_MID: 1})
        else:
            d = _descriptor(row, params, "B", p, {_SHORT: q - p, _MID: 1})
        expected = p * q
    elif row == 9:
        if j < 2:
            raise DomainError("SO(2j)/U(j) needs j >= 2")
        m, odd = divmod(j, 2)
        if odd:
            d = _descriptor(row, params, "BC", m, {_SHORT: 4, _LONG: 1, _MID: 4})
        else:
            d = _descriptor(row, params, "C", m, {_LONG: 1, _MID: 4})
        expected = j * (j - 1)
    elif row == 10:
        if p == q:
            d = _descriptor(row, params, "C", p, {_LONG: 3, _MID: 4})
        else:
            d = _descriptor(row, params, "BC", p,
                            {_SHORT: 4 * (q - p), _LONG: 3, _MID: 4})
        expected = 4 * p * q
    else:  # row 11
        if j < 1:
            raise DomainError("Sp(j)/U(j) needs j >= 1")
        d = _descriptor(row, params, "C", j, {_LONG: 1, _MID: 1})
        expected = j * (j + 1)
    if d.dim != expected:
        raise DomainError(
            f"multiplicity preset for row {row} fails the dimension identity "
            f"({d.dim} != {expected})"
        )
    return d


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropagationPair:
    """A rank inclusion rs_small -> rs_big within one family.

    The coordinate embedding appends zero coordinates, so simple roots keep
    their indices: alpha_{big,j} restricted to the small space is
    alpha_{small,j} for j <= small rank.
    """

    small: RootSystem
    big: RootSystem

    def embed_weight(self, mu: Vector) -> Vector:
        self.small.validate_weight(mu)
        return vec.pad(mu, self.big.ambient_dim)

    def restrict_weight(self, mu: Vector) -> Vector:
        """Orthogonal projection onto the embedded small space."""
        self.big.validate_weight(mu)
        out = vec.truncate(mu, self.small.ambient_dim)
        if self.small.family == "A":
            out = vec.centered(out)
        return out

    @property
    def is_identity(self) -> bool:
        return self.small.rank == self.big.rank


def propagate(rs: RootSystem, target_rank: int) -> PropagationPair:
    """Extend a root system to a larger rank of the same family.

    Multiplicities carry over by root-length class (they are Weyl-invariant,
    so this is well defined).
    """
    if target_rank < rs.rank:
        raise DomainError("propagation cannot decrease the rank")
    if rs.family == "D" and rs.rank < 4:
        raise DomainError("type-D propagation requires rank >= 4")
    classes = rs.mult_classes()
    big = _build(rs.family, target_rank, derived=True)
    big_classes = {vec.norm_sq(a) for a in big.positive_roots}
    overlay = {key: classes.get(key, 1) for key in big_classes}
    missing = [key for key in big_classes if key not in classes]
    if missing and rs.positive_roots:
        # all classes present at any rank >= 2 of the same family; rank-1
        # degenerates may genuinely lack the middle class
        overlay.update({key: 1 for key in missing})
        if any(classes.values()) and len(set(classes.values())) == 1:
            overlay = {key: next(iter(classes.values())) for key in big_classes}
    return PropagationPair(rs, big.with_mult(overlay))


def propagation_pair(family: str, rank_small: int, rank_big: int,
                     mult: int = 1) -> PropagationPair:
    """Convenience constructor for a uniform-multiplicity pair."""
    small = _build(family, rank_small, derived=True)
    small = small.with_mult({vec.norm_sq(a): mult for a in small.positive_roots})
    return propagate(small, rank_big)
