"""Compact-side spherical Fourier coefficient calculus.

Spherical data is a finitely supported map from the class-one lattice
(indexed by tuples I with mu_I = sum I_j xi_j) to coefficients; the degree
weights come from the Weyl dimension formula of the full root system of
the group, which for the group-manifold rows is the classical system
itself.  A brute-force Freudenthal oracle provides weight multiplicities,
character restrictions and branching multiplicities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError, ResourceLimitError, TheoremViolationError
from .polynomial import Poly
from .pwmodel import ExpPoly, varpi_eval, varpi_poly
from .rootsys import (
    PropagationPair,
    RootSystem,
    SpaceDescriptor,
    class_one_fundamental_weights,
    lambda_plus_member,
    mu_of_index,
    reduced_systems,
    rho as restricted_rho,
)
from .linalg import solve
from .vec import Vector
from .weyl import WeylGroup

# ---------------------------------------------------------------------------
# the full root system of the group
# ---------------------------------------------------------------------------


class FullSystem:
    """A reduced root system treated as Delta of a simply connected group."""

    def __init__(self, rs: RootSystem):
        if not rs.is_reduced:
            raise DomainError("the full system of a group is reduced")
        self.rs = rs
        self.rho = restricted_rho(
            RootSystem(rs.family, rs.rank, rs.ambient_dim, rs.positive_roots,
                       rs.simple_roots, {a: 1 for a in rs.positive_roots})
        )
        self._mult_cache: Dict[Vector, Dict[Vector, Fraction]] = {}

    @staticmethod
    def for_descriptor(desc: SpaceDescriptor) -> "FullSystem":
        return FullSystem(desc.full_system())

    def simple_coefficients(self, v: Vector) -> Optional[List[Fraction]]:
        a = [[self.rs.simple_roots[j][i] for j in range(self.rs.rank)]
             for i in range(self.rs.ambient_dim)]
        return solve(a, list(v))

    def fundamental_weights(self) -> List[Vector]:
        """omega_i with 2 <omega_i, alpha_j> / <alpha_j, alpha_j> = delta_ij."""
        out = []
        for i in range(self.rs.rank):
            rows = [list(a) for a in self.rs.simple_roots]
            rhs = [vec.norm_sq(a) / 2 if j == i else Fraction(0)
                   for j, a in enumerate(self.rs.simple_roots)]
            if self.rs.family == "A":
                rows.append([Fraction(1)] * self.rs.ambient_dim)
                rhs.append(Fraction(0))
            sol = solve(rows, rhs)
            if sol is None:
                raise DomainError("singular system for fundamental weights")
            out.append(tuple(sol))
        return out

    def is_dominant_integral(self, mu: Vector) -> bool:
        self.rs.validate_weight(mu)
        for a in self.rs.positive_roots:
            r = 2 * vec.dot(mu, a) / vec.norm_sq(a)
            if r < 0 or r.denominator != 1:
                return False
        return True

    def dominantize(self, mu: Vector) -> Vector:
        fam = self.rs.family
        if fam == "A":
            return tuple(sorted(mu))
        if fam in ("B", "C"):
            return tuple(sorted(abs(x) for x in mu))
        if fam == "D":
            vals = sorted(abs(x) for x in mu)
            negs = sum(1 for x in mu if x < 0)
            if negs % 2:
                vals[0] = -vals[0]
            return tuple(vals)
        raise DomainError(f"no dominantization for family {fam}")

    def lower_by(self, la: Vector, mu: Vector) -> Optional[List[Fraction]]:
        """Coefficients of la - mu over the simple roots, if nonneg integral."""
        c = self.simple_coefficients(vec.sub(la, mu))
        if c is None:
            return None
        if any(x < 0 or x.denominator != 1 for x in c):
            return None
        return c

    def deg(self, mu: Vector) -> Fraction:
        """Weyl dimension formula varpi(mu + rho) / varpi(rho)."""
        return varpi_eval(self.rs, vec.add(mu, self.rho)) / varpi_eval(self.rs, self.rho)

    # -- weight multiplicities (Freudenthal) ------------------------------

    def weight_multiplicities(self, la: Vector,
                              max_weights: int = 200_000) -> Dict[Vector, Fraction]:
        """Multiplicities of the dominant weights of the module V_la."""
        la = tuple(Fraction(x) for x in la)
        if la in self._mult_cache:
            return self._mult_cache[la]
        if not self.is_dominant_integral(la):
            raise DomainError(f"{la} is not dominant integral")
        rho_ = self.rho
        # collect dominant weights below la by saturated descent
        dominant: List[Vector] = []
        seen = {la}
        frontier = [la]
        dominant.append(la)
        while frontier:
            nxt = []
            for w in frontier:
                for a in self.rs.simple_roots:
                    u = vec.sub(w, a)
                    if u in seen:
                        continue
                    ud = self.dominantize(u)
                    if self.lower_by(la, ud) is None:
                        continue
                    seen.add(u)
                    if len(seen) > max_weights:
                        raise ResourceLimitError("weight diagram too large")
                    nxt.append(u)
                    if u == ud and u not in dominant:
                        dominant.append(u)
            frontier = nxt
        # order dominant weights by decreasing height (pairing with rho)
        dominant.sort(key=lambda w: vec.dot(w, rho_), reverse=True)
        mult: Dict[Vector, Fraction] = {la: Fraction(1)}
        norm_top = vec.norm_sq(vec.add(la, rho_))
        for w in dominant[1:]:
            denom = norm_top - vec.norm_sq(vec.add(w, rho_))
            if denom == 0:
                raise TheoremViolationError("Freudenthal denominator vanished")
            total = Fraction(0)
            for a in self.rs.positive_roots:
                u = vec.add(w, a)
                while True:
                    ud = self.dominantize(u)
                    m = mult.get(ud)
                    if m is None:
                        break
                    total += m * vec.dot(u, a)
                    u = vec.add(u, a)
            mult[w] = 2 * total / denom
        mult = {w: m for w, m in mult.items() if m != 0}
        self._mult_cache[la] = mult
        return mult

    def orbit(self, mu: Vector) -> List[Vector]:
        return WeylGroup(self.rs).orbit(mu)

    def module_dim(self, la: Vector) -> Fraction:
        mult = self.weight_multiplicities(la)
        return sum((m * len(self.orbit(w)) for w, m in mult.items()), Fraction(0))

    def character_eval(self, mu: Vector, theta_turns: Sequence,
                       tol: float = 1e-9) -> complex:
        """Character at exp of the torus point given in turns (of 2 pi).

        Quotient of alternating sums; at the identity the limit deg(mu) is
        returned exactly, elsewhere a singular denominator raises with a
        suggestion to perturb.
        """
        theta = [Fraction(x) for x in theta_turns]
        if len(theta) != self.rs.ambient_dim:
            raise DomainError("torus point has wrong dimension")
        if all(x == 0 for x in theta):
            return complex(self.deg(mu))
        group = WeylGroup(self.rs)

        def alt(nu: Vector) -> complex:
            total = 0.0 + 0.0j
            for w in group.elements():
                phase = 2.0 * math.pi * float(vec.dot(w.act(nu), tuple(theta)))
                total += w.det() * cmath.exp(1j * phase)
            return total

        denom = alt(self.rho)
        scale = math.sqrt(group.order())
        if abs(denom) < tol * scale:
            raise DomainError(
                "torus point is singular for the character quotient; "
                "perturb the angles away from the walls"
            )
        return alt(vec.add(mu, self.rho)) / denom


# ---------------------------------------------------------------------------
# spherical Fourier data
# ---------------------------------------------------------------------------


@dataclass
class FourierData:
    """Finitely supported coefficients on the class-one lattice of rs."""

    rs: RootSystem
    coeffs: Dict[Tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        lattice = self.rs if self.rs.is_reduced else reduced_systems(self.rs)[1]
        rank = lattice.rank
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(int(k) for k in key)
            if len(key) != rank or any(k < 0 for k in key):
                raise DomainError(f"bad lattice index {key}")
            c = c if isinstance(c, float) else Fraction(c)
            if c != 0:
                clean[key] = c
        self.coeffs = clean

    @property
    def lattice(self) -> RootSystem:
        return self.rs if self.rs.is_reduced else reduced_systems(self.rs)[1]

    def weight_of(self, index: Tuple[int, ...]) -> Vector:
        return mu_of_index(index, self.rs).weight

    def support(self) -> List[Tuple[int, ...]]:
        return sorted(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FourierData)
            and self.rs == other.rs
            and self.coeffs == other.coeffs
        )


@dataclass
class CentralData:
    """Central-function Fourier coefficients on the full dominant lattice.

    Keys are coordinate tuples J against the fundamental weights omega_j.
    """

    full: FullSystem
    coeffs: Dict[Tuple[int, ...], Fraction] = field(default_factory=dict)

    def weight_of(self, key: Tuple[int, ...]) -> Vector:
        omegas = self.full.fundamental_weights()
        w = vec.zero(self.full.rs.ambient_dim)
        for k, om in zip(key, omegas):
            w = vec.add(w, vec.scale(k, om))
        return w


@dataclass
class DimPolynomial:
    """deg as a polynomial: varpi(mu + rho_full) / varpi(rho_full)."""

    poly: Poly
    rho_full: Vector
    full: FullSystem

    def eval(self, mu: Vector) -> Fraction:
        return self.full.deg(mu)


def dim_polynomial(full: FullSystem) -> DimPolynomial:
    w0 = varpi_eval(full.rs, full.rho)
    poly = varpi_poly(full.rs).shift(full.rho).scale(Fraction(1) / w0)
    return DimPolynomial(poly, full.rho, full)


# ---------------------------------------------------------------------------
# the operators
# ---------------------------------------------------------------------------


@dataclass
class ShiftedView:
    """The rho-shifted reindexing of spherical data: value at mu + rho."""

    data: FourierData
    rho: Vector

    def value_at_shifted(self, index: Tuple[int, ...]) -> Fraction:
        """Value at mu_I + rho, equal to the unshifted value at mu_I."""
        return self.data.coeffs.get(tuple(index), Fraction(0))

    def support_weights(self) -> List[Vector]:
        return [vec.add(self.data.weight_of(i), self.rho) for i in self.data.support()]

    def unshift(self) -> FourierData:
        return self.data


def shift_S_rho(data: FourierData, rho_vec: Vector) -> ShiftedView:
    return ShiftedView(data, tuple(Fraction(x) for x in rho_vec))


def spherical_index_of(mu: Vector, spherical: RootSystem) -> Optional[Tuple[int, ...]]:
    """The tuple I with mu = mu_I, or None if mu is not in the lattice."""
    if not lambda_plus_member(mu, spherical):
        return None
    base = spherical if spherical.is_reduced else reduced_systems(spherical)[1]
    out = []
    for a in base.simple_roots:
        r = vec.dot(mu, a) / vec.norm_sq(a)
        if r.denominator != 1 or r < 0:
            return None
        out.append(int(r))
    return tuple(out)


def q_map(central: CentralData, spherical: RootSystem) -> FourierData:
    """Average over K on the coefficient side.

    Characters at non-spherical highest weights are annihilated; at a
    spherical weight the coefficient passes through unchanged (it becomes
    the coefficient against the spherical function psi_mu).
    """
    if spherical.ambient_dim != central.full.rs.ambient_dim:
        raise DomainError("lattice mismatch between central and spherical data")
    out: Dict[Tuple[int, ...], Fraction] = {}
    for key, c in central.coeffs.items():
        mu = central.weight_of(key)
        if not central.full.is_dominant_integral(mu):
            raise DomainError(f"{key} is not a dominant integral weight")
        idx = spherical_index_of(mu, spherical)
        if idx is None:
            continue
        out[idx] = out.get(idx, Fraction(0)) + c
    return FourierData(spherical, out)


def s_rho_of_q(central: CentralData, spherical: RootSystem) -> Dict[Tuple[int, ...], Fraction]:
    """S_rho(Q f^vee) on the shifted lattice, via the spherical expansion.

    Q(f^vee) = sum_mu Fhat(mu) psi_mu, so the S-transform value at mu is
    Fhat(mu)/deg(mu); the rho shift is the reindexing by mu + rho_full.
    """
    qdata = q_map(central, spherical)
    out = {}
    for idx, c in qdata.coeffs.items():
        mu = qdata.weight_of(idx)
        out[idx] = c / central.full.deg(mu)
    return out


def t_of_central(central: CentralData, spherical: RootSystem) -> Dict[Tuple[int, ...], Fraction]:
    """T(F(f)) sampled on the shifted spherical lattice, independently.

    T(F)(mu + rho) = varpi(rho)/varpi(mu + rho) * F(mu), evaluated by exact
    root products; entries at non-spherical weights are dropped.
    """
    full = central.full
    out: Dict[Tuple[int, ...], Fraction] = {}
    for key, c in central.coeffs.items():
        mu = central.weight_of(key)
        idx = spherical_index_of(mu, spherical)
        if idx is None:
            continue
        ratio = varpi_eval(full.rs, full.rho) / varpi_eval(full.rs, vec.add(mu, full.rho))
        out[idx] = out.get(idx, Fraction(0)) + ratio * c
    return {k: v for k, v in out.items() if v != 0}


@dataclass
class LevelLoweredData:
    data: FourierData
    deg_weights: Dict[Tuple[int, ...], Fraction]


def c_k_n(phi, pair: PropagationPair, truncation: Sequence[Sequence[int]],
          dim_small: DimPolynomial) -> LevelLoweredData:
    """The level-lowering map on spherical coefficients.

    The new coefficient at mu_{I,small} samples the level-k holomorphic
    model at the embedded shifted lattice point
    embed(mu_{I,small} + rho_small) - rho_big, with restricted rhos carrying
    their multiplicities; the synthesis weights deg(mu_{I,small}) from the
    small full system are recorded alongside.
    """
    truncation = [tuple(int(k) for k in i) for i in truncation]
    if not truncation:
        raise DomainError("empty truncation set")
    rho_big = restricted_rho(pair.big)
    rho_small = restricted_rho(pair.small)
    out: Dict[Tuple[int, ...], Fraction] = {}
    weights: Dict[Tuple[int, ...], Fraction] = {}
    for idx in truncation:
        mu = mu_of_index(idx, pair.small).weight
        point = vec.sub(pair.embed_weight(vec.add(mu, rho_small)), rho_big)
        if isinstance(phi, Poly):
            value = phi.eval(point)
        elif isinstance(phi, ExpPoly):
            if phi.is_polynomial():
                value = phi.eval_exact(point)
            else:
                value = phi.eval_float([float(x) for x in point])
        else:
            raise DomainError("phi must be a Poly or ExpPoly")
        if value:
            out[idx] = value
        weights[idx] = dim_small.eval(mu)
    return LevelLoweredData(FourierData(pair.small, out), weights)


def ell2d_norm(data: FourierData, dim: DimPolynomial) -> Fraction:
    """sum over the support of deg(mu_I) |a_I|^2."""
    total = Fraction(0)
    for idx, c in data.coeffs.items():
        mu = data.weight_of(idx)
        total += dim.eval(mu) * c * c
    return total


def evaluate_central(central: CentralData, theta_turns: Sequence) -> complex:
    """Pointwise synthesis sum Fhat(mu) chi_mu at a torus point (in turns)."""
    total = 0.0 + 0.0j
    for key, c in central.coeffs.items():
        mu = central.weight_of(key)
        total += complex(c) * central.full.character_eval(mu, theta_turns)
    return total


# ---------------------------------------------------------------------------
# branching oracle
# ---------------------------------------------------------------------------


def restricted_character(full_big: FullSystem, la: Vector,
                         pair: PropagationPair) -> Dict[Vector, Fraction]:
    """All torus weights of V_la restricted to the small flat, with counts."""
    mult = full_big.weight_multiplicities(la)
    out: Dict[Vector, Fraction] = {}
    for w, m in mult.items():
        for p in full_big.orbit(w):
            key = pair.restrict_weight(p)
            out[key] = out.get(key, Fraction(0)) + m
    return {k: v for k, v in out.items() if v != 0}


def branch_multiplicity(mu_big: Vector, pair: PropagationPair,
                        full_big: FullSystem, full_small: FullSystem,
                        max_steps: int = 4000) -> int:
    """Multiplicity of the restricted highest weight in the branching.

    Brute force: Freudenthal weights of the big module, restriction of the
    torus weights, then iterated subtraction of small characters in
    decreasing height order until the target is reached.
    """
    target = pair.restrict_weight(mu_big)
    if not full_small.is_dominant_integral(target):
        raise TheoremViolationError("restricted highest weight is not dominant integral")
    remaining = restricted_character(full_big, mu_big, pair)
    rho_s = full_small.rho
    h_target = vec.dot(target, rho_s)
    steps = 0
    while remaining:
        top = max(remaining, key=lambda w: (vec.dot(w, rho_s), w))
        h_top = vec.dot(top, rho_s)
        if h_top < h_target:
            break
        if top == target:
            c = remaining[top]
            if c.denominator != 1 or c < 0:
                raise TheoremViolationError("non-integral branching multiplicity")
            return int(c)
        c = remaining[top]
        if self_dominant := (full_small.dominantize(top) == top):
            char = restricted_character(
                full_small, top,
                PropagationPair(full_small.rs, full_small.rs),
            )
            for w, m in char.items():
                s = remaining.get(w, Fraction(0)) - c * m
                if s:
                    remaining[w] = s
                else:
                    remaining.pop(w, None)
        else:
            raise TheoremViolationError(
                "restricted character has a non-dominant maximal weight"
            )
        steps += 1
        if steps > max_steps:
            raise ResourceLimitError("branching subtraction did not terminate in budget")
    if target in remaining:
        c = remaining[target]
        if c.denominator != 1 or c < 0:
            raise TheoremViolationError("non-integral branching multiplicity")
        return int(c)
    return 0
