"""Direct/projective system engine over propagation towers.

Coherent elements materialise at every level through a named lift rule and
project back by the matching restriction map; the scaling maps of the
L^2 model carry their square-root factors exactly through squared
bookkeeping (value, radical) with value * sqrt(radical).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import vec
from .errors import DomainError, TheoremViolationError
from .compact_fourier import DimPolynomial, FourierData, FullSystem, dim_polynomial
from .invariants import functions_equal, lift_invariant, restrict_poly
from .polynomial import Poly
from .pwmodel import (
    ExpPoly,
    RhoShiftedSkew,
    op_T,
    op_T_inv,
    restrict_flat,
    restrict_rho_shifted,
)
from .rootsys import (
    PropagationPair,
    RootSystem,
    mu_of_index,
    propagation_pair,
    rho as restricted_rho,
)
from .vec import Vector
from .weyl import WeylGroup

# ---------------------------------------------------------------------------
# exact value * sqrt(radical) bookkeeping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SqrtScaled:
    """An exact nonzero-safe representation of value * sqrt(radical).

    Equality is decided on the canonical pair (sign, value^2 * radical),
    which is exactly the squared-quantity convention of the scaling maps.
    """

    value: Fraction
    radical: Fraction = Fraction(1)

    def __post_init__(self):
        if self.radical <= 0:
            raise DomainError("radical must be positive")

    @staticmethod
    def of(value) -> "SqrtScaled":
        return SqrtScaled(Fraction(value))

    def times(self, other: "SqrtScaled") -> "SqrtScaled":
        return SqrtScaled(self.value * other.value, self.radical * other.radical)

    def scale(self, c) -> "SqrtScaled":
        return SqrtScaled(self.value * Fraction(c), self.radical)

    @property
    def squared(self) -> Fraction:
        return self.value * self.value * self.radical

    @property
    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def canonical(self) -> Tuple[int, Fraction]:
        return (self.sign, self.squared)

    def __eq__(self, other):
        return isinstance(other, SqrtScaled) and self.canonical() == other.canonical()

    def __float__(self):
        return float(self.value) * math.sqrt(float(self.radical))

    def is_rational(self) -> bool:
        sq = self.squared
        rn, rd = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
        return rn * rn == sq.numerator and rd * rd == sq.denominator


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------


@dataclass
class PropagationTower:
    """A chain of propagations of one family with a fixed multiplicity preset."""

    family: str
    levels: Tuple[int, ...]
    mult: int = 1
    systems: Dict[int, RootSystem] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.levels) < 2 or list(self.levels) != sorted(set(self.levels)):
            raise DomainError("levels must be a strictly increasing chain")
        for rank in self.levels:
            pair = propagation_pair(self.family, self.levels[0], rank, self.mult)
            self.systems[rank] = pair.big if rank != self.levels[0] else pair.small

    def system(self, rank: int) -> RootSystem:
        if rank not in self.systems:
            raise DomainError(f"rank {rank} is not a tower level")
        return self.systems[rank]

    def pair(self, small: int, big: int) -> PropagationPair:
        if small not in self.systems or big not in self.systems:
            raise DomainError("both ranks must be tower levels")
        if small > big:
            raise DomainError("pairs go from the smaller to the larger rank")
        return PropagationPair(self.system(small), self.system(big))

    def full_system(self, rank: int) -> FullSystem:
        return FullSystem(
            RootSystem(
                self.family, rank, self.system(rank).ambient_dim,
                self.system(rank).positive_roots, self.system(rank).simple_roots,
                {a: 1 for a in self.system(rank).positive_roots},
            )
        )

    def dim_polynomial(self, rank: int) -> DimPolynomial:
        return dim_polynomial(self.full_system(rank))


# ---------------------------------------------------------------------------
# coherent elements
# ---------------------------------------------------------------------------

LIFT_RULES = ("generator", "padding", "dimension_polynomial")


@dataclass
class CoherentElement:
    """A compatible family of values across tower levels.

    * generator: an extended-invariant polynomial lifted generator-wise;
    * padding: spherical Fourier data reindexed by zero padding;
    * dimension_polynomial: the rho-shifted skew family with T image equal
      to the base invariant (the dimension polynomial itself for base 1).
    """

    tower: PropagationTower
    base_level: int
    base_value: object
    rule: str
    _cache: Dict[int, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.rule not in LIFT_RULES:
            raise DomainError(f"unknown lift rule {self.rule!r}")
        if self.base_level not in self.tower.levels:
            raise DomainError("base level is not a tower level")

    def materialize(self, level: int):
        if level in self._cache:
            return self._cache[level]
        if level < self.base_level:
            raise DomainError("materialize only at or above the base level")
        pair = self.tower.pair(self.base_level, level)
        if self.rule == "generator":
            value = (self.base_value if pair.is_identity
                     else lift_invariant(self.base_value, pair))
        elif self.rule == "padding":
            data: FourierData = self.base_value
            pad = level - self.base_level
            value = FourierData(
                self.tower.system(level),
                {idx + (0,) * pad: c for idx, c in data.coeffs.items()},
            )
        else:
            inv = (self.base_value if pair.is_identity
                   else lift_invariant(self.base_value, pair))
            value = op_T_inv(
                inv, WeylGroup(self.tower.system(level), extended=True),
                restricted_rho(self.tower.system(level)),
            )
        self._cache[level] = value
        return value


def project(element: CoherentElement, level: int):
    """Materialised value at a tower level (the projective-limit projection)."""
    return element.materialize(level)


def project_from(element: CoherentElement, upper: int, lower: int):
    """Apply the actual restriction map from one materialised level down."""
    if lower > upper:
        raise DomainError("projection goes downward")
    value = element.materialize(upper)
    pair = element.tower.pair(lower, upper)
    if element.rule == "generator":
        return restrict_poly(value, pair)
    if element.rule == "padding":
        drop = upper - lower
        out = {}
        for idx, c in value.coeffs.items():
            if any(idx[len(idx) - drop:]) and drop:
                raise TheoremViolationError("padded data has support off the flat")
            out[idx[: len(idx) - drop] if drop else idx] = c
        return FourierData(element.tower.system(lower), out)
    return restrict_rho_shifted(value, pair,
                                restricted_rho(element.tower.system(lower)))


def coherence_holds(element: CoherentElement, upper: int, lower: int) -> bool:
    """project_from(upper -> lower) equals materialize(lower), exactly."""
    got = project_from(element, upper, lower)
    want = element.materialize(lower)
    rs = element.tower.system(lower)
    if element.rule == "generator":
        return functions_equal(got, want, rs)
    if element.rule == "padding":
        return got == want
    return functions_equal(op_T(got), op_T(want), rs) and got.rho == want.rho


def is_nonzero(value) -> bool:
    if isinstance(value, Poly):
        return not value.is_zero()
    if isinstance(value, FourierData):
        return bool(value.coeffs)
    if isinstance(value, RhoShiftedSkew):
        return value.inv is not None and not value.inv.is_zero()
    if isinstance(value, ExpPoly):
        return not value.is_zero()
    raise DomainError("unknown value kind")


# ---------------------------------------------------------------------------
# scaling-map providers
# ---------------------------------------------------------------------------


class CProvider:
    """Supplier of the consecutive-level overlap constants c in (0, 1].

    Multi-level constants are always assembled as products of consecutive
    ones, so the product law holds structurally.
    """

    def __init__(self, name: str,
                 consecutive: Callable[[PropagationTower, int, int, Tuple[int, ...]], SqrtScaled]):
        self.name = name
        self._consecutive = consecutive

    def c_factor(self, tower: PropagationTower, lower: int, upper: int,
                 index: Tuple[int, ...]) -> SqrtScaled:
        """c_{upper, lower, mu} with mu given by its level-lower index."""
        if lower > upper:
            raise DomainError("lower level exceeds upper level")
        if len(index) != tower.system(lower).rank:
            raise DomainError("index does not match the lower level's rank")
        levels = [r for r in tower.levels if lower <= r <= upper]
        out = SqrtScaled.of(1)
        for a, b in zip(levels, levels[1:]):
            step = self._consecutive(tower, a, b,
                                     index + (0,) * (a - lower))
            if step.value <= 0 or step.squared > 1:
                raise DomainError("provider returned a constant outside (0, 1]")
            out = out.times(step)
        return out


def unit_provider() -> CProvider:
    return CProvider("unit", lambda tower, a, b, index: SqrtScaled.of(1))


def group_manifold_provider() -> CProvider:
    """c = sqrt(deg_small / deg_big): the spherical-vector overlap for the
    group-manifold rows, validated against the explicit SU(2) in SU(3)
    projection oracle before being trusted (see su3_projection_oracle)."""

    def consecutive(tower, a, b, index):
        full_a, full_b = tower.full_system(a), tower.full_system(b)
        mu_a = mu_of_index(index, tower.system(a)).weight
        mu_b = mu_of_index(index + (0,) * (b - a), tower.system(b)).weight
        return SqrtScaled(Fraction(1), full_a.deg(mu_a) / full_b.deg(mu_b))

    return CProvider("group-manifold", consecutive)


# ---------------------------------------------------------------------------
# the scaling maps
# ---------------------------------------------------------------------------

ScaledData = Dict[Tuple[int, ...], SqrtScaled]


def as_scaled(data: FourierData) -> ScaledData:
    return {idx: SqrtScaled.of(c) for idx, c in data.coeffs.items()}


def nu_map(data: FourierData | ScaledData, tower: PropagationTower,
           lower: int, upper: int):
    """Pure zero-padding reindexing (the regular-function system)."""
    pad = upper - lower
    if isinstance(data, FourierData):
        return FourierData(tower.system(upper),
                           {idx + (0,) * pad: c for idx, c in data.coeffs.items()})
    return {idx + (0,) * pad: c for idx, c in data.items()}


def l_map(data: FourierData | ScaledData, tower: PropagationTower,
          lower: int, upper: int, provider: CProvider) -> ScaledData:
    """Reindex and scale by c_{upper,lower,mu} * sqrt(deg_upper/deg_lower)."""
    full_lo, full_up = tower.full_system(lower), tower.full_system(upper)
    scaled = as_scaled(data) if isinstance(data, FourierData) else data
    out: ScaledData = {}
    pad = upper - lower
    for idx, val in scaled.items():
        mu_lo = mu_of_index(idx, tower.system(lower)).weight
        idx_up = idx + (0,) * pad
        mu_up = mu_of_index(idx_up, tower.system(upper)).weight
        c = provider.c_factor(tower, lower, upper, idx)
        deg_ratio = SqrtScaled(Fraction(1), full_up.deg(mu_up) / full_lo.deg(mu_lo))
        out[idx_up] = val.times(c).times(deg_ratio)
    return out


def eta_map(data: FourierData | ScaledData, tower: PropagationTower,
            level: int, provider: CProvider) -> ScaledData:
    """Scale by c_{level, base, mu} * sqrt(deg_level(mu)); no reindexing."""
    base = tower.levels[0]
    full = tower.full_system(level)
    scaled = as_scaled(data) if isinstance(data, FourierData) else data
    out: ScaledData = {}
    for idx, val in scaled.items():
        mu = mu_of_index(idx, tower.system(level)).weight
        base_idx = idx[: tower.system(base).rank]
        if any(idx[tower.system(base).rank:]):
            raise DomainError("eta is defined on the padded sector of the base")
        c = provider.c_factor(tower, base, level, base_idx)
        out[idx] = val.times(c).times(SqrtScaled(Fraction(1), full.deg(mu)))
    return out


def scaled_equal(a: ScaledData, b: ScaledData) -> bool:
    return (set(a) == set(b)
            and all(a[k].canonical() == b[k].canonical() for k in a))


def ell2d_norm_scaled(data: ScaledData, tower: PropagationTower,
                      level: int) -> Fraction:
    full = tower.full_system(level)
    total = Fraction(0)
    for idx, val in data.items():
        mu = mu_of_index(idx, tower.system(level)).weight
        total += full.deg(mu) * val.squared
    return total


def coefficient_norm_sq(data: FourierData | ScaledData) -> Fraction:
    """Plain squared coefficient mass (deg-free), preserved by the unit-net
    group scaling."""
    scaled = as_scaled(data) if isinstance(data, FourierData) else data
    return sum((v.squared for v in scaled.values()), Fraction(0))


# ---------------------------------------------------------------------------
# the level-lowered model extension (function-side composition for C maps)
# ---------------------------------------------------------------------------


def lower_extension(phi: Poly, pair: PropagationPair) -> Poly:
    """The small-level model of a level-lowered extension.

    nu -> phi(embed(nu) + embed(rho_small) - rho_big); composing these along
    a tower telescopes the rho shifts exactly.
    """
    if phi.nvars != pair.big.ambient_dim:
        raise DomainError("phi does not live on the big space")
    shift_vec = vec.sub(pair.embed_weight(restricted_rho(pair.small)),
                        restricted_rho(pair.big))
    return phi.shift(shift_vec).restrict_zero_pad(pair.small.ambient_dim)


# ---------------------------------------------------------------------------
# composition certificates
# ---------------------------------------------------------------------------

MAP_KINDS = ("P_flat", "P_rho", "C_kn", "L")


@dataclass
class CompositionCertificate:
    tower: PropagationTower
    kind: str
    checked: int
    ok: bool

    def as_report(self) -> dict:
        return {
            "family": self.tower.family,
            "levels": list(self.tower.levels),
            "kind": self.kind,
            "checked": self.checked,
            "status": "ok" if self.ok else "failed",
        }


def compose_check(tower: PropagationTower, kind: str, samples: Sequence,
                  provider: Optional[CProvider] = None) -> CompositionCertificate:
    """Two-step against one-step equality for a map kind on sample inputs.

    Samples live at the top level for the restriction kinds (P_flat, P_rho,
    C_kn) and at the bottom level for L.
    """
    if kind not in MAP_KINDS:
        raise DomainError(f"unknown map kind {kind!r}")
    if len(tower.levels) < 3:
        raise DomainError("composition checks need at least three levels")
    lo, mid, hi = tower.levels[0], tower.levels[1], tower.levels[-1]
    pair_hm = tower.pair(mid, hi)
    pair_ml = tower.pair(lo, mid)
    pair_hl = tower.pair(lo, hi)
    checked = 0
    for sample in samples:
        if kind == "P_flat":
            one = restrict_flat(sample, pair_hl)
            two = restrict_flat(restrict_flat(sample, pair_hm), pair_ml)
            ok = (functions_equal(one, two, tower.system(lo))
                  if isinstance(one, Poly) else one == two)
        elif kind == "P_rho":
            one = restrict_rho_shifted(sample, pair_hl,
                                       restricted_rho(tower.system(lo)))
            two_mid = restrict_rho_shifted(sample, pair_hm,
                                           restricted_rho(tower.system(mid)))
            two = restrict_rho_shifted(two_mid, pair_ml,
                                       restricted_rho(tower.system(lo)))
            ok = functions_equal(op_T(one), op_T(two), tower.system(lo))
        elif kind == "C_kn":
            one = lower_extension(sample, pair_hl)
            two = lower_extension(lower_extension(sample, pair_hm), pair_ml)
            ok = functions_equal(one, two, tower.system(lo))
        else:
            if provider is None:
                raise DomainError("L composition needs a provider")
            one = l_map(sample, tower, lo, hi, provider)
            two = l_map(l_map(sample, tower, lo, mid, provider),
                        tower, mid, hi, provider)
            ok = scaled_equal(one, two)
        if not ok:
            raise TheoremViolationError(
                "projective-system law failed",
                {"kind": kind, "family": tower.family, "sample": checked},
            )
        checked += 1
    return CompositionCertificate(tower, kind, checked, True)


# ---------------------------------------------------------------------------
# the explicit SU(2) in SU(3) spherical-vector oracle
# ---------------------------------------------------------------------------


class _TensorModule:
    """su(3) acting on tensor words over C^3 and Lambda^2 C^3 letters.

    Letters are ('v', i) for e_i and ('w', p, q) for e_p wedge e_q with
    p < q; vectors are dicts word -> Fraction, and the matrix units E_ij
    act by the Leibniz rule.  In the paper's root order (alpha_j =
    f_{j+1} - f_j, dominant weights increasing) the highest vectors are
    e_3 and e_2 ^ e_3.
    """

    def __init__(self, a: int, b: int):
        # highest weight a*omega_1 + b*omega_2: omega_1 <-> Lambda^2 C^3,
        # omega_2 <-> C^3 in this dominance convention
        word = (("w", 1, 2),) * a + (("v", 2),) * b
        self.highest = {word: Fraction(1)}

    @staticmethod
    def _act_letter(letter, i, j):
        """E_ij on one letter: list of (letter, coefficient)."""
        if letter[0] == "v":
            return [(("v", i), Fraction(1))] if letter[1] == j else []
        _, p, q = letter
        out = []
        if p == j and i != q:
            out.append((("w", min(i, q), max(i, q)),
                        Fraction(1) if i < q else Fraction(-1)))
        if q == j and i != p:
            out.append((("w", min(p, i), max(p, i)),
                        Fraction(1) if p < i else Fraction(-1)))
        return out

    def apply_eij(self, v: dict, i: int, j: int) -> dict:
        out: dict = {}
        for word, c in v.items():
            for pos, letter in enumerate(word):
                for new_letter, s in self._act_letter(letter, i, j):
                    nw = word[:pos] + (new_letter,) + word[pos + 1:]
                    val = out.get(nw, Fraction(0)) + c * s
                    if val:
                        out[nw] = val
                    else:
                        out.pop(nw, None)
        return out


def _span_closure(seed: dict, operators: List[Tuple[int, int]],
                  module: _TensorModule) -> int:
    """Dimension of the operator-closed span of the seed vector."""
    pivots: Dict[tuple, dict] = {}

    def insert(v: dict) -> Optional[dict]:
        v = dict(v)
        while v:
            lead = max(v)
            if lead in pivots:
                c = v[lead]
                for k, x in pivots[lead].items():
                    s = v.get(k, Fraction(0)) - c * x
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
            else:
                inv = 1 / v[lead]
                v = {k: x * inv for k, x in v.items()}
                pivots[lead] = v
                return v
        return None

    frontier = [insert(seed)]
    while frontier:
        nxt = []
        for v in frontier:
            if v is None:
                continue
            for (i, j) in operators:
                w = insert(module.apply_eij(v, i, j))
                if w is not None:
                    nxt.append(w)
        frontier = nxt
    return len(pivots)


def su3_projection_oracle(mu_coeffs: Tuple[int, int]) -> dict:
    """Exact spherical-vector overlap for SU(2) inside SU(3).

    Builds V_mu explicitly in tensor space, generates the su(2)-cyclic
    submodule W of the highest vector (the propagation copy), and computes
    the squared overlap of the normalised identity endomorphisms of the
    group-manifold pair: <id_V/sqrt(dim V), id_W/sqrt(dim W)>^2 =
    dim W / dim V.  The provider's closed form c^2 = deg_small/deg_big is
    matched against this, with the degrees from the Weyl formula as an
    independent cross-check on both dimensions.
    """
    a, b = mu_coeffs
    module = _TensorModule(a, b)
    # in (i, j)-matrix-unit labels: raising E_{j+1, j}, lowering E_{j, j+1}
    all_ops = [(1, 0), (2, 1), (0, 1), (1, 2)]
    su2_ops = [(1, 0), (0, 1)]      # the alpha_1 = f_2 - f_1 block
    dim_v = _span_closure(module.highest, all_ops, module)
    dim_w = _span_closure(module.highest, su2_ops, module)
    c_squared = Fraction(dim_w, dim_v)

    full3 = FullSystem(propagation_pair("A", 2, 2).small)
    full2 = FullSystem(propagation_pair("A", 1, 1).small)
    om = full3.fundamental_weights()
    mu = vec.add(vec.scale(a, om[0]), vec.scale(b, om[1]))
    pair = propagation_pair("A", 1, 2)
    mu_small = pair.restrict_weight(mu)
    deg_big = full3.deg(mu)
    deg_small = full2.deg(mu_small)
    return {
        "mu": mu_coeffs,
        "dim_v": dim_v,
        "dim_w": dim_w,
        "deg_big": deg_big,
        "deg_small": deg_small,
        "c_squared_explicit": c_squared,
        "c_squared_formula": deg_small / deg_big,
        "match": (c_squared == deg_small / deg_big
                  and Fraction(dim_v) == deg_big
                  and Fraction(dim_w) == deg_small),
    }
