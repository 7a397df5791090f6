"""Weyl-group invariant theory: Reynolds averaging, classical generator
families, constructive restriction lifting, and coinvariant (module-basis)
decompositions.

Type-A polynomials are carried in ambient R^{k+1} coordinates, which keeps
power sums integral; identities on the trace-zero flat are decided in an
"effective" frame obtained by eliminating the last coordinate.  For the
other families the effective frame is the ambient one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, ResourceLimitError, TheoremViolationError
from .linalg import LinearSolver, RowSpace
from .polynomial import Poly, monomials_of_degree
from .rootsys import PropagationPair, RootSystem
from .weyl import Subgroup, WeylGroup, stabilizer

# ---------------------------------------------------------------------------
# effective frame
# ---------------------------------------------------------------------------


def to_effective(p: Poly, rs: RootSystem) -> Poly:
    """Canonical on-flat form: eliminate the trace-zero relation for type A."""
    if rs.family != "A":
        return p
    if p.nvars != rs.ambient_dim:
        raise DomainError("polynomial does not live on the ambient space")
    replacement = Poly.linear_form([Fraction(-1)] * (rs.ambient_dim - 1))
    return p.eliminate_last(replacement)


def from_effective(p: Poly, rs: RootSystem) -> Poly:
    if rs.family != "A":
        return p
    return p.extend(rs.ambient_dim)


def effective_nvars(rs: RootSystem) -> int:
    return rs.rank if rs.family == "A" else rs.ambient_dim


def functions_equal(p: Poly, q: Poly, rs: RootSystem) -> bool:
    """Equality as functions on the flat (exact; trace-zero aware)."""
    return to_effective(p, rs) == to_effective(q, rs)


# ---------------------------------------------------------------------------
# Reynolds operator
# ---------------------------------------------------------------------------


def apply_element(p: Poly, w) -> Poly:
    return p.apply_signed_perm(w.perm, w.signs)


def reynolds(p: Poly, group: WeylGroup) -> Poly:
    """Average of p over the group; the projection onto invariants."""
    if p.nvars != group.dim:
        raise DomainError("polynomial dimension does not match the group")
    total = Poly.zero(p.nvars)
    count = 0
    for w in group.elements():
        total = total + apply_element(p, w)
        count += 1
    return total.scale(Fraction(1, count))


def subgroup_average(p: Poly, sub: Subgroup) -> Poly:
    total = Poly.zero(p.nvars)
    for w in sub.elements:
        total = total + apply_element(p, w)
    return total.scale(Fraction(1, len(sub.elements)))


def is_invariant(p: Poly, group: WeylGroup) -> bool:
    """Invariance as a function on the flat, checked on group generators."""
    pe = to_effective(p, group.rs)
    return all(
        to_effective(apply_element(p, g), group.rs) == pe
        for g in group.generators()
    )


# ---------------------------------------------------------------------------
# classical generator families
# ---------------------------------------------------------------------------


@dataclass
class InvariantBasis:
    group: WeylGroup
    generators: List[Poly]
    degrees: List[int]


def invariant_generators(group: WeylGroup) -> InvariantBasis:
    """Algebraically independent generators of the invariant algebra.

    A_k: power sums p_2..p_{k+1} (ambient coordinates; p_1 vanishes on the
    flat).  B/C/BC and extended D: even power sums.  Plain D: even power
    sums p_2..p_{2(k-1)} together with x_1*...*x_k.
    """
    rs = group.rs
    n = rs.ambient_dim
    fam = rs.family
    if fam == "A":
        gens = [Poly.power_sum(k, n) for k in range(2, rs.rank + 2)]
    elif fam in ("B", "C", "BC") or (fam == "D" and group.extended):
        gens = [Poly.power_sum(2 * k, n) for k in range(1, rs.rank + 1)]
    elif fam == "D":
        gens = [Poly.power_sum(2 * k, n) for k in range(1, rs.rank)]
        gens.append(Poly.monomial_product(n))
    else:
        raise DomainError(f"no generator family for {group!r}")
    basis = InvariantBasis(group, gens, [g.degree() for g in gens])
    for g in gens:
        if not is_invariant(g, group):
            raise TheoremViolationError("generator is not invariant")
    return basis


def jacobian_nonsingular(basis: InvariantBasis) -> bool:
    """Algebraic independence via the Jacobian at a fixed rational point."""
    from .linalg import det

    rs = basis.group.rs
    neff = effective_nvars(rs)
    point = [Fraction(i + 2, 2 * i + 3) for i in range(neff)]
    rows = []
    for g in basis.generators:
        ge = to_effective(g, rs)
        rows.append([ge.partial(i).eval(point) for i in range(neff)])
    if len(rows) != neff:
        raise DomainError("generator count does not match the effective rank")
    return det(rows) != 0


# ---------------------------------------------------------------------------
# restriction and generator-wise lifting
# ---------------------------------------------------------------------------


def restrict_poly(p: Poly, pair: PropagationPair) -> Poly:
    """Compose with the flat embedding (trailing coordinates to zero)."""
    if p.nvars != pair.big.ambient_dim:
        raise DomainError("polynomial does not live on the big space")
    return p.restrict_zero_pad(pair.small.ambient_dim)


_SOLVER_CACHE: Dict[tuple, tuple] = {}


def _group_key(group: WeylGroup) -> tuple:
    return (group.rs.family, group.rs.rank, group.extended)


def _generator_monomials(degrees: Sequence[int], d: int) -> List[Tuple[int, ...]]:
    """Multi-indices m with sum m_i * degrees[i] = d, lexicographic."""
    out: List[Tuple[int, ...]] = []

    def rec(i: int, remaining: int, prefix: List[int]):
        if i == len(degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        step = degrees[i]
        for k in range(remaining // step, -1, -1):
            rec(i + 1, remaining - k * step, prefix + [k])
        return

    rec(0, d, [])
    return sorted(out)


def _coeff_vector(p: Poly, monos: Sequence[Tuple[int, ...]],
                  index: Dict[Tuple[int, ...], int]) -> List[Fraction]:
    v = [Fraction(0)] * len(monos)
    for e, c in p.terms.items():
        pos = index.get(e)
        if pos is None:
            raise TheoremViolationError("coefficient outside the expected degree")
        v[pos] = c
    return v


def _gen_product(gens_eff: List[Poly], powers: Tuple[int, ...],
                 cache: Dict[Tuple[int, ...], Poly], nvars: int) -> Poly:
    if powers in cache:
        return cache[powers]
    if not any(powers):
        result = Poly.const(nvars, 1)
    else:
        i = next(j for j, k in enumerate(powers) if k)
        lower = tuple(k - 1 if j == i else k for j, k in enumerate(powers))
        result = _gen_product(gens_eff, lower, cache, nvars) * gens_eff[i]
    cache[powers] = result
    return result


def _expression_solver(basis: InvariantBasis, d: int):
    key = ("expr", _group_key(basis.group), d)
    if key in _SOLVER_CACHE:
        return _SOLVER_CACHE[key]
    rs = basis.group.rs
    neff = effective_nvars(rs)
    monos = monomials_of_degree(neff, d)
    index = {e: i for i, e in enumerate(monos)}
    gens_eff = [to_effective(g, rs) for g in basis.generators]
    prod_cache = _SOLVER_CACHE.setdefault(("prods", _group_key(basis.group)), {})
    powers = _generator_monomials(basis.degrees, d)
    columns = [
        _coeff_vector(_gen_product(gens_eff, m, prod_cache, neff), monos, index)
        for m in powers
    ]
    solver = LinearSolver(columns, len(monos)) if powers else None
    entry = (solver, powers, monos, index)
    _SOLVER_CACHE[key] = entry
    return entry


def express_in_generators(q: Poly, basis: InvariantBasis,
                          degree_bound: int = 24) -> Poly:
    """Write an invariant as a polynomial in the generator symbols.

    Returns a Poly in len(generators) variables; exact, solved degree by
    degree by dense linear algebra over the rationals.
    """
    group = basis.group
    rs = group.rs
    if q.degree() > degree_bound:
        raise ResourceLimitError(f"degree {q.degree()} above bound {degree_bound}")
    if not is_invariant(q, group):
        raise DomainError("polynomial is not invariant under the group")
    qe = to_effective(q, rs)
    r = len(basis.generators)
    result = Poly.zero(r)
    for d in qe.homogeneous_degrees():
        part = qe.homogeneous_part(d)
        if d == 0:
            result = result + Poly.const(r, part.terms.get((0,) * qe.nvars, Fraction(0)))
            continue
        solver, powers, monos, index = _expression_solver(basis, d)
        if solver is None:
            raise TheoremViolationError(
                "invariant of a degree with no generator monomials", {"degree": d}
            )
        sol = solver.solve(_coeff_vector(part, monos, index))
        if sol is None:
            raise TheoremViolationError(
                "no representation in the generators; generator family wrong?",
                {"degree": d},
            )
        for m, c in zip(powers, sol):
            if c:
                result = result + Poly(r, {m: c})
    return result


def evaluate_in_generators(expr: Poly, generators: Sequence[Poly]) -> Poly:
    """Expand a generator-symbol polynomial against concrete generators."""
    return expr.substitute(list(generators[: expr.nvars]))


def lift_invariant(q: Poly, pair: PropagationPair) -> Poly:
    """Lift a W~-invariant through the restriction map, generator by generator.

    The big generators restrict to the small ones index-by-index, so the
    lift substitutes them into the small generator expression.  The round
    trip restrict(lift(q)) = q is asserted exactly (on-flat for type A).
    """
    small_group = WeylGroup(pair.small, extended=True)
    big_group = WeylGroup(pair.big, extended=True)
    small_basis = invariant_generators(small_group)
    big_basis = invariant_generators(big_group)
    expr = express_in_generators(q, small_basis)
    lifted = evaluate_in_generators(expr, big_basis.generators)
    back = restrict_poly(lifted, pair)
    if not functions_equal(back, q, pair.small):
        raise TheoremViolationError("lift does not restrict to its source")
    return lifted


# ---------------------------------------------------------------------------
# coinvariant module bases and the Rais decomposition
# ---------------------------------------------------------------------------


@dataclass
class CoinvariantBasis:
    group: WeylGroup
    degree_bound: int
    elements: List[Poly]          # ambient representatives (monomials)
    degrees: List[int]

    def __len__(self):
        return len(self.elements)


def coinvariant_top_degree(group: WeylGroup) -> int:
    basis = invariant_generators(group)
    return sum(d - 1 for d in basis.degrees)


def coinvariant_basis(group: WeylGroup, degree_bound: int) -> CoinvariantBasis:
    """Monomial basis of S(F) over the invariants, up to a degree bound.

    Degree by degree, the span of {generator * monomial} is row-reduced and
    monomials are selected greedily in lexicographic order whenever their
    residue is independent; for a full bound the count is |W|.
    """
    if degree_bound < 0:
        raise DomainError("degree bound must be nonnegative")
    rs = group.rs
    neff = effective_nvars(rs)
    basis = invariant_generators(group)
    gens_eff = [to_effective(g, rs) for g in basis.generators]
    elements: List[Poly] = []
    degrees: List[int] = []
    for d in range(degree_bound + 1):
        monos = monomials_of_degree(neff, d)
        index = {e: i for i, e in enumerate(monos)}
        space = RowSpace(len(monos))
        for g, gd in zip(gens_eff, basis.degrees):
            if gd > d or gd == 0:
                continue
            for m in monomials_of_degree(neff, d - gd):
                prod = g * Poly(neff, {m: Fraction(1)})
                space.add(_coeff_vector(prod, monos, index))
        for e in monos:
            if space.add([Fraction(1 if x == e else 0) for x in monos]):
                mono = Poly(neff, {e: Fraction(1)})
                elements.append(from_effective(mono, rs))
                degrees.append(d)
    cb = CoinvariantBasis(group, degree_bound, elements, degrees)
    if degree_bound >= coinvariant_top_degree(group) and len(cb) != group.order():
        raise TheoremViolationError(
            "full coinvariant basis size differs from the group order",
            {"got": len(cb), "expected": group.order()},
        )
    return cb


def _rais_solver(cbasis: CoinvariantBasis, d: int):
    group = cbasis.group
    key = ("rais", _group_key(group), cbasis.degree_bound, d)
    if key in _SOLVER_CACHE:
        return _SOLVER_CACHE[key]
    rs = group.rs
    neff = effective_nvars(rs)
    basis = invariant_generators(group)
    gens_eff = [to_effective(g, rs) for g in basis.generators]
    prod_cache = _SOLVER_CACHE.setdefault(("prods", _group_key(group)), {})
    monos = monomials_of_degree(neff, d)
    index = {e: i for i, e in enumerate(monos)}
    columns = []
    tags = []  # (coinvariant position, generator powers)
    for pos, (p, pd) in enumerate(zip(cbasis.elements, cbasis.degrees)):
        if pd > d:
            continue
        pe = to_effective(p, rs)
        for m in _generator_monomials(basis.degrees, d - pd):
            prod = pe * _gen_product(gens_eff, m, prod_cache, neff)
            columns.append(_coeff_vector(prod, monos, index))
            tags.append((pos, m))
    solver = LinearSolver(columns, len(monos))
    entry = (solver, tags, monos, index)
    _SOLVER_CACHE[key] = entry
    return entry


def rais_decompose(f: Poly, cbasis: CoinvariantBasis) -> List[Tuple[Poly, Poly]]:
    """Write f = sum P_i * Phi_i with Phi_i invariant.

    The coinvariant elements P_i form a module basis, so the decomposition
    is unique; it is found by one exact linear solve per homogeneous degree.
    Components are returned with P_i of decreasing degree (lexicographic
    within a degree), omitting zero parts.
    """
    group = cbasis.group
    rs = group.rs
    if f.nvars != rs.ambient_dim:
        raise DomainError("polynomial does not live on the group's space")
    if f.degree() > cbasis.degree_bound:
        raise DomainError(
            f"degree {f.degree()} exceeds the basis bound {cbasis.degree_bound}"
        )
    basis = invariant_generators(group)
    fe = to_effective(f, rs)
    parts: Dict[int, Poly] = {}
    for d in fe.homogeneous_degrees():
        solver, tags, monos, index = _rais_solver(cbasis, d)
        sol = solver.solve(_coeff_vector(fe.homogeneous_part(d), monos, index))
        if sol is None:
            raise TheoremViolationError(
                "module decomposition failed; coinvariant basis wrong?",
                {"degree": d},
            )
        for (pos, m), c in zip(tags, sol):
            if c:
                add = Poly(len(basis.generators), {m: c})
                parts[pos] = parts.get(pos, Poly.zero(len(basis.generators))) + add
    out = []
    order = sorted(
        parts,
        key=lambda pos: (-cbasis.degrees[pos], cbasis.elements[pos].sorted_terms()[0][0]),
    )
    for pos in order:
        phi = evaluate_in_generators(parts[pos], basis.generators)
        if not phi.is_zero():
            out.append((cbasis.elements[pos], phi))
    return out


# ---------------------------------------------------------------------------
# the constructive Paley-Wiener lift
# ---------------------------------------------------------------------------


def naive_extension(g: Poly, pair: PropagationPair) -> Poly:
    """Compose with the orthogonal projection onto the embedded small flat.

    The result restricts to g and is invariant under the stabilizer of the
    flat whenever g is invariant under the extended small group.
    """
    if g.nvars != pair.small.ambient_dim:
        raise DomainError("polynomial does not live on the small space")
    nk = pair.big.ambient_dim
    if pair.small.family != "A":
        return g.extend(nk)
    nn = pair.small.ambient_dim
    mean = Poly.linear_form(
        [Fraction(1, nn)] * nn + [Fraction(0)] * (nk - nn)
    )
    images = [Poly.var(i, nk) - mean for i in range(nn)]
    return g.substitute(images)


def constructive_pw_lift(g: Poly, pair: PropagationPair) -> Poly:
    """Invariant lift along the proof path: extend, decompose, average, relift.

    Pipeline: naive extension of g, module decomposition over the big group,
    stabilizer-averaging of the module basis elements, restriction of those
    averages, generator lift of each, and recombination.  The result is
    extended-invariant on the big space and restricts exactly to g.
    """
    small_group = WeylGroup(pair.small, extended=True)
    big_group = WeylGroup(pair.big, extended=True)
    if not is_invariant(g, small_group):
        raise DomainError("input is not invariant under the extended small group")
    extension = naive_extension(g, pair)
    if extension.is_zero():
        return Poly.zero(pair.big.ambient_dim)
    cbasis = coinvariant_basis(big_group, extension.degree())
    decomposition = rais_decompose(extension, cbasis)
    stab = stabilizer(big_group, pair)
    result = Poly.zero(pair.big.ambient_dim)
    for p_i, phi_i in decomposition:
        p_avg = subgroup_average(p_i, stab)
        p_small = restrict_poly(p_avg, pair)
        if p_small.is_zero() or to_effective(p_small, pair.small).is_zero():
            continue
        q_i = lift_invariant(p_small, pair)
        result = result + q_i * phi_i
    if not is_invariant(result, big_group):
        raise TheoremViolationError("constructive lift lost invariance")
    if not functions_equal(restrict_poly(result, pair), g, pair.small):
        raise TheoremViolationError("constructive lift does not restrict to its source")
    return result
