"""Command-line surface: one verb per module plus named verification suites.

Output is canonical JSON on stdout (byte-stable for identical inputs).
Exit codes: 0 success, 1 domain error, 2 usage error, 3 certificate
failure (theorem violation).
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import geometry, invariants, jsonio, limits, pwmodel, rootsys, weyl
from . import compact_fourier as cf
from . import vec
from .errors import DomainError, ResourceLimitError, TheoremViolationError
from .polynomial import Poly

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2, 3


def _read_json(args) -> dict:
    import json

    if getattr(args, "json", None):
        return json.loads(args.json)
    if getattr(args, "infile", None):
        with open(args.infile) as fh:
            return json.load(fh)
    raise DomainError("no input: pass --json or --in FILE")


def _emit(args, payload: dict) -> int:
    if getattr(args, "float", False):
        payload = jsonio.to_float_tree(payload)
    text = jsonio.dumps(payload)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _system(args) -> rootsys.RootSystem:
    pair = rootsys.propagation_pair(args.family, args.rank, args.rank,
                                    getattr(args, "mult", 1))
    return pair.small


def _pair(args) -> rootsys.PropagationPair:
    return rootsys.propagation_pair(args.family, getattr(args, "from_rank"),
                                    args.to, getattr(args, "mult", 1))


def _group(args, rs) -> weyl.WeylGroup:
    return weyl.WeylGroup(rs, extended=getattr(args, "extended", False))


# -- verb handlers ----------------------------------------------------------


def cmd_describe(args) -> int:
    params = [p for p in (args.j, args.p, args.q) if p is not None]
    desc = rootsys.space_descriptor(args.row, *params)
    label = desc.restricted.family + str(desc.restricted.rank)
    return _emit(args, {
        "row": desc.row, "name": desc.name, "rank": desc.rank,
        "dim": desc.dim, "system": label,
        "mult": {jsonio.root_key(a): desc.restricted.mult[a]
                 for a in desc.restricted.positive_roots},
    })


def cmd_weyl(args) -> int:
    rs = _system(args)
    group = _group(args, rs)
    if args.action == "order":
        return _emit(args, {"order": group.order()})
    if args.action == "elements":
        elems = [jsonio.weyl_to_json(w) for w in group.elements(args.max_rank)]
        return _emit(args, {"order": len(elems), "elements": elems})
    if args.action == "reflection":
        alpha = vec.parse(args.root, rs.ambient_dim)
        return _emit(args, jsonio.weyl_to_json(weyl.reflection(alpha)))
    if args.action == "sigma":
        return _emit(args, jsonio.weyl_to_json(weyl.diagram_involution(rs)))
    if args.action == "orbit":
        v = vec.parse(args.vector, rs.ambient_dim)
        return _emit(args, {"orbit": [jsonio.weight_to_json(x)
                                      for x in group.orbit(v)]})
    raise DomainError(f"unknown weyl action {args.action!r}")


def cmd_invariants(args) -> int:
    if args.action in ("lift", "constructive-lift"):
        pair = _pair(args)
        q = jsonio.poly_from_json(_read_json(args))
        if args.action == "lift":
            result = invariants.lift_invariant(q, pair)
        else:
            result = invariants.constructive_pw_lift(q, pair)
        return _emit(args, jsonio.poly_to_json(result))
    rs = _system(args)
    group = weyl.WeylGroup(rs, extended=True)
    if args.action == "generators":
        basis = invariants.invariant_generators(group)
        return _emit(args, {
            "degrees": basis.degrees,
            "generators": [jsonio.poly_to_json(g) for g in basis.generators],
        })
    if args.action == "reynolds":
        p = jsonio.poly_from_json(_read_json(args))
        return _emit(args, jsonio.poly_to_json(invariants.reynolds(p, group)))
    if args.action == "express":
        q = jsonio.poly_from_json(_read_json(args))
        basis = invariants.invariant_generators(group)
        expr = invariants.express_in_generators(q, basis, args.degree_bound)
        return _emit(args, jsonio.poly_to_json(expr))
    if args.action == "rais":
        f = jsonio.poly_from_json(_read_json(args))
        cb = invariants.coinvariant_basis(group, max(f.degree(), 0))
        parts = invariants.rais_decompose(f, cb)
        return _emit(args, {"components": [
            {"p": jsonio.poly_to_json(p), "phi": jsonio.poly_to_json(phi)}
            for p, phi in parts
        ]})
    if args.action == "coinvariants":
        cb = invariants.coinvariant_basis(group, args.degree_bound)
        return _emit(args, {
            "count": len(cb),
            "degrees": cb.degrees,
            "elements": [jsonio.poly_to_json(p) for p in cb.elements],
        })
    raise DomainError(f"unknown invariants action {args.action!r}")


def cmd_pw(args) -> int:
    if args.action in ("restrict", "restrict-rho"):
        pair = _pair(args)
        data = _read_json(args)
        if args.action == "restrict":
            f = jsonio.exppoly_from_json(data)
            out = pwmodel.restrict_flat(f, pair)
            return _emit(args, jsonio.exppoly_to_json(out))
        group = weyl.WeylGroup(pair.big, extended=True)
        skew = pwmodel.op_T_inv(jsonio.poly_from_json(data), group,
                                rootsys.rho(pair.big))
        out = pwmodel.restrict_rho_shifted(skew, pair)
        return _emit(args, jsonio.poly_to_json(pwmodel.op_T(out)))
    rs = _system(args)
    group = weyl.WeylGroup(rs, extended=True)
    rho = rootsys.rho(rs)
    if args.action == "t":
        phi = jsonio.poly_from_json(_read_json(args))
        skew = pwmodel.skew_from_poly(phi, group, rho)
        return _emit(args, jsonio.poly_to_json(pwmodel.op_T(skew)))
    if args.action == "tinv":
        f = jsonio.poly_from_json(_read_json(args))
        skew = pwmodel.op_T_inv(f, group, rho)
        return _emit(args, jsonio.poly_to_json(skew.expand()))
    if args.action == "symmetrize":
        f = jsonio.exppoly_from_json(_read_json(args))
        out = pwmodel.symmetrize(f, weyl.WeylGroup(rs, extended=args.extended))
        return _emit(args, jsonio.exppoly_to_json(out))
    if args.action == "skew-symmetrize":
        f = jsonio.exppoly_from_json(_read_json(args))
        skew = pwmodel.rho_skew_symmetrize(f, group, rho)
        if skew.inv is not None:
            return _emit(args, {"carrier": "polynomial",
                                "t_image": jsonio.poly_to_json(skew.inv)})
        return _emit(args, {"carrier": "exponential",
                            "base": jsonio.exppoly_to_json(skew.exp_base)})
    raise DomainError(f"unknown pw action {args.action!r}")


def _descriptor(args) -> rootsys.SpaceDescriptor:
    params = [p for p in (args.j, args.p, args.q) if p is not None]
    return rootsys.space_descriptor(args.row, *params)


def cmd_fourier(args) -> int:
    if args.action == "branch":
        pair = rootsys.propagation_pair(args.family, args.from_rank, args.to,
                                        getattr(args, "mult", 1))
        full_b = cf.FullSystem(rootsys.build_root_system(args.family, args.to))
        full_s = cf.FullSystem(rootsys.build_root_system(args.family, args.from_rank))
        index = tuple(int(x) for x in args.index.split(","))
        mu = rootsys.mu_of_index(index, pair.big).weight
        m = cf.branch_multiplicity(mu, pair, full_b, full_s)
        restricted = pair.restrict_weight(mu)
        return _emit(args, {
            "multiplicity": m,
            "weight": jsonio.weight_to_json(mu),
            "restricted": jsonio.weight_to_json(restricted),
            "restricted_in_lattice": rootsys.lambda_plus_member(restricted, pair.small),
        })
    if args.action == "ckn":
        pair = rootsys.propagation_pair(args.family, args.from_rank, args.to,
                                        getattr(args, "mult", 1))
        phi = jsonio.poly_from_json(_read_json(args))
        trunc = [tuple(int(x) for x in part.split(","))
                 for part in args.truncation.split(";")]
        full_s = cf.FullSystem(rootsys.build_root_system(args.family, args.from_rank))
        out = cf.c_k_n(phi, pair, trunc, cf.dim_polynomial(full_s))
        return _emit(args, {
            "data": jsonio.fourier_to_json(out.data),
            "deg_weights": {",".join(map(str, k)): jsonio.frac_str(v)
                            for k, v in out.deg_weights.items()},
        })
    desc = _descriptor(args)
    full = cf.FullSystem.for_descriptor(desc)
    if args.action == "dim":
        if args.index:
            index = tuple(int(x) for x in args.index.split(","))
            mu = rootsys.mu_of_index(index, desc.restricted).weight
        else:
            mu = vec.parse(args.weight, full.rs.ambient_dim)
        return _emit(args, {"deg": jsonio.frac_str(full.deg(mu)),
                            "weight": jsonio.weight_to_json(mu)})
    if args.action == "ell2":
        data = jsonio.fourier_from_json(_read_json(args), desc.restricted)
        norm = cf.ell2d_norm(data, cf.dim_polynomial(full))
        return _emit(args, {"norm_sq": jsonio.frac_str(norm)})
    if args.action == "qmap":
        central = jsonio.central_from_json(_read_json(args), full)
        out = cf.q_map(central, desc.restricted)
        return _emit(args, jsonio.fourier_to_json(out))
    if args.action == "eval":
        central = jsonio.central_from_json(_read_json(args), full)
        theta = [Fraction(x) for x in args.angles.split(",")]
        value = cf.evaluate_central(central, theta)
        return _emit(args, {"real": value.real, "imag": value.imag})
    raise DomainError(f"unknown fourier action {args.action!r}")


def cmd_omega(args) -> int:
    if args.action == "injectivity":
        if args.group:
            r = geometry.injectivity_radius(args.group)
        elif args.row:
            params = [p for p in (args.j, args.p, args.q) if p is not None]
            r = geometry.injectivity_radius(rootsys.space_descriptor(args.row, *params))
        else:
            r = geometry.injectivity_radius(_system(args))
        payload = {"R_sq": jsonio.frac_str(r.sq), "units": "pi^2"}
        if r.value is not None:
            payload["R"] = jsonio.frac_str(r.value)
        return _emit(args, payload)
    if args.action == "check-intersection":
        pair = _pair(args)
        cert = geometry.check_intersection(pair)
        return _emit(args, cert.as_report())
    rs = _system(args)
    if args.action in ("omega", "star"):
        poly = geometry.omega(rs) if args.action == "omega" else geometry.omega_star(rs)
        return _emit(args, jsonio.polytope_to_json(poly))
    if args.action == "contains":
        poly = geometry.omega(rs) if args.full else geometry.omega_star(rs)
        x = vec.parse(args.point, rs.ambient_dim)
        return _emit(args, {"contains": poly.contains(x)})
    if args.action == "inradius":
        poly = geometry.omega(rs) if args.full else geometry.omega_star(rs)
        r = geometry.inradius(poly, rs.family)
        payload = {"S_sq": jsonio.frac_str(r.sq), "units": "pi"}
        if r.value is not None:
            payload["S"] = jsonio.frac_str(r.value)
        return _emit(args, payload)
    raise DomainError(f"unknown omega action {args.action!r}")


def cmd_limits(args) -> int:
    tower = limits.PropagationTower(
        args.family, tuple(int(x) for x in args.levels.split(",")),
        getattr(args, "mult", 1),
    )
    provider = (limits.group_manifold_provider() if args.provider == "group"
                else limits.unit_provider())
    if args.action == "project":
        base = jsonio.poly_from_json(_read_json(args))
        elem = limits.CoherentElement(tower, tower.levels[0], base, args.rule)
        value = limits.project(elem, args.level)
        if isinstance(value, Poly):
            return _emit(args, jsonio.poly_to_json(value))
        if isinstance(value, pwmodel.RhoShiftedSkew):
            return _emit(args, {"t_image": jsonio.poly_to_json(value.inv)})
        return _emit(args, jsonio.fourier_to_json(value))
    if args.action == "lmap":
        rs = tower.system(args.from_rank)
        data = jsonio.fourier_from_json(_read_json(args), rs)
        out = limits.l_map(data, tower, args.from_rank, args.to, provider)
        return _emit(args, {"entries": [
            {"I": list(i), "value": jsonio.frac_str(v.value),
             "radical": jsonio.frac_str(v.radical)}
            for i, v in sorted(out.items())
        ]})
    if args.action == "compose":
        rng = random.Random(args.seed)
        kind = args.kind
        top = tower.levels[-1]
        rs_top = tower.system(top)
        group = weyl.WeylGroup(rs_top, extended=True)
        basis = invariants.invariant_generators(group)
        samples = []
        for _ in range(args.samples):
            f = Poly.zero(rs_top.ambient_dim)
            for _ in range(2):
                term = Poly.const(rs_top.ambient_dim, Fraction(rng.randrange(-4, 5)))
                for g in basis.generators:
                    if rng.random() < 0.4:
                        term = term * g
                f = f + term
            samples.append(f)
        if kind == "P_rho":
            samples = [pwmodel.op_T_inv(f, group, rootsys.rho(rs_top))
                       for f in samples]
        elif kind == "L":
            rs_lo = tower.system(tower.levels[0])
            samples = [cf.FourierData(rs_lo, {
                tuple(rng.randrange(3) for _ in range(rs_lo.rank)):
                    Fraction(rng.randrange(1, 7), rng.randrange(1, 4))
                for _ in range(3)
            }) for _ in range(args.samples)]
        cert = limits.compose_check(tower, kind, samples, provider)
        return _emit(args, cert.as_report())
    if args.action == "oracle":
        mu = tuple(int(x) for x in args.mu.split(","))
        r = limits.su3_projection_oracle(mu)
        return _emit(args, {
            "mu": list(r["mu"]), "dim_v": r["dim_v"], "dim_w": r["dim_w"],
            "c_squared": jsonio.frac_str(r["c_squared_explicit"]),
            "formula": jsonio.frac_str(r["c_squared_formula"]),
            "match": r["match"],
        })
    raise DomainError(f"unknown limits action {args.action!r}")


def cmd_verify(args) -> int:
    if args.suite == "restriction-weyl":
        pair = _pair(args)
        cert = weyl.verify_restriction_theorem(pair)
        return _emit(args, {"status": "ok", "order": cert.order_restricted})
    if args.suite == "omega-star":
        reports = []
        for rank in range(rootsys.MIN_RANK[args.family], args.max_rank + 1):
            rs = rootsys.build_root_system(args.family, rank)
            geometry.omega_star(rs)  # internal closed-form cross-check
            ok = geometry.omega_star_subset_omega(rs)
            if not ok:
                raise TheoremViolationError("Omega* not inside Omega",
                                            {"family": args.family, "rank": rank})
            reports.append({"rank": rank, "status": "ok"})
        return _emit(args, {"family": args.family, "checks": reports})
    if args.suite == "intersection":
        pair = _pair(args)
        cert = geometry.check_intersection(pair)
        return _emit(args, cert.as_report())
    if args.suite == "table":
        rows = []
        for row, params_list in _table_parameter_grid(args.max_j, args.max_pq):
            for params in params_list:
                desc = rootsys.space_descriptor(row, *params)
                rows.append({"row": row, "params": list(params),
                             "rank": desc.rank, "dim": desc.dim})
        return _emit(args, {"status": "ok", "count": len(rows), "rows": rows})
    raise DomainError(f"unknown verification suite {args.suite!r}")


def _table_parameter_grid(max_j: int, max_pq: int):
    grid = []
    single = {1: 2, 2: 1, 3: 2, 4: 1, 6: 2, 7: 2, 9: 2, 11: 1}
    for row, j0 in single.items():
        grid.append((row, [(j,) for j in range(j0, max_j + 1)]))
    for row in (5, 10):
        grid.append((row, [(p, q) for p in range(1, max_pq + 1)
                           for q in range(p, max_pq + 1)]))
    grid.append((8, [(p, q) for p in range(1, max_pq + 1)
                     for q in range(p, max_pq + 1) if p + q >= 3]))
    return grid


# -- parser -----------------------------------------------------------------


def _add_common(sub, family=True, rank=False, pair=False, mult=False):
    if family:
        sub.add_argument("--family", required=True, choices=rootsys.FAMILIES)
    if rank:
        sub.add_argument("--rank", type=int, required=True)
    if pair:
        sub.add_argument("--from", dest="from_rank", type=int, required=True)
        sub.add_argument("--to", type=int, required=True)
    if mult:
        sub.add_argument("--mult", type=int, default=1)
    sub.add_argument("--json")
    sub.add_argument("--in", dest="infile")
    sub.add_argument("--out")
    sub.add_argument("--float", action="store_true")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    sub.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootlimits",
        description="Exact root-system / Paley-Wiener tower calculus",
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    p = subs.add_parser("describe", help="classification-table row data")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--j", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    _add_common(p, family=False)
    p.set_defaults(handler=cmd_describe)

    p = subs.add_parser("weyl", help="Weyl group operations")
    p.add_argument("action", choices=["order", "elements", "reflection",
                                      "sigma", "orbit"])
    p.add_argument("--extended", action="store_true")
    p.add_argument("--root")
    p.add_argument("--vector")
    _add_common(p, rank=True, mult=True)
    p.set_defaults(handler=cmd_weyl)

    p = subs.add_parser("invariants", help="invariant polynomial algebra")
    p.add_argument("action", choices=["generators", "reynolds", "express",
                                      "rais", "coinvariants", "lift",
                                      "constructive-lift"])
    p.add_argument("--rank", type=int)
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--family", required=True, choices=rootsys.FAMILIES)
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_invariants)

    p = subs.add_parser("pw", help="Paley-Wiener model operators")
    p.add_argument("action", choices=["t", "tinv", "symmetrize",
                                      "skew-symmetrize", "restrict",
                                      "restrict-rho"])
    p.add_argument("--rank", type=int)
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--family", required=True, choices=rootsys.FAMILIES)
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_pw)

    p = subs.add_parser("fourier", help="compact-side coefficient calculus")
    p.add_argument("action", choices=["dim", "ell2", "qmap", "eval",
                                      "branch", "ckn"])
    p.add_argument("--row", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--family", choices=rootsys.FAMILIES)
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--index")
    p.add_argument("--weight")
    p.add_argument("--angles")
    p.add_argument("--truncation")
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_fourier)

    p = subs.add_parser("omega", help="invariant domains and radii")
    p.add_argument("action", choices=["omega", "star", "contains", "inradius",
                                      "check-intersection", "injectivity"])
    p.add_argument("--rank", type=int)
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--point")
    p.add_argument("--full", action="store_true",
                   help="use Omega instead of Omega*")
    p.add_argument("--group")
    p.add_argument("--row", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--family", choices=rootsys.FAMILIES)
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_omega)

    p = subs.add_parser("limits", help="tower engine and scaling maps")
    p.add_argument("action", choices=["project", "lmap", "compose", "oracle"])
    p.add_argument("--levels", default="2,3,4")
    p.add_argument("--rule", choices=limits.LIFT_RULES, default="generator")
    p.add_argument("--level", type=int)
    p.add_argument("--kind", choices=limits.MAP_KINDS, default="P_flat")
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--provider", choices=["unit", "group"], default="group")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--mu", default="1,1")
    p.add_argument("--family", required=False, choices=rootsys.FAMILIES,
                   default="A")
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_limits)

    p = subs.add_parser("verify", help="named certificate suites")
    p.add_argument("suite", choices=["restriction-weyl", "omega-star",
                                     "intersection", "table"])
    p.add_argument("--from", dest="from_rank", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--mult", type=int, default=1)
    p.add_argument("--max-j", dest="max_j", type=int, default=6)
    p.add_argument("--max-pq", dest="max_pq", type=int, default=5)
    p.add_argument("--family", choices=rootsys.FAMILIES)
    p.add_argument("--json")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=8)
    p.add_argument("--degree-bound", dest="degree_bound", type=int, default=24)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except TheoremViolationError as exc:
        print(jsonio.dumps({"error_kind": "theorem-violation",
                            "message": str(exc),
                            "details": {k: str(v) for k, v in exc.details.items()}}),
              file=sys.stderr)
        return EXIT_THEOREM
    except (DomainError, ResourceLimitError) as exc:
        print(jsonio.dumps({"error_kind": "domain", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
