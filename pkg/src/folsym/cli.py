"""Command-line interface exposing every pipeline stage.

Subcommands: diag (diagonal symmetry counting of an affine 1-form),
molien (Poincare series of semi-invariants), semi (explicit bases of
divergence-free semi-invariant fields), catalog (list and verify the
extremal foliations), orbit (projective orbits of named groups).

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal invariant violation.  All output is exact and deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Dict, List, Optional

from .catalog import (
    ALL_NAMES,
    build,
    catalog_json_text,
    verify_generators,
    verify_order,
    verify_polyhedral_normal_form,
)
from .cyclotomic import (
    ConductorCapError,
    CycloParseError,
    cyclo_to_str,
    parse_cyclo,
    set_conductor_cap,
)
from .diagonal import diagonal_group, extremal_form_detect, monomial_set
from .geometry import (
    FoliationError,
    field_to_str,
    foliation_degree,
    parse_affine_form,
)
from .groups import ClosureError, group_from_json, linear_characters, named_group, orbit
from .polynomials import PolyParseError
from .reynolds import DimensionMismatchError, semi_invariant_fields
from .series import (
    MolienIntegralityError,
    expand_closed_form,
    molien_fields,
    molien_ring,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="folsym",
        description="exact symmetry computations for plane polynomial foliations",
    )
    p.add_argument("--trunc", type=int, default=40, help="series truncation degree")
    p.add_argument(
        "--max-order", type=int, default=10000, help="group closure size limit"
    )
    p.add_argument(
        "--conductor-cap", type=int, default=120, help="cyclotomic conductor cap"
    )
    p.add_argument("--json", action="store_true", help="JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diag", help="diagonal symmetries of an affine 1-form")
    d.add_argument("form_file", help="file containing the 1-form")
    d.add_argument(
        "--enumerate", action="store_true", dest="enumerate_elements",
        help="list the diagonal group elements",
    )
    d.set_defaults(func=cmd_diag)

    m = sub.add_parser("molien", help="Poincare series of semi-invariants")
    m.add_argument("--group", required=True, help="group name or JSON file")
    m.add_argument("--degree", type=int, default=None, help="degree for parametric groups")
    m.add_argument("--char", type=int, default=0, help="character index")
    m.add_argument("--kind", choices=("ring", "fields"), default="fields")
    m.add_argument("--compare", default=None, help="file with a closed-form numerator")
    m.add_argument("--denom", default=None, help="denominator exponents, e.g. 9,12,18")
    m.set_defaults(func=cmd_molien)

    s = sub.add_parser("semi", help="basis of semi-invariant fields")
    s.add_argument("--group", required=True, help="group name or JSON file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--group-degree", type=int, default=None, help="degree for parametric groups")
    s.add_argument("--char", type=int, default=0, help="character index")
    s.set_defaults(func=cmd_semi)

    c = sub.add_parser("catalog", help="extremal foliation catalog")
    c.add_argument("action", choices=("list", "verify"))
    c.add_argument("--name", default=None)
    c.add_argument("--degree", type=int, default=None)
    c.set_defaults(func=cmd_catalog)

    o = sub.add_parser("orbit", help="projective orbit of a point")
    o.add_argument("--group", required=True, help="group name or JSON file")
    o.add_argument("--degree", type=int, default=None, help="degree for parametric groups")
    o.add_argument("--point", required=True, help="comma-separated coordinates")
    o.set_defaults(func=cmd_orbit)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.trunc < 0 or args.max_order <= 0 or args.conductor_cap <= 0:
        print("error: flags must be positive", file=sys.stderr)
        return EXIT_INPUT
    set_conductor_cap(args.conductor_cap)
    try:
        return args.func(args)
    except (MolienIntegralityError, DimensionMismatchError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (
        CycloParseError,
        PolyParseError,
        FoliationError,
        ClosureError,
        ConductorCapError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


# ---------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------

def _load_group(spec: str, degree: Optional[int], max_order: int):
    if spec.endswith(".json") or os.path.sep in spec or os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return group_from_json(fh.read())
    return named_group(spec, degree)


def _character(G, idx: int):
    chars = linear_characters(G)
    if idx < 0 or idx >= len(chars):
        raise ValueError(
            f"character index {idx} out of range; the group has {len(chars)}"
        )
    return chars[idx]


def _monomial_str(m) -> str:
    i, j = m
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts) if parts else "1"


def _emit(args, payload: Dict, text_lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


_TERM_RE = re.compile(
    r"^\s*([+-]?\d*)\s*\*?\s*(t(?:\^(\d+))?)?\s*$"
)


def parse_t_polynomial(text: str) -> Dict[int, int]:
    """Parse an integer polynomial in t, e.g. 't^4 + 2*t^9 - t^46'."""
    out: Dict[int, int] = {}
    src = text.replace("-", "+-")
    for chunk in src.split("+"):
        if not chunk.strip():
            continue
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ValueError(f"bad series term: {chunk.strip()!r}")
        coef_s, t_part, exp_s = m.groups()
        if coef_s in ("", "+"):
            coef = 1
        elif coef_s == "-":
            coef = -1
        else:
            coef = int(coef_s)
        if t_part is None:
            e = 0
        elif exp_s is None:
            e = 1
        else:
            e = int(exp_s)
        out[e] = out.get(e, 0) + coef
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------

def cmd_diag(args) -> int:
    with open(args.form_file, "r", encoding="utf-8") as fh:
        omega = parse_affine_form(fh.read())
    deg, invariant = foliation_degree(omega)
    M = monomial_set(omega)
    dg = diagonal_group(M)
    lines = [
        f"degree: {deg}",
        f"line at infinity invariant: {'yes' if invariant else 'no'}",
        f"monomial set: {', '.join(_monomial_str(m) for m in M)}",
        f"snf diagonal: {dg.lattice.diag[0]}, {dg.lattice.diag[1]}",
        f"order: {dg.order if dg.finite else 'INFINITE'}",
    ]
    payload: Dict = {
        "degree": deg,
        "infinity_invariant": invariant,
        "monomial_set": [list(m) for m in M],
        "snf_diagonal": list(dg.lattice.diag),
        "order": dg.order if dg.finite else "INFINITE",
    }
    ext = extremal_form_detect(omega)
    if ext is not None:
        alpha, beta, rho = ext
        lines.append(
            "extremal form: alpha=%s beta=%s rho=%s"
            % tuple(cyclo_to_str(c) for c in ext)
        )
        payload["extremal_form"] = {
            "alpha": cyclo_to_str(alpha),
            "beta": cyclo_to_str(beta),
            "rho": cyclo_to_str(rho),
        }
    if args.enumerate_elements:
        if not dg.finite:
            raise FoliationError("cannot enumerate an infinite group")
        els = [
            (cyclo_to_str(a), cyclo_to_str(b)) for a, b in dg.elements()
        ]
        lines.extend(f"element: ({a}, {b})" for a, b in els)
        payload["elements"] = [list(e) for e in els]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_molien(args) -> int:
    G = _load_group(args.group, args.degree, args.max_order)
    chi = _character(G, args.char)
    fn = molien_fields if args.kind == "fields" else molien_ring
    series = fn(G, chi, args.trunc)
    lines = [str(series)]
    payload: Dict = {
        "kind": args.kind,
        "truncation": args.trunc,
        "coefficients": list(series.coefficients),
    }
    status = EXIT_OK
    if args.compare is not None:
        if args.denom is None:
            raise ValueError("--compare needs --denom")
        with open(args.compare, "r", encoding="utf-8") as fh:
            numer = parse_t_polynomial(fh.read())
        denom = [int(x) for x in args.denom.split(",") if x.strip()]
        closed = expand_closed_form(numer, denom, args.trunc)
        match = closed == series
        lines.append(f"closed form match: {'PASS' if match else 'FAIL'}")
        payload["closed_form_match"] = match
        if not match:
            status = EXIT_FAIL
    _emit(args, payload, lines)
    return status


def cmd_semi(args) -> int:
    G = _load_group(args.group, args.group_degree, args.max_order)
    chi = _character(G, args.char)
    basis = semi_invariant_fields(G, chi, args.degree)
    lines = [f"# dim = {len(basis)}"]
    lines.extend(field_to_str(v) for v in basis)
    payload = {
        "degree": args.degree,
        "dim": len(basis),
        "fields": [field_to_str(v) for v in basis],
    }
    _emit(args, payload, lines)
    return EXIT_OK


_CATALOG_ALIASES = {
    "j": "J", "jouanolou": "J",
    "f": "F", "fermat": "F",
    "g": "G",
    "s": "S", "rational": "S",
    "h4": "H4", "hessian4": "H4",
    "h7": "H7", "hessian7": "H7",
    "p5": "P5", "bernoulli5": "P5",
    "p11": "P11", "bernoulli11": "P11",
}


def _catalog_name(name: str) -> str:
    key = name.lower()
    if key in _CATALOG_ALIASES:
        return _CATALOG_ALIASES[key]
    raise ValueError(f"unknown catalog entry: {name}")


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [
            ("J", "d>=2", "3(d^2+d+1)"),
            ("F", "d>=2", "6(d-1)^2"),
            ("G", "d>=2", "6(d-1)^2"),
            ("S", "2", "24"),
            ("H4", "4", "216"),
            ("H7", "7", "216"),
            ("P5", "5", "96"),
            ("P11", "11", "600"),
        ]
        lines = [f"{n:<4} degree {d:<5} order {o}" for n, d, o in rows]
        payload = {"entries": json.loads(catalog_json_text())} if args.json else {}
        _emit(args, payload, lines)
        return EXIT_OK
    if args.name is None:
        raise ValueError("verify needs --name")
    e = build(_catalog_name(args.name), args.degree)
    gen_report = verify_generators(e)
    order_report = verify_order(e, max_order=args.max_order)
    reports = {"generators": gen_report, "order": order_report}
    ok = gen_report["all_certified"] and order_report["all_ok"]
    lines = [
        f"entry: {e.name} degree {e.degree}",
        f"generators: {'PASS' if gen_report['all_certified'] else 'FAIL'}",
        f"order: {order_report['computed_order']} expected {e.expected_aut_order} "
        f"{'PASS' if order_report['all_ok'] else 'FAIL'}",
    ]
    if e.is_planar:
        nf = verify_polyhedral_normal_form(e)
        reports["normal_form"] = nf
        ok = ok and nf["all_ok"]
        lines.append(f"normal form: {'PASS' if nf['all_ok'] else 'FAIL'}")
    lines.append("PASS" if ok else "FAIL")
    payload = {"name": e.name, "degree": e.degree, "ok": ok, "reports": reports}
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbit(args) -> int:
    G = _load_group(args.group, args.degree, args.max_order)
    coords = [parse_cyclo(x.strip()) for x in args.point.split(",")]
    if len(coords) != G.dimension:
        raise ValueError(
            f"point has {len(coords)} coordinates, group acts on {G.dimension}"
        )
    pts = orbit(G, coords)
    pt_strs = [[cyclo_to_str(c) for c in p] for p in pts]
    lines = [f"size: {len(pts)}"]
    lines.extend("[" + " : ".join(p) + "]" for p in pt_strs)
    _emit(args, {"size": len(pts), "points": pt_strs}, lines)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
