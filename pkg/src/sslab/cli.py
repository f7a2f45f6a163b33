"""Command line front end.

Every subcommand prints one JSON document with sorted keys (or a DOT
graph when asked), so repeated runs with the same arguments are
byte-identical.  Field elements are rendered as canonical strings
("5", "g", "2+3*g"); bare integers stay integers.

Exit codes: 0 on success, 1 when a verification suite reports a failed
claim (the failing ids are printed), 2 for usage errors, including
mathematically unusable arguments such as a composite characteristic.
"""

import argparse
import json
import sys

from .curves import (Curve, automorphisms, frobenius_trace,
                     is_supersingular, point_count, ss_j_invariants,
                     standard_curve)
from .errors import SsLabError
from .fields import field
from .formal import FormalGroup
from .isogenies import graph_is_connected, ss_isogeny_graph, velu
from .modular import eisenstein_embedding, graded_piece, hecke_matrix
from .verify import SUITES, _cyclic_subgroups, element_str, run_suite


def _emit(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _parse_j(parser, text, K):
    parts = text.split(",")
    if len(parts) > 2 or not all(p.strip().lstrip("-").isdigit()
                                 for p in parts):
        parser.error(f"--j wants 'c0' or 'c0,c1', got {text!r}")
    coords = [int(p) for p in parts]
    while len(coords) < 2:
        coords.append(0)
    return K.element(tuple(c % K.p for c in coords))


def _cmd_curve_info(args, parser):
    F = field(args.p)
    E = Curve(F, F.element(args.a % args.p), F.element(args.b % args.p))
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "a": args.a % args.p,
        "b": args.b % args.p,
        "c4": element_str(E.c4),
        "c6": element_str(E.c6),
        "delta": element_str(E.disc),
        "j": element_str(E.j),
        "supersingular": is_supersingular(E),
        "aut_order": len(automorphisms(E)),
    })
    return 0


def _cmd_ss_enum(args, parser):
    js = ss_j_invariants(args.p)
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "ss_j": [element_str(j) for j in js],
        "count": len(js),
    })
    return 0


def _cmd_fgl(args, parser):
    K = field(args.p, 2)
    j = _parse_j(parser, args.j, K)
    fg = FormalGroup(standard_curve(K, j), args.order)
    table = []
    for i in range(args.order):
        for jj in range(args.order - i):
            c = fg.addition_coefficient(i, jj)
            if c:
                table.append([i, jj, element_str(c)])
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "j": element_str(j),
        "order": args.order,
        "coefficients": table,
    })
    return 0


def _cmd_p_series(args, parser):
    K = field(args.p, 2)
    j = _parse_j(parser, args.j, K)
    E = standard_curve(K, j)
    fg = FormalGroup(E, args.p * args.p + 2)
    u1 = fg.p_series_coefficient(1)
    u2 = fg.p_series_coefficient(2)
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "j": element_str(j),
        "height": 1 if u1 else 2,
        "u1": element_str(u1),
        "u2": element_str(u2),
    })
    return 0


def _cmd_isogeny(args, parser):
    K = field(args.p, 2)
    j = _parse_j(parser, args.j, K)
    E = standard_curve(K, j)
    pts = list(E.points())
    out = []
    for group in _cyclic_subgroups(E, pts, args.l):
        phi = velu(E, group)
        kernel = phi.kernel_polynomial()
        out.append({
            "kernel": [element_str(c) for c in kernel.coeffs],
            "codomain_j": element_str(phi.codomain.j),
            "degree": phi.degree,
        })
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "j": element_str(j),
        "l": args.l,
        "isogenies": out,
    })
    return 0


def _dot_graph(graph):
    lines = [f'digraph isogeny_p{graph["p"]}_l{graph["ell"]} {{']
    names = [element_str(j) for j in graph["vertices"]]
    for name in names:
        lines.append(f'  "{name}";')
    for name, row in zip(names, graph["adjacency"]):
        counts = {}
        for target in row:
            key = element_str(target)
            counts[key] = counts.get(key, 0) + 1
        for key in sorted(counts):
            lines.append(f'  "{name}" -> "{key}" [label="{counts[key]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_graph(args, parser):
    g = ss_isogeny_graph(args.p, args.l)
    if args.format == "dot":
        sys.stdout.write(_dot_graph(g))
        return 0
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "l": args.l,
        "vertices": [element_str(j) for j in g["vertices"]],
        "adjacency": [[element_str(j) for j in row]
                      for row in g["adjacency"]],
        "connected": graph_is_connected(g),
    })
    return 0


def _cmd_count_points(args, parser):
    if args.j is not None:
        K = field(args.p, 2)
        E = standard_curve(K, _parse_j(parser, args.j, K))
    elif args.a is not None and args.b is not None:
        F = field(args.p)
        E = Curve(F, F.element(args.a % args.p), F.element(args.b % args.p))
    else:
        parser.error("count-points wants either --j or both --a and --b")
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "j": element_str(E.j),
        "n": args.n,
        "count": point_count(E, args.n),
        "trace": frobenius_trace(E),
    })
    return 0


def _cmd_hecke(args, parser):
    piece = graded_piece(args.p, args.n)
    mat = hecke_matrix(args.p, args.n, args.l)
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "n": args.n,
        "l": args.l,
        "dim": piece.dim,
        "matrix": [list(row) for row in mat.rows],
    })
    return 0


def _cmd_eigen_search(args, parser):
    predicted, found, witness = eisenstein_embedding(args.p, args.n, args.k)
    _emit({
        "schema": "sslab/1",
        "p": args.p,
        "n": args.n,
        "k": args.k,
        "predicted": predicted,
        "found": found,
        "witness": list(witness) if witness is not None else None,
    })
    return 0


def _cmd_verify(args, parser):
    report = run_suite(args.suite, p=args.p, seed=args.seed)
    _emit(report)
    if report["failed"]:
        sys.stderr.write("failed claims: " + ", ".join(report["failed"])
                         + "\n")
        return 1
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sslab",
        description="supersingular curve laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        for flag, spec in flags.items():
            sp.add_argument("--" + flag.replace("_", "-"), **spec)
        sp.set_defaults(fn=fn)
        return sp

    p_req = {"type": int, "required": True}
    add("curve-info", _cmd_curve_info,
        p=p_req, a={"type": int, "required": True},
        b={"type": int, "required": True})
    add("ss-enum", _cmd_ss_enum, p=p_req)
    add("fgl", _cmd_fgl,
        p=p_req, j={"required": True},
        order={"type": int, "default": 8})
    add("p-series", _cmd_p_series, p=p_req, j={"required": True})
    add("isogeny", _cmd_isogeny,
        p=p_req, j={"required": True}, l={"type": int, "required": True})
    add("graph", _cmd_graph,
        p=p_req, l={"type": int, "required": True},
        format={"choices": ("json", "dot"), "default": "json"})
    add("count-points", _cmd_count_points,
        p=p_req, a={"type": int}, b={"type": int}, j={},
        n={"type": int, "default": 1})
    add("hecke", _cmd_hecke,
        p=p_req, n={"type": int, "required": True},
        l={"type": int, "required": True})
    add("eigen-search", _cmd_eigen_search,
        p=p_req, n={"type": int, "required": True},
        k={"type": int, "required": True})
    sp = sub.add_parser("verify")
    sp.add_argument("suite", choices=tuple(SUITES) + ("all",))
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except SsLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
