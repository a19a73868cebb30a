"""Command-line interface: JSON/CSV emission, structure cache, exit codes.

Commands: basis, weights, gram, gramdet, ss, homs, axioms, res, ind.
All output is deterministic for a fixed (config, seed): keys are sorted and
polynomials use the canonical text form. The timing_ms field is wall-clock
and is the only non-reproducible part of the document.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import get_context
from .cyclo import Cyc, phi_degree
from .modules import (Weight, gram_matrix, induction_support, label_length,
                      matrix_eval, restriction_filtration, weights)
from .poly import DPoly, det_fraction_free
from .tower import (check_all_axioms, hom_space, semisimplicity_certificate)


def parse_depth(text: str):
    if text == "inf":
        return None
    value = int(text)
    if value < 0:
        raise ValueError("depth must be non-negative or 'inf'")
    return value


def depth_token(d) -> str:
    return "inf" if d is None else str(d)


def parse_weight(text: str, n: int, m: int, d) -> Weight:
    """Weight syntax: "empty" or "l=<prop>:i1,i2,..." (labels west to east)."""
    text = text.strip()
    if text == "empty":
        return Weight(0, ())
    if not text.startswith("l="):
        raise ValueError(f"cannot parse weight at position 0: {text!r}")
    body = text[2:]
    if ":" in body:
        prop_part, label_part = body.split(":", 1)
        labels = tuple(int(tok) for tok in label_part.split(",") if tok)
    else:
        prop_part, labels = body, ()
    prop = int(prop_part)
    w = Weight(prop, labels)
    if len(labels) != label_length(prop, m, d):
        raise ValueError(
            f"weight {text!r}: expected {label_length(prop, m, d)} labels")
    return w


def parse_delta(text: str, m: int):
    """Comma-separated parameter list; each entry a rational "p/q" or a
    cyclotomic coefficient vector "[c0:c1:...]" in powers of the root."""
    entries = []
    depthcount = 0
    current = ""
    for ch in text:
        if ch == "[":
            depthcount += 1
        elif ch == "]":
            depthcount -= 1
        if ch == "," and depthcount == 0:
            entries.append(current)
            current = ""
        else:
            current += ch
    entries.append(current)
    if len(entries) != m:
        raise ValueError(f"need {m} delta values, got {len(entries)}")
    out = []
    for ent in entries:
        ent = ent.strip()
        if ent.startswith("[") and ent.endswith("]"):
            coeffs = [Fraction(tok) for tok in ent[1:-1].split(":")]
            if len(coeffs) != phi_degree(m):
                raise ValueError(
                    f"cyclotomic vector needs {phi_degree(m)} coefficients")
            out.append(Cyc(m, coeffs))
        else:
            out.append(Cyc.from_rational(m, Fraction(ent)))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="contourtl",
        description="Exact computations in decorated planar diagram algebras")
    p.add_argument("-n", type=int, required=True, help="number of strands")
    p.add_argument("-m", type=int, default=1, help="bead order (loop parameters)")
    p.add_argument("-d", default="inf", help="decoration depth bound or 'inf'")
    p.add_argument("--delta", default=None,
                   help="specialization: m comma-separated values")
    p.add_argument("--pivot", type=int, default=0,
                   help="index of the loop parameter assumed invertible")
    p.add_argument("--cache-dir", default=None,
                   help="directory for the structure-constant cache")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized witnesses (recorded in output)")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("basis", help="basis size stratified by propagating number")
    sub.add_parser("weights", help="list the weight lattice")
    for name in ("gram", "gramdet", "res", "ind"):
        sp = sub.add_parser(name)
        sp.add_argument("--weight", required=True,
                        help='"empty" or "l=<prop>:i1,i2,..."')
    sub.add_parser("ss", help="semisimplicity certificate (needs --delta)")
    hp = sub.add_parser("homs", help="hom space between standard modules")
    hp.add_argument("--source", required=True)
    hp.add_argument("--target", required=True)
    sub.add_parser("axioms", help="run the tower axiom suite A1-A6")
    return p


def cmd_basis(n, m, d, args, point):
    ctx = get_context(n, m, d)
    by_prop = {}
    for p_ in ctx.prop:
        by_prop[p_] = by_prop.get(p_, 0) + 1
    return {"dimension": ctx.dimension(),
            "by_prop": {str(k): by_prop[k] for k in sorted(by_prop)}}, 0


def cmd_weights(n, m, d, args, point):
    lat = weights(n, m, d)
    return {"count": len(lat.all_weights()),
            "strata": {str(l): [w.text() for w in ws]
                       for l, ws in sorted(lat.strata.items())}}, 0


def cmd_gram(n, m, d, args, point):
    w = parse_weight(args.weight, n, m, d)
    mat = gram_matrix(n, m, d, w)
    if point is not None:
        ev = matrix_eval(mat, point)
        return {"weight": w.text(), "evaluated": True,
                "matrix": [[c.to_text() for c in row] for row in ev]}, 0
    return {"weight": w.text(), "evaluated": False,
            "matrix": [[c.to_text() for c in row] for row in mat]}, 0


def cmd_gramdet(n, m, d, args, point):
    w = parse_weight(args.weight, n, m, d)
    mat = gram_matrix(n, m, d, w)
    if not mat:
        det_text, zero = DPoly.one(m).to_text(), False
    elif point is not None:
        det = det_fraction_free(matrix_eval(mat, point))
        det_text, zero = det.to_text(), det.is_zero()
    else:
        det = det_fraction_free(mat)
        det_text, zero = det.to_text(), det.is_zero()
    return {"weight": w.text(), "determinant": det_text, "zero": zero}, 0


def cmd_ss(n, m, d, args, point):
    if point is None:
        raise ValueError("ss needs a --delta specialization")
    cert = semisimplicity_certificate(n, m, d, point)
    result = {"semisimple": cert["semisimple"],
              "failing": [[np, w.text()] for np, w in cert["failing"]],
              "checked": [[np, w.text(), val.to_text()]
                          for np, w, val in cert["checked"]]}
    return result, 0 if cert["semisimple"] else 1


def cmd_homs(n, m, d, args, point):
    if point is None:
        raise ValueError("homs needs a --delta specialization")
    src = parse_weight(args.source, n, m, d)
    tgt = parse_weight(args.target, n, m, d)
    hs = hom_space(n, m, d, src, tgt, point)
    result = hs.to_jsonable()
    result["basis"] = [[[c.to_text() for c in row] for row in mat]
                       for mat in hs.basis_mats]
    return result, 0


def cmd_axioms(n, m, d, args, point):
    reports = check_all_axioms(n, m, d, args.pivot)
    ok = all(r.verdict for r in reports)
    return {"all_pass": ok,
            "reports": [r.to_jsonable() for r in reports]}, 0 if ok else 1


def cmd_res(n, m, d, args, point):
    w = parse_weight(args.weight, n, m, d)
    return restriction_filtration(n, m, d, w).to_jsonable(), 0


def cmd_ind(n, m, d, args, point):
    w = parse_weight(args.weight, n, m, d)
    return induction_support(n, m, d, w).to_jsonable(), 0


HANDLERS = {"basis": cmd_basis, "weights": cmd_weights, "gram": cmd_gram,
            "gramdet": cmd_gramdet, "ss": cmd_ss, "homs": cmd_homs,
            "axioms": cmd_axioms, "res": cmd_res, "ind": cmd_ind}


def emit(doc, result, fmt, out):
    if fmt == "json":
        json.dump(doc, out, sort_keys=True)
        out.write("\n")
    elif fmt == "plain":
        _emit_plain(result, out)
    elif fmt == "csv":
        if not (isinstance(result, dict) and result.get("evaluated")):
            raise ValueError("csv output is only available for evaluated Gram matrices")
        for row in result["matrix"]:
            out.write(",".join(f'"{c}"' if "," in c else c for c in row) + "\n")


def _emit_plain(value, out, indent=""):
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)):
                out.write(f"{indent}{k}:\n")
                _emit_plain(v, out, indent + "  ")
            else:
                out.write(f"{indent}{k}: {v}\n")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                _emit_plain(v, out, indent + "  ")
            else:
                out.write(f"{indent}{v}\n")
    else:
        out.write(f"{indent}{value}\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        d = parse_depth(args.d)
        n, m = args.n, args.m
        if n < 0 or m < 1:
            raise ValueError("need n >= 0 and m >= 1")
        point = parse_delta(args.delta, m) if args.delta is not None else None
        if point is not None and point[args.pivot % m].is_zero():
            raise ValueError(f"pivot parameter d{args.pivot % m} vanishes "
                             "at the given specialization")
        ctx = None
        if args.cache_dir is not None:
            ctx = get_context(n, m, d)
            ctx.load_cache(args.cache_dir)
        start = time.monotonic()
        result, code = HANDLERS[args.command](n, m, d, args, point)
        timing_ms = round((time.monotonic() - start) * 1000, 3)
        if ctx is not None:
            ctx.save_cache(args.cache_dir)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"config": {"n": n, "m": m, "d": depth_token(d),
                      "delta": args.delta, "pivot": args.pivot,
                      "format": args.format, "seed": args.seed,
                      "command": args.command},
           "result": result, "timing_ms": timing_ms}
    try:
        emit(doc, result, args.format, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
