"""Command-line front end.

Usage: ``tropcong GROUP COMMAND [INPUT] [flags]``. INPUT is a JSON file
(``-`` or omitted reads stdin). Results go to stdout as JSON.

Exit codes: 0 success or member, 1 decided non-member (membership and
witness-verification commands only), 2 input error,
3 resource bound exceeded, 4 unknown (semi-decisions only).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, fields, replace

from . import __version__
from .errors import InputError, ResourceError
from .exactnum import rat_str
from .finlab import algebra_from_json, analyze, load_fixture, FIXTURE_NAMES
from .order import (canonicalize, collapse_weights, dimension, is_minimal, matrix_to_json,
                    prime_chain, prime_member, spec_from_json, spec_to_json, validate,
                    OrderMatrix)
from .pairalg import (bounded_closure_member, gp_element, pair_from_json, pair_to_json,
                      presentation_from_json, star, twisted_mul, witness_from_json,
                      witness_to_json, Yes)
from .polytope import hat_vertices, poly_newt, polytope_svg, polytope_to_json
from .radnull import (NotFoundWithinBounds, SeparatingPrime, SeparationPoint, Verdict,
                      check_separating_prime, check_separation_point, eplus_member,
                      gp_witness_normalize, gp_witness_search, gp_witness_verify, null_member,
                      rad_member_fg, rad_trivial_member)
from .semifield import parse_scalar, scalar_literal
from .tropoly import (Context, make_point, poly_add, poly_eval, poly_from_json, poly_mul,
                      poly_to_json, point_to_json)

EXIT_OK, EXIT_NON_MEMBER, EXIT_INPUT, EXIT_RESOURCE, EXIT_UNKNOWN = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class Config:
    k_bound: int = 3
    closure_degree_bound: int = 12
    gp_search_bound: int = 4
    epsilon: str = "t^1"
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        for f in ("k_bound", "closure_degree_bound", "gp_search_bound", "jobs"):
            v = getattr(self, f)
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise InputError(f"config {f} must be a positive integer, got {v!r}")


def load_config(path) -> Config:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot read config {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise _json_error(err, path) from None
    if not isinstance(doc, dict):
        raise InputError("config must be a JSON object")
    known = {f.name for f in fields(Config)}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(unknown)}")
    return Config(**doc)


class JsonInputError(InputError):
    def __init__(self, msg, line, column, pos):
        super().__init__(msg)
        self.line, self.column, self.pos = line, column, pos


def _json_error(err: json.JSONDecodeError, source) -> JsonInputError:
    return JsonInputError(f"malformed JSON in {source}: {err.msg}", err.lineno, err.colno, err.pos)


def _read_input(path, stdin):
    if path in (None, "-"):
        text, source = stdin.read(), "<stdin>"
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as err:
            raise InputError(f"cannot read {path}: {err.strerror}") from None
        source = path
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise _json_error(err, source) from None
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    return doc


def _need(doc, key):
    if key not in doc:
        raise InputError(f"input lacks the field {key!r}")
    return doc[key]


def _context(doc, args) -> Context:
    tag = doc.get("semifield", args.semifield)
    k = doc.get("k", args.k)
    laurent = doc.get("laurent", args.laurent)
    if k is None:
        # infer k from the first structured polynomial in the input
        for key in ("f", "pair", "alpha"):
            v = doc.get(key)
            if isinstance(v, dict):
                v = v.get("lhs", v)
                if isinstance(v, dict) and "k" in v:
                    k = v["k"]
                    tag = v.get("semifield", tag)
                    laurent = v.get("laurent", laurent)
                    break
    if k is None:
        raise InputError("the number of variables is unknown: give 'k' or --k")
    return Context(tag or "B", k, bool(laurent))


# ---------------------------------------------------------------------------
# payloads
# ---------------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def witness_json(w) -> dict:
    if isinstance(w, SeparatingPrime):
        return {"kind": "prime", "kill": sorted(i + 1 for i in w.spec.kill),
                "row": None if w.row is None else [rat_str(v) for v in w.row],
                "dimension": w.spec.U.nrows}
    if isinstance(w, SeparationPoint):
        return {"kind": "point", "point": point_to_json(w.point)}
    raise TypeError(w)


def verdict_json(v: Verdict) -> dict:
    out = {"member": v.member, "cases": v.cases}
    if v.witness is not None:
        out["witness"] = witness_json(v.witness)
    return out


def _export(v: Verdict):
    return verdict_json(v), (EXIT_OK if v.member else EXIT_NON_MEMBER)


def _values_json(val):
    return None if val is None else [rat_str(x) for x in val]


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code) or (text, exit code)
# ---------------------------------------------------------------------------


def cmd_poly(args, doc, cfg):
    ctx = _context(doc, args)
    f = poly_from_json(_need(doc, "f"), ctx)
    if args.cmd == "eval":
        a = make_point(ctx, _need(doc, "point"))
        return {"value": scalar_literal(poly_eval(f, a))}, EXIT_OK
    g = poly_from_json(_need(doc, "g"), ctx)
    h = poly_add(f, g) if args.cmd == "add" else poly_mul(f, g)
    return poly_to_json(h), EXIT_OK


def cmd_pair(args, doc, cfg):
    ctx = _context(doc, args)
    a = pair_from_json(_need(doc, "alpha"), ctx)
    if args.cmd == "twist":
        b = pair_from_json(_need(doc, "beta"), ctx)
        return pair_to_json(twisted_mul(a, b)), EXIT_OK
    if args.cmd == "star":
        return pair_to_json(star(a)), EXIT_OK
    if args.cmd == "gp":
        w = witness_from_json(_need(doc, "witness"), ctx)
        out = gp_element(a, w)
        return {"element": pair_to_json(out), "diagonal": out.diagonal}, EXIT_OK
    # closure
    E = presentation_from_json(doc, ctx)
    res = bounded_closure_member(E, a, args.bound or cfg.closure_degree_bound)
    if isinstance(res, Yes):
        return {"member": True, "steps": res.steps}, EXIT_OK
    return {"member": None, "unknown": res.reason}, EXIT_UNKNOWN


def cmd_newt(args, doc, cfg):
    ctx = _context(doc, args)
    f = poly_from_json(_need(doc, "f"), ctx)
    P = poly_newt(f)
    if args.cmd == "compute":
        return polytope_to_json(P), EXIT_OK
    if args.cmd == "hat":
        if not ctx.weighted:
            raise InputError("hats need a coefficient coordinate (Zmax or TQ)")
        return polytope_to_json(hat_vertices(P)), EXIT_OK
    if args.cmd == "eq":
        g = poly_from_json(_need(doc, "g"), ctx)
        Q = poly_newt(g)
        same = P.vertices == Q.vertices
        out = {"equal": same}
        if ctx.weighted:
            out["hat_equal"] = hat_vertices(P).vertices == hat_vertices(Q).vertices
        return out, EXIT_OK
    svg = polytope_svg(P)
    if args.svg_out:
        with open(args.svg_out, "w") as fh:
            fh.write(svg)
        return {"svg": args.svg_out, "vertices": polytope_to_json(P)["vertices"]}, EXIT_OK
    return svg, EXIT_OK


def cmd_prime(args, doc, cfg):
    ctx = _context(doc, args)
    if args.cmd == "canon":
        m = _need(doc, "matrix")
        rows = m.get("rows", []) if isinstance(m, dict) else m
        U = OrderMatrix.of(rows, ctx.tag, len(rows[0]) if rows else 0)
        return matrix_to_json(canonicalize(U)), EXIT_OK
    spec = spec_from_json(_need(doc, "spec"), ctx)
    if args.cmd == "validate":
        ok, probs = validate(spec)
        return {"valid": ok, "problems": probs}, EXIT_OK
    if args.cmd == "member":
        p = pair_from_json(_need(doc, "pair"), ctx)
        member = prime_member(spec, p)
        out = {"member": member, "values": {"lhs": _values_json(spec.value(p.lhs)),
                                            "rhs": _values_json(spec.value(p.rhs))}}
        return out, EXIT_OK if member else EXIT_NON_MEMBER
    if args.cmd == "chain":
        chain, seps = prime_chain(spec)
        return {"chain": [spec_to_json(s) for s in chain],
                "separators": [pair_to_json(p, False) for p in seps]}, EXIT_OK
    if args.cmd == "dim":
        return {"dimension": dimension(spec)}, EXIT_OK
    return {"minimal": is_minimal(spec)}, EXIT_OK


def cmd_rad(args, doc, cfg):
    ctx = _context(doc, args)
    p = pair_from_json(_need(doc, "pair"), ctx)
    if args.cmd == "trivial":
        return _export(rad_trivial_member(p))
    if args.cmd == "member":
        E = presentation_from_json(doc, ctx)
        v = rad_member_fg(E, p, args.k_bound or cfg.k_bound, cfg.jobs)
        if v.witness is not None:
            assert check_separating_prime(E, p, v.witness)
        return _export(v)
    if args.cmd == "witness-search":
        res = gp_witness_search(p, args.bound or cfg.gp_search_bound,
                                min_lpow=int(doc.get("min_lpow", 0)))
        if isinstance(res, NotFoundWithinBounds):
            return {"found": False, "tried": res.tried}, EXIT_UNKNOWN
        return {"found": True, "witness": witness_to_json(res)}, EXIT_OK
    if args.cmd == "witness-verify":
        w = witness_from_json(_need(doc, "witness"), ctx)
        ok = gp_witness_verify(p, w)
        return {"verified": ok}, EXIT_OK if ok else EXIT_NON_MEMBER
    h = poly_from_json(doc.get("h", "0"), ctx)
    w = gp_witness_normalize(p, int(_need(doc, "i")), int(_need(doc, "j")), h)
    return {"witness": witness_to_json(w), "verified": gp_witness_verify(p, w)}, EXIT_OK


def cmd_null(args, doc, cfg):
    ctx = _context(doc, args)
    p = pair_from_json(_need(doc, "pair"), ctx)
    E = presentation_from_json(doc, ctx)
    kb = args.k_bound or cfg.k_bound
    if args.cmd == "member":
        v = null_member(E, p, kb)
        if v.witness is not None:
            assert check_separation_point(E, p, v.witness)
        return _export(v)
    eps = parse_scalar(doc.get("epsilon", args.epsilon or cfg.epsilon), ctx.tag)
    v = eplus_member(E, p, eps, kb, cfg.jobs)
    return _export(v)


def cmd_collapse(args, doc, cfg):
    ctx = _context(doc, args)
    spec = spec_from_json(_need(doc, "spec"), ctx)
    pairs = [pair_from_json(q, ctx) for q in doc.get("pairs", [])]
    one_row, w = collapse_weights(spec, pairs)
    agree = all(prime_member(spec, q) == prime_member(one_row, q) for q in pairs)
    return {"weights": [rat_str(v) for v in w], "spec": spec_to_json(one_row),
            "agrees": agree}, EXIT_OK


def cmd_finlab(args, doc, cfg):
    if "fixture" in doc:
        name = doc["fixture"]
        if name not in FIXTURE_NAMES:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
        A = load_fixture(name)
    else:
        A = algebra_from_json(doc)
    return analyze(A), EXIT_OK


def cmd_check(args, doc, cfg):
    """Seeded random cross-checks of the dual deciders."""
    from .randgen import random_pair, random_presentation, random_radical_pair
    from .pairalg import CongPresentation
    from .semifield import Scalar

    rng = random.Random(cfg.seed if args.seed is None else args.seed)
    count = int(doc.get("count", 20))
    bad = 0
    if args.cmd == "rad":
        ctx = _context({"k": 2, **doc}, args)
        for i in range(count):
            p = random_radical_pair(rng, ctx) if i % 2 else random_pair(rng, ctx)
            a = rad_trivial_member(p)
            b = rad_member_fg(CongPresentation(ctx, ()), p, cfg.k_bound)
            bad += a.member != b.member
    else:
        ctx = _context({"k": 2, "semifield": "TQ", **doc}, args)
        for _ in range(count):
            E = random_presentation(rng, ctx)
            p = random_pair(rng, ctx, 3, 2)
            a = null_member(E, p, cfg.k_bound)
            b = eplus_member(E, p, Scalar(ctx.tag, 1), cfg.k_bound)
            bad += a.member != b.member
    return {"instances": count, "disagreements": bad}, EXIT_OK if not bad else EXIT_NON_MEMBER


COMMANDS = {
    "poly": (cmd_poly, ["add", "mul", "eval"]),
    "pair": (cmd_pair, ["twist", "star", "gp", "closure"]),
    "newt": (cmd_newt, ["compute", "eq", "hat", "svg"]),
    "prime": (cmd_prime, ["validate", "member", "chain", "canon", "dim", "minimal"]),
    "rad": (cmd_rad, ["trivial", "member", "witness-search", "witness-verify",
                      "witness-normalize"]),
    "null": (cmd_null, ["member", "eplus"]),
    "collapse": (cmd_collapse, None),
    "finlab": (cmd_finlab, ["analyze"]),
    "check": (cmd_check, ["rad", "null"]),
}


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("input", nargs="?", default="-", help="JSON input file (default stdin)")
    p.add_argument("--semifield", choices=["B", "Zmax", "TQ"], default=None)
    p.add_argument("--laurent", action="store_true", default=None)
    p.add_argument("--k", type=int, default=None, help="number of variables")
    p.add_argument("--k-bound", type=int, default=None, help="largest k for decision procedures")
    p.add_argument("--bound", type=int, default=None,
                   help="closure degree bound or witness search bound")
    p.add_argument("--epsilon", default=None, help="epsilon literal such as t^1")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--svg-out", default=None, metavar="PATH")
    p.add_argument("--config", default=None, metavar="PATH", help="JSON config file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="tropcong", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"tropcong {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)
    for name, (_, cmds) in COMMANDS.items():
        if cmds is None:
            groups.add_parser(name, parents=[common])
            continue
        g = groups.add_parser(name)
        sub = g.add_subparsers(dest="cmd", required=True)
        for c in cmds:
            sub.add_parser(c, parents=[common])
    return parser


def _setup_logging():
    level = os.environ.get("TROPCONG_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def run(argv, stdin=None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code == 0 else EXIT_INPUT
    args.cmd = getattr(args, "cmd", None)
    args.k_bound = getattr(args, "k_bound", None)
    try:
        cfg = load_config(args.config) if args.config else Config()
        overrides = {k: v for k, v in (("jobs", args.jobs), ("seed", args.seed),
                                       ("epsilon", args.epsilon), ("k_bound", args.k_bound))
                     if v is not None}
        cfg = replace(cfg, **overrides)
        doc = _read_input(args.input, stdin)
        handler = COMMANDS[args.group][0]
        payload, code = handler(args, doc, cfg)
    except JsonInputError as err:
        stderr.write(_dump({"error": str(err), "line": err.line, "column": err.column,
                            "position": err.pos}))
        return EXIT_INPUT
    except InputError as err:
        stderr.write(_dump({"error": str(err)}))
        return EXIT_INPUT
    except ResourceError as err:
        stderr.write(_dump({"error": str(err)}))
        return EXIT_RESOURCE
    stdout.write(payload if isinstance(payload, str) else _dump(payload))
    return code


def main(argv=None) -> int:
    _setup_logging()
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
