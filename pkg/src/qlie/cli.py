"""``qlie`` command line: JSON on stdout, exit codes 0 ok, 1 check failed, 2 bad input, 3 resource bound."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path
from typing import Sequence

from . import __version__
from .cartan import RootPartition, build_graph, decode_root, encode_root, root_partitions, root_system
from .cocycle import Orientation, reference_orientation
from .errors import InputError, QlieError, ResourceError, ValidationError

TABLE_ALIASES = {"d4": "D4-thetamax", "d5": "D5-thetamax"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _root(args, rs, text=None):
    text = text if text is not None else args.root
    if text is None:
        raise InputError("--root is required")
    if text == "highest":
        if rs.kind != "finite":
            raise InputError("'highest' needs a finite type")
        return rs.highest_root
    r = decode_root(text, rs.rank)
    if rs.kind == "finite" and not rs.is_positive_root(r) and not rs.is_root(r):
        raise InputError(f"{text} is not a root of {rs.graph.label}")
    return r


def _orientation(args, graph) -> Orientation:
    return Orientation.parse(graph, args.orientation) if args.orientation else reference_orientation(graph)


def _graph(args):
    if not args.type:
        raise InputError("--type is required")
    return build_graph(args.type)


# ---------------------------------------------------------------- verbs
def cmd_roots(args):
    g = _graph(args)
    rs = root_system(g)
    if rs.kind == "finite":
        roots = rs.positive_roots
    else:
        roots = rs.roots_up_to_degree(args.cutoff if args.cutoff is not None else 1)
    return {"type": g.label, "vertices": list(g.vertices), "count": len(roots),
            "roots": [encode_root(r) for r in roots]}, True


def cmd_partitions(args):
    g = _graph(args)
    rs = root_system(g)
    alpha = _root(args, rs)
    parts = root_partitions(alpha, rs)
    out = {"type": g.label, "root": encode_root(alpha), "count": len(parts)}
    if not args.count:
        out["partitions"] = [p.key() for p in parts]
    return out, True


def cmd_epsilon(args):
    g = _graph(args)
    rs = root_system(g)
    o = _orientation(args, g)
    a = _root(args, rs)
    if args.beta is None:
        raise InputError("--beta is required")
    b = _root(args, rs, args.beta)
    return {"type": g.label, "orientation": str(o), "alpha": encode_root(a), "beta": encode_root(b),
            "euler_form": o.euler_form(a, b), "epsilon": o.epsilon(a, b),
            "epsilon_reverse": o.epsilon(b, a), "pairing": rs.pairing(a, b)}, True


def cmd_bracket(args):
    from .lie import AffineLieAlgebra, build_full_g, parse_element

    g = _graph(args)
    rs = root_system(g)
    o = _orientation(args, g)
    if args.x is None or args.y is None:
        raise InputError("--x and --y are required")
    x, y = parse_element(args.x), parse_element(args.y)
    alg = build_full_g(rs, o) if rs.kind == "finite" else AffineLieAlgebra(rs, o, mixed=args.mixed)
    z = alg.bracket(x, y)
    return {"type": g.label, "orientation": str(o), "x": str(x), "y": str(y), "result": str(z)}, True


def cmd_hall(args):
    from .hall import counts_for, hall_polynomials, verify_bracket_E

    g = _graph(args)
    rs = root_system(g)
    if rs.kind != "finite":
        raise InputError("Hall algebras are implemented for finite types only")
    o = _orientation(args, g)
    out = {"type": g.label, "orientation": str(o)}
    if args.N is not None or args.P is not None:
        if args.N is None or args.P is None:
            raise InputError("--N and --P go together")
        N, P = (RootPartition.from_key(k, rs.rank) for k in (args.N, args.P))
        out.update(N=N.key(), P=P.key())
        if args.q is not None:
            counts = counts_for(o, N, P, args.q)
            out["q"] = args.q
            out["terms"] = [{"M": M.key(), "count": c} for M, c in sorted(counts.items(), key=lambda t: t[0].key()) if c]
        else:
            polys = hall_polynomials(o, N, P)
            out["terms"] = [{"M": M.key(), "coeffs": list(p.coeffs), "at_one": p(1)}
                            for M, p in sorted(polys.items(), key=lambda t: t[0].key())]
        return out, True
    a = _root(args, rs)
    if args.beta is None:
        raise InputError("give --N/--P for a product or --root/--beta for a bracket check")
    b = _root(args, rs, args.beta)
    rep = verify_bracket_E(a, b, o)
    out.update(alpha=encode_root(a), beta=encode_root(b), epsilon=rep.epsilon,
               commutator=str(rep.lhs), expected=str(rep.rhs), ok=rep.ok)
    return out, rep.ok


def cmd_stability(args):
    from .stability import stability_lemma_harness

    g = _graph(args)
    rs = root_system(g)
    o = _orientation(args, g)
    alpha = _root(args, rs)
    qs = (args.q,) if args.q is not None else (2, 3)
    rep = stability_lemma_harness(g.label, alpha, o, qs=qs)
    return {"type": g.label, "root": encode_root(alpha), "orientation": str(o), "qs": list(qs),
            "lines": rep.lines(), "disagreements": rep.disagreements, "ok": rep.ok}, rep.ok


def cmd_coeffs(args):
    from .semican import decompose_E_star

    g = _graph(args)
    rs = root_system(g)
    alpha = _root(args, rs)
    t = decompose_E_star(alpha, g.label, normalize=args.normalize)
    out = t.as_dict()
    out["normalize"] = args.normalize
    return out, True


def cmd_validate(args):
    from .hall import CACHE_FILE, default_cache_dir, validate_cache_file
    from .semican import CASES, validate_case

    reports = []
    ok = True
    cases = []
    if not (args.tables or args.table_file or args.cache_dir):
        args.tables = ",".join(TABLE_ALIASES)
    if args.tables:
        for name in args.tables.split(","):
            name = name.strip()
            case = TABLE_ALIASES.get(name.lower(), name)
            if case not in CASES:
                raise InputError(f"unknown table {name!r}; choose from {sorted(TABLE_ALIASES)}")
            cases.append((case, None))
    if args.table_file:
        p = Path(args.table_file)
        if not p.exists():
            raise InputError(f"no such file {p}")
        text = p.read_text(encoding="utf-8")
        case = _case_of(text)
        cases.append((case, text))
    for case, text in cases:
        rep = validate_case(case, text)
        ok &= rep.ok
        reports.append({"name": case, "ok": rep.ok, "lines": rep.lines()})
    if args.cache_dir or not args.table_file:
        d = default_cache_dir()
        path = Path(d) / CACHE_FILE if d else None
        if path is not None and path.exists():
            problems = validate_cache_file(path)
            lines = [f"cache;line {i};fail;{p}" for i, p in problems] or ["cache;records;pass;"]
            ok &= not problems
            reports.append({"name": "hall-cache", "ok": not problems, "lines": lines})
        else:
            reports.append({"name": "hall-cache", "ok": True, "lines": ["cache;records;pass;no cache file"]})
    return {"reports": reports, "ok": ok}, ok


def _case_of(text: str) -> str:
    from .semican import CASES

    for line in text.splitlines()[:6]:
        if line.startswith("# type:"):
            t = line.split(":", 1)[1].strip()
            case = f"{t}-thetamax"
            if case in CASES:
                return case
    raise InputError("table file has no recognised '# type:' header")


def cmd_bps_audit(args):
    from .bps import conjecture_algebra_checks, multiplicity_audit

    g = _graph(args)
    cutoff = args.cutoff if args.cutoff is not None else 2
    o = _orientation(args, g)
    audit = multiplicity_audit(g, cutoff, o)
    conj = conjecture_algebra_checks(g, min(max(cutoff, 1), 4), orientation=o)
    ok = audit.ok and conj.ok
    return {"type": g.label, "cutoff": cutoff, "orientation": str(o), "audit": audit.lines(),
            "checks": conj.lines(), "ok": ok}, ok


def cmd_selfcheck(args):
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    echo = None if args.quiet or not args.pretty else print
    results = run_all(only, echo=echo)
    ok = all(r.ok and r.within_budget for r in results)
    return {"criteria": [{"number": r.number, "name": r.name, "ok": r.ok, "detail": r.detail,
                          "within_budget": r.within_budget} for r in results], "ok": ok}, ok


VERBS = {
    "roots": cmd_roots, "partitions": cmd_partitions, "epsilon": cmd_epsilon, "bracket": cmd_bracket,
    "hall": cmd_hall, "stability": cmd_stability, "coeffs": cmd_coeffs, "validate": cmd_validate,
    "bps-audit": cmd_bps_audit, "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--quiet", action="store_true", help="no output, exit code only")
    common.add_argument("--cache-dir", help="Hall cache directory (overrides QLIE_CACHE)")
    p = _Parser(prog="qlie", description=__doc__)
    p.add_argument("--version", action="version", version=f"qlie {__version__}")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    specs = {
        "roots": ["type", "cutoff"],
        "partitions": ["type", "root", "count"],
        "epsilon": ["type", "root", "beta", "orientation"],
        "bracket": ["type", "orientation", "x", "y", "mixed"],
        "hall": ["type", "orientation", "root", "beta", "N", "P", "q"],
        "stability": ["type", "root", "orientation", "q"],
        "coeffs": ["type", "root", "normalize"],
        "validate": ["tables", "table_file"],
        "bps-audit": ["type", "cutoff", "orientation"],
        "selfcheck": ["only"],
    }
    opts = {
        "type": dict(help="Dynkin type, e.g. A3, D5, A~2, D~4"),
        "root": dict(help="root coordinates in vertex order, or 'highest'"),
        "beta": dict(help="second root"),
        "orientation": dict(help="arrows 'i>j,...'; default points towards larger labels"),
        "cutoff": dict(type=int, help="delta-degree cutoff for affine types"),
        "count": dict(action="store_true", help="print only the number of partitions"),
        "x": dict(help="Lie element, e.g. '1*e[1,0]'"),
        "y": dict(help="Lie element"),
        "mixed": dict(choices=("cocycle", "plain"), default="cocycle", help="affine mixed bracket convention"),
        "N": dict(help="quotient class (partition key)"),
        "P": dict(help="sub class (partition key)"),
        "q": dict(type=int, help="field size"),
        "normalize": dict(choices=("reference", "none"), default="reference"),
        "tables": dict(help="comma-separated shipped tables: d4,d5"),
        "table_file": dict(help="validate a table file instead of the shipped copy"),
        "only": dict(help="comma-separated criterion numbers"),
    }
    for verb, names in specs.items():
        sp = sub.add_parser(verb, parents=[common])
        for n in names:
            sp.add_argument("--" + n.replace("_", "-"), dest=n, **opts[n])
    return p


def render_pretty(verb: str, out: dict) -> str:
    lines = []
    for k, v in out.items():
        if isinstance(v, list):
            lines.append(f"{k}:")
            for item in v:
                if isinstance(item, dict):
                    if "lines" in item:
                        lines.append(f"  {item.get('name', '')} ({'pass' if item.get('ok') else 'fail'})")
                        lines += [f"    {x}" for x in item["lines"]]
                    else:
                        lines.append("  " + "  ".join(f"{a}={b}" for a, b in item.items()))
                else:
                    lines.append(f"  {item}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    if args.verb is None:
        raise InputError("a verb is required: " + ", ".join(VERBS))
    if args.cache_dir:
        os.environ["QLIE_CACHE"] = args.cache_dir
    out, ok = VERBS[args.verb](args)
    out = {"verb": args.verb, "ok": bool(out.pop("ok", ok)), **out}
    return (0 if ok else 1), out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    quiet = "--quiet" in argv
    pretty = "--pretty" in argv
    saved = os.environ.get("QLIE_CACHE")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            code, out = run(argv)
    except InputError as e:
        code, out = 2, {"ok": False, "error": "input", "message": str(e)}
    except ResourceError as e:
        code, out = 3, {"ok": False, "error": "resource", "message": str(e)}
    except ValidationError as e:
        code, out = 1, {"ok": False, "error": "validation", "message": str(e)}
    except QlieError as e:
        code, out = e.exit_code, {"ok": False, "error": "internal", "message": str(e)}
    finally:
        if "--cache-dir" in argv:
            from . import hall
            hall._CACHES.clear()
            if saved is None:
                os.environ.pop("QLIE_CACHE", None)
            else:
                os.environ["QLIE_CACHE"] = saved
    if not quiet:
        if pretty:
            print(render_pretty(out.get("verb", ""), out))
        else:
            print(json.dumps(out, sort_keys=True))
    if code and not quiet and "message" in out:
        print(f"qlie: {out['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
