"""Command-line interface: validate / analyze / semigroup / theta / algebra /
example subcommands over JSON instance documents.

Exit codes: 0 when every reported check holds, 2 when any fails, 3 when any
is undecided, and 1 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .analysis import analyze
from .docs import (
    document_digest,
    emit_document,
    example_document,
    load_system,
    parse_set_expr,
)
from .errors import SSUError
from .filters import FiniteTypeFilter, PathFilter, PrincipalFilter, TailFilter, theta_apply
from .intset import NEG, POS
from .semigroup import ZERO, invert, make, multiply
from .span import CrossedMonomial, crossed_product, crossed_star, span_product, star
from .ultragraph import (
    OMEGA,
    VertexSet,
    eval_source_expr,
    make_lasso,
    make_path,
    path_edges,
    vertex_name,
)
from .verdicts import Bounds, UNKNOWN


# ---------------------------------------------------------------------------
# term notation
# ---------------------------------------------------------------------------

def parse_path(system, text):
    text = text.strip()
    if text in ("w", ""):
        return OMEGA
    return make_path(system.graph, [p.strip() for p in text.split(".")])


def format_path(p):
    edges = path_edges(p)
    return "w" if not edges else ".".join(e.id for e in edges)


def parse_vertex_set(system, text):
    text = text.strip()
    universe = system.graph.universe
    if text.startswith("{") and text.endswith("}"):
        if system.graph.indexed:
            vs = []
            for item in text[1:-1].split(","):
                fam, _, rest = item.strip().partition("[")
                vs.append((fam, int(rest[:-1])))
            return VertexSet.of(universe, vs)
        return VertexSet.of(
            universe, tuple(v.strip() for v in text[1:-1].split(","))
        )
    # set-expression grammar with absolute indices (evaluated at i = 0)
    return eval_source_expr(universe, parse_set_expr(text), 0)


def format_vertex_set(aset):
    if not aset.parts:
        return "{}"
    if not aset.universe.__class__.__name__.startswith("IntIndexed"):
        return "{" + ", ".join(sorted(aset.parts)) + "}"
    items = []
    for fam, s in aset.parts:
        for lo, hi in s.intervals:
            if lo is None:
                items.append(f"LTAIL({fam}, {hi})")
            elif hi is None:
                items.append(f"TAIL({fam}, {lo - 1})")
            else:
                inner = ", ".join(f"{fam}[{i}]" for i in range(lo, hi + 1))
                items.append("FIN{" + inner + "}")
    return items[0] if len(items) == 1 else "UNION(" + ", ".join(items) + ")"


def parse_group_element(system, text):
    text = text.strip()
    from .groups import IntGroup

    if isinstance(system.group, IntGroup):
        return int(text)
    if text not in system.group.elements:
        raise SSUError(f"unknown group element {text!r}")
    return text


def parse_term(system, text):
    """A quadruple term: (alpha; A; g; beta)."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise SSUError(f"bad term {text!r}: expected (alpha; A; g; beta)")
    parts = text[1:-1].split(";")
    if len(parts) != 4:
        raise SSUError(f"bad term {text!r}: expected four ;-separated fields")
    return make(
        system,
        parse_path(system, parts[0]),
        parse_vertex_set(system, parts[1]),
        parse_group_element(system, parts[2]),
        parse_path(system, parts[3]),
    )


def format_term(s):
    if s is ZERO:
        return "0"
    return (
        f"({format_path(s.alpha)}; {format_vertex_set(s.aset)}; "
        f"{s.g}; {format_path(s.beta)})"
    )


_FACTOR_RE = re.compile(
    r"\s*(?:(?P<term>\([^()]*\))(?P<inv>\s*\^-1)?"
    r"|(?P<delta>delta\[(?P<tag>[^\]]+)\])"
    r"|(?P<rat>-?\d+(?:/\d+)?))\s*"
)


def eval_semigroup_expr(system, text):
    """Products of quadruple terms with ^-1, combined with *."""
    factors = [f.strip() for f in _split_top(text, "*")]
    acc = None
    for f in factors:
        inv = False
        while f.endswith("^-1"):
            inv = not inv
            f = f[: -3].strip()
        if f == "0":
            elem = ZERO
        else:
            elem = parse_term(system, f)
        if inv:
            elem = invert(system, elem)
        acc = elem if acc is None else multiply(system, acc, elem)
    if acc is None:
        raise SSUError("empty expression")
    return acc


def _split_top(text, sep):
    """Split on a separator outside (), {}, [] nesting."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


# ---------------------------------------------------------------------------
# algebra expressions: sums of scalar-weighted monomial products
# ---------------------------------------------------------------------------

def eval_algebra_expr(system, text):
    """Sums (+) of products (*) of rationals, quadruples (with ^-1), and
    delta[g] tags.  A product containing delta tags evaluates in the
    crossed-product form; otherwise in the plain span."""
    total = None
    for term_text in _split_top(text, "+"):
        value = _eval_algebra_term(system, term_text)
        if total is None:
            total = value
        else:
            kind1, span1 = total
            kind2, span2 = value
            if kind1 != kind2:
                raise SSUError("cannot add plain and delta-tagged terms")
            out = dict(span1)
            for m, c in span2.items():
                out[m] = out.get(m, Fraction(0)) + c
            total = (kind1, {m: c for m, c in out.items() if c != 0})
    if total is None:
        raise SSUError("empty expression")
    return total


def _tag_span(system, span, tag):
    crossed = {}
    for mono, c in span.items():
        if mono.g != system.identity:
            raise SSUError("delta tags apply to identity-part quadruples only")
        crossed[CrossedMonomial(mono, tag)] = c
    return crossed


def _eval_algebra_term(system, text):
    """A product: pending quadruple factors fold into a plain span; each
    delta[g] closes the pending span into a tagged crossed-product factor."""
    coeff = Fraction(1)
    pending = None  # untagged span being accumulated
    crossed = None  # crossed-product accumulator
    for raw in _split_top(text, "*"):
        raw = raw.strip()
        if not raw:
            raise SSUError("empty factor")
        inv = False
        while raw.endswith("^-1"):
            inv = not inv
            raw = raw[: -3].strip()
        m = _FACTOR_RE.fullmatch(raw)
        if not m:
            raise SSUError(f"bad factor {raw!r}")
        if m.group("rat"):
            c = Fraction(m.group("rat"))
            coeff *= (1 / c) if inv else c
            continue
        if m.group("delta"):
            if inv:
                raise SSUError("invert delta-tagged products with *, not ^-1")
            tag = parse_group_element(system, m.group("tag"))
            if pending is None:
                raise SSUError("delta[g] must follow a quadruple product")
            factor = _tag_span(system, pending, tag)
            crossed = factor if crossed is None else crossed_product(
                system, crossed, factor
            )
            pending = None
            continue
        elem = parse_term(system, m.group("term"))
        if inv:
            elem = invert(system, elem)
        factor = {elem: Fraction(1)}
        pending = factor if pending is None else span_product(
            system, pending, factor
        )
    if crossed is None:
        if pending is None:
            raise SSUError(f"no monomial in term {text!r}")
        value = ("span", pending)
    else:
        if pending is not None:
            # a trailing untagged group carries the identity tag
            crossed = crossed_product(
                system, crossed, _tag_span(system, pending, system.identity)
            )
        value = ("crossed", crossed)
    kind, span = value
    return (kind, {m: c * coeff for m, c in span.items()} if coeff != 1 else span)


def format_algebra_value(value):
    kind, span = value
    if not span:
        return "0"
    terms = []
    if kind == "span":
        keyed = sorted(span.items(), key=lambda kv: kv[0].sort_key())
        for m, c in keyed:
            head = "" if c == 1 else f"{c} * "
            terms.append(head + format_term(m))
    else:
        keyed = sorted(
            span.items(), key=lambda kv: (kv[0].ck.sort_key(), str(kv[0].g))
        )
        for m, c in keyed:
            head = "" if c == 1 else f"{c} * "
            terms.append(head + format_term(m.ck) + f" * delta[{m.g}]")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# filter notation
# ---------------------------------------------------------------------------

def parse_filter(system, text):
    kind, _, rest = text.partition(":")
    if kind == "lasso":
        pre_text, _, cyc_text = rest.partition("/")
        prefix = path_edges(parse_path(system, pre_text))
        cycle = path_edges(parse_path(system, cyc_text))
        return PathFilter(make_lasso(prefix, cycle))
    if kind == "finite":
        alpha_text, _, sets_text = rest.partition("/")
        alpha = parse_path(system, alpha_text)
        gens = [
            parse_vertex_set(system, s) for s in _split_top(sets_text, ",") if s.strip()
        ]
        return FiniteTypeFilter(alpha, PrincipalFilter.of(gens))
    if kind == "tail":
        alpha_text, _, spec = rest.partition("/")
        alpha = parse_path(system, alpha_text)
        fam, _, direction = spec.partition(":")
        if direction not in (POS, NEG):
            raise SSUError(f"tail direction must be {POS!r} or {NEG!r}")
        return FiniteTypeFilter(alpha, TailFilter(fam.strip(), direction))
    raise SSUError(f"unknown filter notation {text!r} (lasso:/finite:/tail:)")


def format_filter(F):
    if F is UNKNOWN:
        return "unknown"
    if isinstance(F, PathFilter):
        pre = ".".join(e.id for e in F.x.prefix)
        cyc = ".".join(e.id for e in F.x.cycle)
        return f"lasso:{pre}/{cyc}"
    alpha = format_path(F.alpha)
    if isinstance(F.bfilter, TailFilter):
        return f"tail:{alpha}/{F.bfilter.family}:{F.bfilter.direction}"
    sets = ", ".join(format_vertex_set(g) for g in F.bfilter.gens)
    return f"finite:{alpha}/{sets}"


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _parse_bounds(text):
    if not text:
        return Bounds()
    kwargs = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("max_path_len", "group_ball_radius", "lasso_bound",
                       "state_bound"):
            raise SSUError(f"unknown bound {key!r}")
        kwargs[key] = int(value)
    return Bounds(**kwargs)


def _read_document(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _exit_code(checks):
    statuses = [v["status"] for v in checks.values()]
    if any(s == "fails" for s in statuses):
        return 2
    if any(s == "unknown" for s in statuses):
        return 3
    return 0


def _print_report(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for name, verdict in sorted(report["checks"].items()):
        line = f"{name}: {verdict['status']}"
        if verdict.get("note"):
            line += f" ({verdict['note']})"
        print(line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args):
    doc = _read_document(args.doc)
    system = load_system(doc)
    verdict = system.validate()
    report = {
        "tool": f"ssu {__version__}",
        "name": system.name,
        "digest": document_digest(doc),
        "checks": {"validate": verdict.to_json()},
    }
    _print_report(report, args.json)
    return _exit_code(report["checks"])


def _cmd_analyze(args):
    doc = _read_document(args.doc)
    system = load_system(doc)
    bounds = _parse_bounds(args.bounds)
    started = time.monotonic()
    results = analyze(system, bounds)
    report = {
        "tool": f"ssu {__version__}",
        "name": system.name,
        "digest": document_digest(doc),
        "bounds": bounds.to_json(),
        "checks": {k: v.to_json() for k, v in results.items()},
        "elapsed_s": round(time.monotonic() - started, 3),
    }
    _print_report(report, args.json)
    return _exit_code(report["checks"])


def _cmd_semigroup(args):
    system = load_system(_read_document(args.doc))
    result = eval_semigroup_expr(system, args.expr)
    print(format_term(result))
    return 0


def _cmd_theta(args):
    system = load_system(_read_document(args.doc))
    elem = parse_term(system, args.elem)
    F = parse_filter(system, args.filter)
    bounds = _parse_bounds(args.bounds)
    image = theta_apply(system, elem, F, bounds.state_bound)
    print(format_filter(image))
    return 3 if image is UNKNOWN else 0


def _cmd_algebra(args):
    system = load_system(_read_document(args.doc))
    value = eval_algebra_expr(system, args.expr)
    if args.star:
        kind, span = value
        if kind == "span":
            value = (kind, star(system, span))
        else:
            value = (kind, crossed_star(system, span))
    print(format_algebra_value(value))
    return 0


def _cmd_example(args):
    doc = example_document(args.name)
    text = emit_document(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ssu",
        description="Symbolic toolkit for self-similar ultragraph systems.",
    )
    parser.add_argument("--version", action="version",
                        version=f"ssu {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_bounds=True):
        p.add_argument("doc", help="instance document path, or - for stdin")
        p.add_argument("--json", action="store_true", help="JSON report")
        if with_bounds:
            p.add_argument("--bounds", default="",
                           help="comma-separated k=v search bounds")
        p.add_argument("--threads", type=int, default=1,
                       help="worker hint; output is identical for any value")

    p = sub.add_parser("validate", help="check structural and system laws")
    add_common(p, with_bounds=False)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="run the condition checkers")
    add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("semigroup", help="evaluate a semigroup expression")
    add_common(p)
    p.add_argument("expr", help="e.g. \"(e; {v}; 1; w) * (w; {v,w}; 0; f)^-1\"")
    p.set_defaults(func=_cmd_semigroup)

    p = sub.add_parser("theta", help="apply the partial filter action")
    add_common(p)
    p.add_argument("--elem", required=True, help="quadruple term")
    p.add_argument("--filter", required=True,
                   help="lasso:prefix/cycle | finite:alpha/sets | tail:alpha/fam:dir")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("algebra", help="evaluate a span-algebra expression")
    add_common(p)
    p.add_argument("expr", help="sums/products of terms, rationals, delta[g]")
    p.add_argument("--star", action="store_true", help="apply the involution")
    p.set_defaults(func=_cmd_algebra)

    p = sub.add_parser("example", help="emit a bundled instance document")
    p.add_argument("name", help="ex5.1 | ex5.2 | ex5.3-trivial | ex5.3(t0,t1)")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_example)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; remap to the 1 contract
        if exc.code not in (0, None):
            return 1
        return 0
    try:
        return args.func(args)
    except (SSUError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
