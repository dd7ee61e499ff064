"""Command-line front end.

Every subcommand prints one JSON document (or a text table with
``--format table``) to stdout.  Exit status is 0 on success, 2 on usage
errors and 1 on computation errors, which are reported as JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import __version__
from .diagram import Diagram, braid_closure, parse_pd, to_json, to_pd
from .errors import StateCycleError
from .families import (
    EntwineSpec,
    alpha_k,
    entwine,
    expand_family,
    predicted_deltas,
)
from .homology import DEFAULT_MAX_CROSSINGS, build_complex, homology_ranks, is_boundary
from .jones import format_poly, jones_bracket
from .resolution import EnhancedState, bigrading, resolve
from .statecycle import (
    certify,
    classify,
    cycle_markings,
    enumerate_certified,
    width_lower_bound,
)
from .stategraph import FULL, ONE_BLOCK, ONE_TRACING, build_graph, diagram_adequacy, evenness, state_flags
from .tables import BUILTINS, builtin

ERROR_SCHEMA = "statecycle.error/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", help="PD text, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'")
    g.add_argument("--file", help="file holding PD text or JSON")
    g.add_argument("--builtin", help="name of a bundled diagram")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="statecycle", description="State-cycle certificates for Khovanov homology.")
    parser.add_argument("--version", action="version", version=f"statecycle {__version__}")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    # --format is accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("parse", help="validate a diagram and print its canonical form")
    _add_input(p)

    p = sub.add_parser("resolve", help="smooth every crossing and list loops and traces")
    _add_input(p)
    p.add_argument("--smoothing", default="all0", help="bits, all0, all1 or seifert")

    p = sub.add_parser("flags", help="adequacy and evenness flags of a state")
    _add_input(p)
    p.add_argument("--smoothing", default="all0")

    p = sub.add_parser("certify", help="certify a state cycle")
    _add_input(p)
    p.add_argument("--smoothing", default="all0")
    p.add_argument("--marks", default="auto", help="loop marks (1 = v-) or auto")

    p = sub.add_parser("enumerate", help="search smoothings for certified state cycles")
    _add_input(p)
    p.add_argument("--budget", type=_positive, default=4096, help="number of smoothings to visit")

    p = sub.add_parser("homology", help="rational Khovanov homology ranks")
    _add_input(p)
    p.add_argument("--max-crossings", type=_positive, default=DEFAULT_MAX_CROSSINGS)
    p.add_argument("--method", choices=("exact", "modp"), default="exact")

    p = sub.add_parser("jones", help="unnormalized Jones polynomial from the bracket")
    _add_input(p)
    p.add_argument("--max-crossings", type=_positive, default=20)

    p = sub.add_parser("family", help="generate an entwined family member")
    p.add_argument("--base", required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--copies", type=_nonnegative, default=1)
    p.add_argument("--expand-twists", action="store_true")

    p = sub.add_parser("selftest", help="check certificates against the homology oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=_nonnegative, default=20, help="random braid closures to add")
    p.add_argument("--max-crossings", type=_positive, default=8)
    return parser


def _load(args) -> Diagram:
    if args.builtin is not None:
        return builtin(args.builtin)
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        return parse_pd(text, name=args.file)
    return parse_pd(args.pd)


def _state_json(d: Diagram, smoothing) -> dict:
    st = resolve(d, smoothing)
    return st.to_json()


def cmd_parse(args) -> tuple[dict, str]:
    d = _load(args)
    out = to_json(d)
    out["pd"] = to_pd(d)
    return out, to_pd(d) + "\n"


def cmd_resolve(args):
    d = _load(args)
    out = _state_json(d, args.smoothing)
    lines = [f"{len(out['loops'])} loops"]
    lines += [f"  loop {i}: {' '.join(map(str, arcs))}" for i, arcs in enumerate(out["loops"])]
    return out, "\n".join(lines) + "\n"


def cmd_flags(args):
    d = _load(args)
    st = resolve(d, args.smoothing)
    flags = state_flags(st).to_json()
    graphs = {}
    for kind in (FULL, ONE_BLOCK, ONE_TRACING):
        rep = evenness(build_graph(st, kind))
        graphs[kind] = {
            "even": rep.even,
            "coloring": None if rep.coloring is None else {str(k): v for k, v in sorted(rep.coloring.items())},
            "witness": None if rep.witness is None else [list(e) for e in rep.witness],
        }
    out = {
        "schema": "statecycle.flags/1",
        "smoothing": st.bitstring(),
        "flags": flags,
        "diagram_adequacy": diagram_adequacy(d),
        "graphs": graphs,
    }
    text = "\n".join(f"{k}: {v}" for k, v in flags.items()) + "\n"
    return out, text


def _parse_marks(st, text: str) -> EnhancedState:
    text = text.strip()
    if not set(text) <= {"0", "1"}:
        raise UsageError(f"bad marks {text!r}")
    return EnhancedState(st, tuple(int(ch) for ch in text))


def cmd_certify(args):
    d = _load(args)
    st = resolve(d, args.smoothing)
    if args.marks == "auto":
        candidates = [a for a in cycle_markings(st) if classify(a).passed]
    else:
        candidates = [_parse_marks(st, args.marks)]
    classes: dict[tuple, dict] = {}
    for a in candidates:
        cert = certify(a, d)
        if cert is None:
            continue
        key = (cert.theorem, cert.bigrading.as_tuple())
        if key not in classes:
            entry = cert.to_json()
            entry["equivalent_marks"] = []
            classes[key] = entry
        else:
            classes[key]["equivalent_marks"].append(cert.marks)
    certs = list(classes.values())
    out = {
        "schema": "statecycle.certify/1",
        "smoothing": st.bitstring(),
        "status": "certified" if certs else "unknown",
        "certificates": certs,
    }
    lines = [f"{c['theorem']} marks={c['marks']} (t,q)=({c['t']},{c['q']}) delta={c['delta']}" for c in certs]
    return out, ("\n".join(lines) or "no certificate (unknown)") + "\n"


def cmd_enumerate(args):
    d = _load(args)
    found = enumerate_certified(d, args.budget)
    certs = [c for _, c in found]
    out = {
        "schema": "statecycle.enumerate/1",
        "budget": args.budget,
        "certificates": [c.to_json() for c in certs],
        "delta_values": sorted({c.delta for c in certs}),
        "width_lower_bound": width_lower_bound(certs),
    }
    lines = [f"{c.theorem} {c.smoothing} {c.marks} delta={c.delta}" for c in certs]
    lines.append(f"width lower bound: {out['width_lower_bound']}")
    return out, "\n".join(lines) + "\n"


def cmd_homology(args):
    d = _load(args)
    c = build_complex(d, args.max_crossings)
    table = homology_ranks(c, args.method)
    out = table.to_json()
    out["euler_characteristic"] = {str(k): v for k, v in table.euler_characteristic().items()}
    out["total_rank"] = table.total_rank
    return out, table.to_text()


def cmd_jones(args):
    d = _load(args)
    poly = jones_bracket(d, args.max_crossings)
    out = {"schema": "statecycle.jones/1", "variable": "q", "coefficients": {str(k): v for k, v in poly.items()}, "text": format_poly(poly)}
    return out, format_poly(poly) + "\n"


def cmd_family(args):
    for name in (args.base, args.block):
        if name in BUILTINS and BUILTINS[name].regions is None:
            raise UsageError(f"builtin {name!r} has no recorded entwining regions")
    base, block = builtin(args.base), builtin(args.block)
    spec = EntwineSpec(base, block, BUILTINS[args.base].regions, BUILTINS[args.block].regions, args.copies)
    fk = entwine(spec)
    if args.expand_twists:
        fk = expand_family(fk)
    d = fk.diagram
    alphas = [bigrading(alpha_k(fk, k)) for k in range(fk.copies + 1)]
    deltas = predicted_deltas(fk)
    out = {
        "schema": "statecycle.family/1",
        "n": fk.copies,
        "crossings": len(d.crossings),
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "alpha_bigradings": [[g.t, g.q] for g in alphas],
        "predicted_deltas": deltas,
        "predicted_width_lower_bound": len(set(deltas)),
        "pd": to_pd(d),
    }
    text = to_pd(d) + "\n" + "\n".join(f"alpha_{k}: (t,q)=({g.t},{g.q}) delta={g.delta}" for k, g in enumerate(alphas)) + "\n"
    return out, text


def selftest_corpus(seed: int, count: int, max_crossings: int) -> list[Diagram]:
    corpus = [builtin(n) for n in sorted(BUILTINS) if len(builtin(n).crossings) <= max_crossings]
    rng = random.Random(seed)
    while count:
        strands = rng.choice((2, 3, 3, 4))
        length = rng.randint(2, max_crossings)
        word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
        corpus.append(braid_closure(word, strands, name=f"braid{word}"))
        count -= 1
    return corpus


def cmd_selftest(args):
    checked = 0
    failures = []
    for d in selftest_corpus(args.seed, args.random, args.max_crossings):
        c = build_complex(d, args.max_crossings)
        for a, cert in enumerate_certified(d, 1 << len(d.crossings)):
            checked += 1
            g = c.generator(a)
            if c.differential_of(g) or is_boundary(a, c):
                failures.append({"diagram": d.name, "certificate": cert.to_json()})
    out = {"schema": "statecycle.selftest/1", "seed": args.seed, "certificates_checked": checked, "failures": failures, "ok": not failures}
    text = f"checked {checked} certificates, {len(failures)} failures\n"
    return out, text


COMMANDS = {
    "parse": cmd_parse,
    "resolve": cmd_resolve,
    "flags": cmd_flags,
    "certify": cmd_certify,
    "enumerate": cmd_enumerate,
    "homology": cmd_homology,
    "jones": cmd_jones,
    "family": cmd_family,
    "selftest": cmd_selftest,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out, text = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write(f"statecycle: error: {exc}\n")
        return 2
    except StateCycleError as exc:
        err = {"schema": ERROR_SCHEMA, "error": exc.code, "message": str(exc)}
        stdout.write(json.dumps(err, sort_keys=True) + "\n")
        return 1
    if args.format == "table":
        stdout.write(text)
    else:
        stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    if args.command == "selftest" and not out["ok"]:
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
