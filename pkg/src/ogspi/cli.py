"""Command-line front end: ``ogspi parse|step|traces|encode|equiv|check``.

Exit codes: 0 success (or Equivalent, or every suite item passing), 1
Distinguished or a failing suite, 2 usage and parse errors, 3 when the only
outcome is Inconclusive.
"""

import argparse
import json
import os
import sys

from .actions import show_trace, trace_to_json
from .encode import encode_cbn, encode_cbn_config, encode_cbv, encode_config
from .equiv.bisim import bisim_upto_composition, bounded_weak_bisim
from .equiv.enf import enf_bisim
from .equiv.steppers import STEPPERS, get_stepper
from .equiv.traces import complete_trace_equiv, enumerate_traces, trace_equiv
from .harness.suites import SUITES, run_suite
from .lam.parser import ParseError, parse_term
from .lam.terms import free_names, show
from .ogs.config import InvalidConfiguration, initial, show_config
from .ogs.literal import parse_config
from .ogs.lts import initial_stacked
from .pii.parser import parse_process
from .pii.syntax import show as show_process

EXIT_OK, EXIT_DIFF, EXIT_USAGE, EXIT_OPEN = 0, 1, 2, 3

_GAME_FLAVOR = {"aogs": "aogs", "cogs": "cogs", "wbogs": "wbogs",
                "cbn-aogs": "aogs", "cbn-cogs": "cogs"}


class UsageError(Exception):
    pass


# configuration file and environment --------------------------------------

def read_config_file(path):
    """``key = value`` lines; ``#`` starts a comment; keys use flag spelling."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{n}: expected key = value")
            out[key.strip().lstrip("-").replace("-", "_")] = val.strip()
    return out


def _apply_defaults(parser, argv):
    """Seed defaults from ``OGSPI_SEED`` and an optional ``--config-file``."""
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config-file")
    known, _ = pre.parse_known_args(argv)
    defaults = {}
    if os.environ.get("OGSPI_SEED"):
        defaults["seed"] = os.environ["OGSPI_SEED"]
    if known.config_file:
        defaults.update(read_config_file(known.config_file))
    return defaults


# reading inputs -----------------------------------------------------------

def _calculus(lts, given):
    if lts and lts.startswith("cbn"):
        return "cbn"
    return given or "cbv"


def _term(text, calculus):
    try:
        return parse_term(text, calculus, literal_names=True)
    except ParseError:
        return parse_term(text, calculus)


def _is_pi(lts):
    return lts.startswith("pi")


def load_state(text, lts, calculus="cbv", names=()):
    """A start state for ``lts``: a configuration literal, a process or a λ-term."""
    text = text.strip()
    if _is_pi(lts):
        if text.startswith("<"):
            f = parse_config(text, "cogs", calculus)
            return encode_cbn_config(f) if calculus == "cbn" else encode_config(f)
        try:
            m = _term(text, calculus)
        except ParseError:
            return parse_process(text)
        return encode_cbn(m) if calculus == "cbn" else encode_cbv(m)
    flavor = _GAME_FLAVOR[lts]
    if text.startswith("<"):
        return parse_config(text, flavor, calculus)
    m = _term(text, calculus)
    if lts == "wbogs":
        return initial_stacked(m, set(names) | free_names(m))
    return initial(m, set(names) | free_names(m))


def _show_state(s):
    try:
        return show_config(s)
    except (TypeError, AttributeError):
        return show_process(s)


def _emit(args, data, text):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


# commands -----------------------------------------------------------------

def cmd_parse(args):
    if args.kind == "process":
        p = parse_process(args.text)
        out = show_process(p)
    elif args.kind == "config":
        out = show_config(parse_config(args.text, args.flavor, args.calculus))
    else:
        out = show(parse_term(args.text, args.mode))
    _emit(args, {"kind": args.kind, "value": out}, out)
    return EXIT_OK


def cmd_step(args):
    calc = _calculus(args.lts, args.calculus)
    stepper = get_stepper(args.lts)
    s = load_state(args.input, args.lts, calc)
    moves = stepper.transitions(s)
    data = [{"action": a.to_json(), "label": a.label, "target": _show_state(q)} for a, q in moves]
    text = "\n".join(f"{a.label:4} {a}  ->  {_show_state(q)}" for a, q in moves) or "(no transitions)"
    _emit(args, data, text)
    return EXIT_OK


def cmd_traces(args):
    calc = _calculus(args.lts, args.calculus)
    s = load_state(args.input, args.lts, calc)
    ts = enumerate_traces(get_stepper(args.lts), s, args.depth, args.fuel)
    which = "complete" if args.complete else "traces"
    traces = ts.sorted(which)
    if args.format == "json":
        print(json.dumps([trace_to_json(t) for t in traces], sort_keys=True, ensure_ascii=False))
    else:
        for t in traces:
            print(show_trace(t))
        if ts.divergence_suspected:
            print("# fuel bound reached: divergence suspected")
    return EXIT_OK


def cmd_encode(args):
    text = args.input.strip()
    if text.startswith("<"):
        f = parse_config(text, "cogs", args.calculus)
        if args.calculus == "cbn":
            p = encode_cbn_config(f)
        else:
            p = encode_config(f, "opt" if args.optimised else "plain")
    else:
        m = parse_term(text, args.calculus)
        p = encode_cbn(m) if args.calculus == "cbn" else encode_cbv(m, args.optimised)
    out = show_process(p)
    _emit(args, {"process": out}, out)
    return EXIT_OK


def _verdict_exit(v):
    return {"equivalent": EXIT_OK, "distinguished": EXIT_DIFF}.get(v.kind, EXIT_OPEN)


def cmd_equiv(args):
    calc = _calculus(args.lts, args.calculus)
    if args.mode == "enf":
        if calc != "cbv":
            raise UsageError("enf bisimulation is defined for call-by-value terms")
        v = enf_bisim(_term(args.left, "cbv"), _term(args.right, "cbv"), args.depth, args.fuel)
    else:
        stepper = get_stepper(args.lts)
        names = set()
        for side in (args.left, args.right):
            if not side.strip().startswith("<") and not _is_pi(args.lts):
                names |= free_names(_term(side, calc))
        a = load_state(args.left, args.lts, calc, names)
        b = load_state(args.right, args.lts, calc, names)
        if args.mode == "trace":
            v = trace_equiv(stepper, a, stepper, b, args.depth, args.fuel)
        elif args.mode == "complete":
            v = complete_trace_equiv(stepper, a, stepper, b, args.depth, args.fuel)
        elif args.mode == "bisim":
            v = bounded_weak_bisim(stepper, a, stepper, b, args.depth, args.fuel)
        else:
            try:
                v = bisim_upto_composition(a, b, args.depth, args.fuel, stepper)
            except ValueError as e:
                raise UsageError(str(e)) from None
    _emit(args, v.to_json(), v.show())
    return _verdict_exit(v)


def cmd_check(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    params = {"seed": args.seed, "count": args.count, "size": args.size,
              "depth": args.depth, "fuel": args.fuel}
    reports = [run_suite(n, params, jobs=args.jobs) for n in names]
    if args.format == "json":
        body = [r.to_json() for r in reports]
        print(json.dumps(body if len(body) > 1 else body[0], sort_keys=True,
                         ensure_ascii=False, indent=1))
    else:
        print("\n\n".join(r.text() for r in reports))
    outcomes = {r.outcome for r in reports}
    if "fail" in outcomes:
        return EXIT_DIFF
    if "inconclusive" in outcomes:
        return EXIT_OPEN
    return EXIT_OK


# parser -------------------------------------------------------------------

def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="ogspi", allow_abbrev=False,
                                 description="Game semantics, πI encodings and bounded "
                                             "equivalence checks for small λ-terms.")
    ap.add_argument("--config-file", help="file of key = value lines supplying flag defaults")
    sub = ap.add_subparsers(dest="command", required=True)
    lts_names = sorted(STEPPERS)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("parse", help="parse and pretty-print a term, configuration or process")
    p.add_argument("text")
    p.add_argument("--kind", choices=("term", "config", "process"), default="term")
    p.add_argument("--mode", choices=("cbv", "cbn", "rho"), default="cbv")
    p.add_argument("--flavor", choices=("aogs", "cogs", "wbogs"), default="cogs")
    p.add_argument("--calculus", choices=("cbv", "cbn"), default="cbv")
    fmt(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("step", help="list the single transitions of a state")
    p.add_argument("--lts", choices=lts_names, default="cogs")
    p.add_argument("--term", "--config", "--process", dest="input", required=True)
    p.add_argument("--calculus", choices=("cbv", "cbn"))
    fmt(p)
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("traces", help="enumerate weak traces up to a depth")
    p.add_argument("--lts", choices=lts_names, default="aogs")
    p.add_argument("--term", "--config", "--process", dest="input", required=True)
    p.add_argument("--depth", type=_nonneg, default=3)
    p.add_argument("--fuel", type=_nonneg, default=64)
    p.add_argument("--calculus", choices=("cbv", "cbn"))
    p.add_argument("--complete", action="store_true", help="only complete traces")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("encode", help="translate a term or configuration into πI")
    p.add_argument("--term", "--config", dest="input", required=True)
    p.add_argument("--calculus", choices=("cbv", "cbn"), default="cbv")
    p.add_argument("--optimised", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("equiv", help="compare two terms, configurations or processes")
    p.add_argument("--mode", choices=("trace", "complete", "bisim", "upto", "enf"),
                   default="bisim")
    p.add_argument("--lts", choices=lts_names, default="cogs")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--depth", type=_nonneg, default=3)
    p.add_argument("--fuel", type=_nonneg, default=64)
    p.add_argument("--calculus", choices=("cbv", "cbn"))
    fmt(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=_nonneg)
    p.add_argument("--size", type=_nonneg)
    p.add_argument("--depth", type=_nonneg)
    p.add_argument("--fuel", type=_nonneg)
    p.add_argument("--jobs", type=_nonneg, default=1)
    fmt(p)
    p.set_defaults(func=cmd_check)
    return ap


def _coerce(action, text):
    if isinstance(action, argparse._StoreTrueAction):
        return text.lower() in ("1", "true", "yes", "on")
    return action.type(text) if action.type else text


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        defaults = _apply_defaults(ap, argv)
    except (OSError, UsageError) as e:
        print(f"ogspi: {e}", file=sys.stderr)
        return EXIT_USAGE
    if defaults:
        for action in ap._subparsers._group_actions:
            for sp in action.choices.values():
                known = {a.dest: a for a in sp._actions}
                for k, v in defaults.items():
                    if k in known:
                        sp.set_defaults(**{k: _coerce(known[k], v)})
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, InvalidConfiguration, UsageError) as e:
        print(f"ogspi: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"ogspi: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
