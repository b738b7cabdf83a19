"""Command-line driver: ``corelab <command> -f problem.ring -i I [options]``.

Exit status is 0 on success, 2 when the computation produced a mathematical
finding (unstable formula, not a reduction, genericity failure) and 1 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
import warnings

from .blowup import PresentationError, SpecializationError, analytic_spread, fiber_presentation
from .core import (
    CoreError, StabilityError, core_auto, core_monte_carlo, decomposition_check, hypothesis_report,
)
from .ideal import Ideal, SaturationError, height
from .poly import ParseError
from .problem import ProblemError, load_problem
from .reductions import DEFAULT_BOUND, ReductionError, is_reduction
from .verify import EXAMPLES, verify_example

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2


class UsageError(Exception):
    pass


class Finding(Exception):
    """A mathematical outcome reported with exit status 2."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ideal_out(I: Ideal) -> list[str]:
    return I.canonical_strings()


def _problem_inputs(args) -> tuple:
    if not args.file or not args.ideal:
        raise UsageError("this command needs -f <file> and -i <IdealName>")
    problem = load_problem(args.file)
    I = problem.ideal(args.ideal)
    inputs = {"file": args.file, "ideal": args.ideal, "field": problem.field.directive(),
              "ring": list(problem.ring.variables),
              "generators": [str(g) for g in I.generators]}
    return problem, I, inputs


def _need_seed(args):
    if args.seed is None:
        raise UsageError(f"{args.command} is randomized and needs --seed")


# -- commands; each returns (inputs, result, notes, text) ---------------------

def cmd_spread(args):
    _, I, inputs = _problem_inputs(args)
    ell = analytic_spread(I)
    return inputs, ell, [], f"analytic spread: {ell}"


def cmd_height(args):
    _, I, inputs = _problem_inputs(args)
    ht = height(I)
    return inputs, ht, [], f"height: {ht}"


def cmd_fiber(args):
    _, I, inputs = _problem_inputs(args)
    P = fiber_presentation(I)
    dim = P.dimension()
    result = {"variables": list(P.ambient.variables),
              "generator_map": {k: str(v) for k, v in P.generator_map.items()},
              "ideal": _ideal_out(P.defining), "dimension": dim}
    return inputs, result, [], P.render() + f"\n# dimension {dim}"


def cmd_rednum(args):
    problem, I, inputs = _problem_inputs(args)
    J = problem.ideal(args.j)
    inputs["J"] = [str(g) for g in J.generators]
    inputs["bound"] = args.bound
    rep = is_reduction(J, I, args.bound)
    if not rep.verified:
        raise Finding(f"{args.j} is not a reduction of {args.ideal} at bound {args.bound}",
                      {"verified": False, "r": None, "bound": args.bound})
    return inputs, rep.r, [], f"reduction number r_{args.j}({args.ideal}) = {rep.r}"


def cmd_core(args):
    _need_seed(args)
    _, I, inputs = _problem_inputs(args)
    inputs["n"] = args.n
    rep = core_auto(I, args.seed, n=args.n)
    result = {"core": _ideal_out(rep.value), "n_used": rep.n_used, "J_used": _ideal_out(rep.J_used),
              "r": rep.r, "spread": rep.spread, "height": rep.height,
              "stability": [list(p) for p in rep.stability]}
    text = "\n".join([f"core formula value: ({', '.join(result['core'])})",
                      f"n = {rep.n_used}, r = {rep.r}, l = {rep.spread}, g = {rep.height}",
                      f"J = ({', '.join(result['J_used'])})",
                      f"stable over {len(rep.stability)} (n, seed) pairs"])
    return inputs, result, rep.notes, text


def cmd_mc_core(args):
    _need_seed(args)
    _, I, inputs = _problem_inputs(args)
    inputs.update(trials=args.trials, stall=args.stall, homogeneous=args.homogeneous)
    rep = core_monte_carlo(I, args.trials, args.stall, args.seed, args.homogeneous)
    result = {"core": _ideal_out(rep.value), "trials": rep.trials,
              "stabilized_after": rep.stabilized_after, "shrinks": rep.shrinks}
    notes = ["Monte-Carlo value contains the core; equality is evidence, not proof"]
    text = (f"mc-core value: ({', '.join(result['core'])})\n"
            f"{rep.trials} trials, {rep.stabilized_after} since the last shrink")
    return inputs, result, notes, text


def cmd_decomp(args):
    _need_seed(args)
    _, I, inputs = _problem_inputs(args)
    inputs.update(s=args.s, nmax=args.nmax)
    res = decomposition_check(I, args.s, args.nmax, args.seed)
    result = {"holds": res.holds, "window": list(res.window), "failures": res.failures,
              "spread": res.spread, "elements": [str(f) for f in res.elements]}
    text = (f"decomposition with s = {args.s}: {'holds' if res.holds else 'fails'} "
            f"on n in [{res.window[0]}, {res.window[1]}]"
            + (f" (fails at n = {res.failures})" if res.failures else ""))
    return inputs, result, [], text


def cmd_hyp(args):
    problem, I, inputs = _problem_inputs(args)
    J = problem.ideal(args.j)
    inputs["J"] = [str(g) for g in J.generators]
    primes = [p.split(",") for p in args.prime] if args.prime else None
    inputs["primes"] = primes or []
    if primes:
        _need_seed(args)  # embedding dimensions use random specializations
    rep = hypothesis_report(I, J, primes, args.seed if primes else 0)
    result = rep.as_dict()
    lines = [f"g = {rep.height}, l = {rep.spread}, r = {rep.r}, n threshold = {rep.threshold}",
             f"equimultiple: {rep.equimultiple}, m-primary: {rep.m_primary}"]
    return inputs, result, rep.notes, "\n".join(lines)


def cmd_verify(args):
    seed = args.seed if args.seed is not None else 1
    checks = verify_example(args.example, seed)
    result = [{"check": c.name, "passed": c.passed, "detail": c.detail,
               "seconds": round(c.seconds, 3)} for c in checks]
    text = "\n".join(c.line() for c in checks)
    inputs = {"example": args.example}
    if not all(c.passed for c in checks):
        raise Finding(text, result)
    return inputs, result, [], text


COMMANDS = {
    "spread": cmd_spread, "height": cmd_height, "fiber": cmd_fiber, "rednum": cmd_rednum,
    "core": cmd_core, "mc-core": cmd_mc_core, "decomp": cmd_decomp, "hyp": cmd_hyp,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON report")
    common.add_argument("-f", dest="file", default=argparse.SUPPRESS, help="problem file")
    common.add_argument("-i", dest="ideal", default=argparse.SUPPRESS, help="ideal name")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed")

    parser = _Parser(prog="corelab", description="Cores of ideals over finite fields.")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("-f", dest="file")
    parser.add_argument("-i", dest="ideal")
    parser.add_argument("--seed", type=int)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("spread", parents=[common], help="analytic spread")
    sub.add_parser("height", parents=[common], help="height")
    sub.add_parser("fiber", parents=[common], help="special fiber ring presentation")
    p = sub.add_parser("rednum", parents=[common], help="reduction number of J in I")
    p.add_argument("-j", required=True, help="name of the candidate reduction")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p = sub.add_parser("core", parents=[common], help="core by the colon formula")
    p.add_argument("--n", type=int)
    p = sub.add_parser("mc-core", parents=[common], help="core as an intersection of reductions")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--stall", type=int, default=16)
    p.add_argument("--homogeneous", action="store_true")
    p = sub.add_parser("decomp", parents=[common], help="power decomposition test")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p = sub.add_parser("hyp", parents=[common], help="hypotheses of the core formula")
    p.add_argument("-j", required=True)
    p.add_argument("--prime", action="append",
                   help="candidate minimal prime of the fiber ring, e.g. T2,T3,T4 (repeatable)")
    p = sub.add_parser("verify", parents=[common], help="reproduce a worked example")
    p.add_argument("--example", required=True, choices=EXAMPLES)
    return parser


def _emit(args, inputs, result, notes, text, seconds, out):
    if args.json:
        doc = {"command": args.command, "inputs": inputs, "result": result, "notes": notes,
               "seed": args.seed, "timings_ms": {"total": round(seconds * 1000, 1)}}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")
        for note in notes:
            out.write(f"note: {note}\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"corelab: {exc}\n")
        return EXIT_USAGE
    t0 = time.perf_counter()
    inputs = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            inputs, result, notes, text = COMMANDS[args.command](args)
            status = EXIT_OK
        except (UsageError, ProblemError, ParseError, KeyError, OSError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
            err.write(f"corelab: {msg}\n")
            return EXIT_USAGE
        except (Finding, StabilityError, ReductionError, SpecializationError,
                SaturationError) as exc:
            result = getattr(exc, "result", None)
            if isinstance(exc, StabilityError):
                result = {"first": list(exc.first), "second": list(exc.second)}
            notes, text, status = [], str(exc), EXIT_FINDING
        except (CoreError, PresentationError, ValueError) as exc:
            err.write(f"corelab: {exc}\n")
            return EXIT_USAGE
    seen = []
    for w in caught:
        msg = str(w.message)
        if msg not in seen:
            seen.append(msg)
    notes = list(notes) + [f"warning: {m}" for m in seen]
    _emit(args, inputs, result, notes, text, time.perf_counter() - t0, out)
    return status


def run_command(argv) -> tuple[int, str, str]:
    """Run one command in-process; returns (exit status, stdout text, stderr text)."""
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
