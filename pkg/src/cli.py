"""Stratkit: classify decompositions of finite spaces and check stratification theorems.
Usage:
  stratkit check <dec> [--format=<fmt>] [-v]
  stratkit classify <dec> [--expect=<level>] [--format=<fmt>] [-v]
  stratkit quotient <dec> [-v]
  stratkit preorder <dec> [--dot] [-v]
  stratkit coarsen <dec> [-v]
  stratkit theorem-a <dec> [-v]
  stratkit theorem-b <dec> <order> [-v]
  stratkit verify --exhaustive --points=<n> [--workers=<k>] [--format=<fmt>] [-v]
  stratkit gen --kind=<kind> --n=<n> --seed=<seed> [--density=<p>] [--strata=<k>] [-v]
  stratkit fixture list
  stratkit fixture show <name>
  stratkit export-dot <doc> [-v]
  stratkit (-h | --help)
  stratkit --version

Examples:
  stratkit classify fixtures/line_3.json --expect stratification
  stratkit verify --exhaustive --points 3
  stratkit fixture show quadrant_4 | stratkit classify - --expect stratification
  stratkit gen --kind partition --n 5 --seed 7 --strata 3

Options:
  -h --help          Show this screen
  --version          Show the version
  -v --verbose       Log progress to stderr
  --format=<fmt>     Output format, text or json [default: text]
  --expect=<level>   Expected verdict: decomposition, alexandrov, poset-stratified or stratification
  --dot              Print the preorder as a DOT digraph
  --points=<n>       Number of points in the exhaustive sweep
  --workers=<k>      Worker processes for the sweep [default: 1]
  --kind=<kind>      What to generate, preorder or partition
  --n=<n>            Number of points
  --seed=<seed>      Unsigned 64-bit seed
  --density=<p>      Probability of drawing each ordered pair
  --strata=<k>       Number of strata of a partition

Note:
  A document argument of - reads stdin. $STRATKIT_MAX_POINTS overrides the
  enumeration guards. Exit codes: 0 success, 1 verdict mismatch or failed
  theorem precondition, 2 bad input, 3 internal consistency failure.
"""
import logging
import sys
from typing import List, Optional

from docopt import DocoptExit, docopt

from src import __version__
from src.decomposition import (LEVELS,
                               Decomposition,
                               PosetStratification,
                               classify,
                               coarsen,
                               decomposition_preorder,
                               decomposition_space,
                               theorem_A,
                               theorem_B)
from src.exceptions import DefectError, InputError, InvalidParameterError, PreconditionError
from src.fixtures import Document, export_dot, fixture, fixture_names, generate, load_path, save
from src.fixtures.documents import ORDER_KINDS
from src.oracle import PROPOSITIONS, exhaustive_verify

FORMATS = ("text", "json")


def _integer(value: str, option: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{option} must be an integer, got {value!r}")


def _format(arguments) -> str:
    fmt = arguments["--format"]
    if fmt not in FORMATS:
        raise InvalidParameterError(f"--format must be one of {', '.join(FORMATS)}, got {fmt!r}")
    return fmt


def _decomposition(path: str) -> Decomposition:
    return load_path(path).expect("decomposition")


def _flags(values: dict) -> str:
    return " ".join(f"{name}={str(value).lower()}" for name, value in values.items())


def _print_report(report) -> None:
    data = report.to_dict()
    print(f"verdict: {data['verdict']}")
    print(f"alexandrov: {_flags(data['alexandrov'])}")
    print(f"locally finite: {str(data['locally_finite']).lower()}")
    print(f"locally closed: {_flags(data['locally_closed'])}")
    print(f"frontier: {_flags(data['frontier'])}")
    print(f"poset-stratified: {_flags(data['poset_stratified'])}")
    print(f"stratification: {str(data['stratification']).lower()}")
    print(f"semicontinuity: {_flags(data['semicontinuity'])}")
    strict = [f"{a}<={b}" for a, b in data["decomposition_preorder"] if a != b]
    print(f"decomposition preorder: {', '.join(strict) if strict else 'discrete'}")
    for name, witness in data["witnesses"].items():
        print(f"witness {name}: {witness}")


def check(arguments) -> int:
    fmt = _format(arguments)
    report = classify(_decomposition(arguments["<dec>"]))
    if fmt == "json":
        print(save({"report": "classification", **report.to_dict()}), end="")
    else:
        _print_report(report)
    return 0


def classify_command(arguments) -> int:
    fmt = _format(arguments)
    expected = arguments["--expect"]
    if expected is not None and expected not in LEVELS:
        raise InvalidParameterError(f"--expect must be one of {', '.join(LEVELS)}, got {expected!r}")
    report = classify(_decomposition(arguments["<dec>"]))
    verdict = report.verdict
    reasons = []
    if expected is not None and expected != verdict:
        reasons = report.shortfall(expected) or [f"verdict is {verdict}, which is above {expected}"]
    if fmt == "json":
        print(save({"report": "verdict", "verdict": verdict, "expected": expected, "reasons": reasons}), end="")
    else:
        print(f"verdict: {verdict}")
        if expected is not None and expected != verdict:
            print(f"expected: {expected}")
            for reason in reasons:
                print(f"reason: {reason}")
    return 1 if expected is not None and expected != verdict else 0


def verify(arguments) -> int:
    fmt = _format(arguments)
    points = _integer(arguments["--points"], "--points")
    workers = _integer(arguments["--workers"], "--workers")
    report = exhaustive_verify(points, workers)
    if fmt == "json":
        print(save({"report": "sweep", **report.to_dict()}), end="")
    else:
        print(f"{report.instances} instances, {report.failed} failures")
        for name in PROPOSITIONS:
            if report.total(name):
                print(f"  {name}: {report.passes.get(name, 0)}/{report.total(name)}")
        if report.counterexample is not None:
            counterexample = report.counterexample
            print(f"first counterexample (instance {counterexample.index}, {counterexample.proposition}): "
                  f"{counterexample.message}")
            print(save(counterexample.decomposition), end="")
    return 3 if report.failed else 0


def gen(arguments) -> int:
    params = {}
    if arguments["--density"] is not None:
        try:
            params["density"] = float(arguments["--density"])
        except ValueError:
            raise InvalidParameterError(f"--density must be a number, got {arguments['--density']!r}")
    if arguments["--strata"] is not None:
        params["strata"] = _integer(arguments["--strata"], "--strata")
    document = generate(arguments["--kind"],
                        _integer(arguments["--n"], "--n"),
                        params,
                        _integer(arguments["--seed"], "--seed"))
    print(save(document), end="")
    return 0


def fixture_command(arguments) -> int:
    if arguments["list"]:
        for name in fixture_names():
            print(f"{name}: {fixture(name).notes}")
    else:
        print(save(fixture(arguments["<name>"]).document), end="")
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    try:
        arguments = docopt(__doc__, argv=argv, version=__version__)
    except DocoptExit as e:
        print(e, file=sys.stderr)
        return 2
    except SystemExit as e:
        # --help and --version
        return 0 if e.code is None else e.code

    logging.basicConfig(level=logging.INFO if arguments["--verbose"] else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)

    try:
        if arguments["check"]:
            return check(arguments)
        if arguments["classify"]:
            return classify_command(arguments)
        if arguments["quotient"]:
            print(save(decomposition_space(_decomposition(arguments["<dec>"]))), end="")
            return 0
        if arguments["preorder"]:
            preorder = decomposition_preorder(_decomposition(arguments["<dec>"]))
            print(export_dot(preorder) if arguments["--dot"] else save(preorder), end="")
            return 0
        if arguments["coarsen"]:
            coarse, _ = coarsen(_decomposition(arguments["<dec>"]))
            print(save(coarse), end="")
            return 0
        if arguments["theorem-a"]:
            stratification = theorem_A(_decomposition(arguments["<dec>"]))
            print(save(Document("order-on-strata", stratification.order)), end="")
            return 0
        if arguments["theorem-b"]:
            order = load_path(arguments["<order>"]).expect(*ORDER_KINDS)
            result = theorem_B(PosetStratification(_decomposition(arguments["<dec>"]), order))
            print(f"stratification: {str(result.verdict.holds).lower()}")
            return 0
        if arguments["verify"]:
            return verify(arguments)
        if arguments["gen"]:
            return gen(arguments)
        if arguments["fixture"]:
            return fixture_command(arguments)
        if arguments["export-dot"]:
            print(export_dot(load_path(arguments["<doc>"])), end="")
            return 0
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 1
    except DefectError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return 3
    return 2


def cli():
    sys.exit(run())


if __name__ == "__main__":
    cli()
