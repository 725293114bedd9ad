import argparse
import logging
import random
from typing import Any

from ._tool_descriptor import ExitCode, Tool
from .utils.blowup import check_invariance
from .utils.config import sorted_ids
from .utils.errors import MicoverError
from .utils.generate import RandomCase, random_case
from .utils.output import add_format_argument, emit
from .utils.reader import dump_center, dump_configuration


def _counterexample(index: int, case: RandomCase, reason: str) -> dict[str, Any]:
    return {
        "case": index,
        "reason": reason,
        "selection": sorted_ids(case.selection),
        "configuration": dump_configuration(case.config),
        "center": dump_center(case.center),
    }


def main(seed: int = 0, count: int = 500, max_dim: int = 5, max_components: int = 6,
         max_multiplicity: int = 6, format: str = "text") -> ExitCode:
    if max_dim < 2 or max_components < 1 or max_multiplicity < 1 or count < 0:
        logging.error("Sweep needs --max-dim >= 2, --max-components >= 1, --max-multiplicity >= 1 and --count >= 0")
        return ExitCode.USAGE

    logging.info(f"Running {count} random blow-up invariance cases with seed {seed}")

    rng = random.Random(seed)
    passed, failed = 0, 0
    first: dict[str, Any] | None = None
    for index in range(count):
        case = random_case(rng, max_dim, max_components, max_multiplicity)
        try:
            verdict = check_invariance(case.config, case.center, case.selection)
            reason = f"difference {verdict.difference}"
            ok = verdict.passed
        except MicoverError as e:
            reason, ok = str(e), False
        if ok:
            passed += 1
            continue
        failed += 1
        logging.error(f"Case {index} fails: {reason}")
        if first is None:
            first = _counterexample(index, case, reason)

    lines = [f"{count} cases: {passed} passed, {failed} failed"]
    if first is not None:
        lines.append(f"first counterexample: case {first['case']} ({first['reason']})")
    emit(format, lines, {"seed": seed, "count": count, "passed": passed, "failed": failed,
                         "counterexample": first})
    return ExitCode.SUCCESS if failed == 0 else ExitCode.FAILURE


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "sweep",
        help="Check blow-up invariance on random configurations."
    )
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0).")
    parser.add_argument("--count", type=int, default=500, help="Number of cases (default: 500).")
    parser.add_argument("--max-dim", dest="max_dim", type=int, default=5,
                        help="Maximal ambient dimension (default: 5).")
    parser.add_argument("--max-components", dest="max_components", type=int, default=6,
                        help="Maximal number of components (default: 6).")
    parser.add_argument("--max-multiplicity", dest="max_multiplicity", type=int, default=6,
                        help="Maximal |multiplicity| (default: 6).")
    add_format_argument(parser)

tool = Tool(
    name="sweep",
    description="Check blow-up invariance on random configurations.",
    add_argparser=add_argparser,
    main=main
)
