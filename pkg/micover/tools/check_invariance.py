import argparse
import logging

from ._tool_descriptor import ExitCode, Tool, exit_code_for
from .utils.blowup import InvarianceVerdict, check_invariance, compare_blowup
from .utils.config import format_stratum, sorted_ids
from .utils.errors import MicoverError
from .utils.motive import StratumContribution
from .utils.output import add_format_argument, add_selection_argument, emit
from .utils.reader import Reader, read_center, read_configuration


def _items(items: list[StratumContribution]) -> list[dict[str, str | list[str]]]:
    return [{"stratum": sorted_ids(item.stratum), "term": str(item.term)} for item in items]


def _report(verdict: InvarianceVerdict, format: str) -> None:
    lines = [
        "PASS" if verdict.passed else "FAIL",
        f"exceptional component: {verdict.exceptional_id}",
        f"difference: {verdict.difference}",
    ]
    lines += [f"before {item.name}: {item.term}" for item in verdict.before]
    lines += [f"after {item.name}: {item.term}" for item in verdict.after]
    emit(format, lines, {
        "verdict": "PASS" if verdict.passed else "FAIL",
        "exceptional_id": verdict.exceptional_id,
        "difference": str(verdict.difference),
        "before": _items(verdict.before),
        "after": _items(verdict.after),
    })


def main(path: str, center: str, selection: str | None = None, blown: str | None = None,
         format: str = "text") -> ExitCode:
    reader = Reader(path)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE

    try:
        z = read_center(center)
        selected = reader.selection(selection)
        if blown is None:
            verdict = check_invariance(reader.configuration, z, selected)
        else:
            logging.info(f"Comparing with the supplied blown-up configuration {blown}")
            verdict = compare_blowup(reader.configuration, read_configuration(blown), selected, z.containing)
    except (MicoverError, OSError) as e:
        logging.error(f"Invariance check failed to run: {e}")
        return exit_code_for(e)

    _report(verdict, format)
    if not verdict.passed:
        logging.error(f"Blow-up invariance fails for center in E_{format_stratum(z.containing)}: "
                      f"difference {verdict.difference}")
        return ExitCode.FAILURE
    logging.info(f"Blow-up invariance holds for center in E_{format_stratum(z.containing)}")
    return ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "check-invariance",
        help="Check that S^A is unchanged by a blow-up."
    )
    parser.add_argument(
        "path",
        help="Path to the configuration (or resolution graph) JSON file."
    )
    parser.add_argument(
        "center",
        help="Path to the center JSON file."
    )
    add_selection_argument(parser)
    parser.add_argument(
        "--blown",
        default=None,
        help="Compare against this blown-up configuration instead of computing it."
    )
    add_format_argument(parser)

tool = Tool(
    name="check-invariance",
    description="Check that S^A is unchanged by a blow-up.",
    add_argparser=add_argparser,
    main=main
)
