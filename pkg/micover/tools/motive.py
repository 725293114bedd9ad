import argparse
import logging

from ._tool_descriptor import ExitCode, Tool, exit_code_for
from .utils.config import sorted_ids
from .utils.errors import MicoverError
from .utils.motive import breakdown as stratum_breakdown
from .utils.motive import meets, motive
from .utils.output import add_format_argument, add_selection_argument, emit
from .utils.reader import Reader


def main(path: str, selection: str | None = None, breakdown: bool = False, format: str = "text") -> ExitCode:
    reader = Reader(path)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE

    try:
        config = reader.configuration
        selected = reader.selection(selection)
        logging.info(f"Computing S^A for A = {{{','.join(sorted_ids(selected))}}}")
        result = motive(config, selected)
        items = stratum_breakdown(config, meets(selected)) if breakdown else []
    except MicoverError as e:
        logging.error(f"Failed to compute motive: {e}")
        return exit_code_for(e)

    lines = [str(result)]
    lines += [f"{item.name}: {item.term}" for item in items]
    emit(format, lines, {
        "selection": sorted_ids(selected),
        "motive": str(result),
        "breakdown": [
            {"stratum": sorted_ids(item.stratum), "sign": item.sign, "cover": str(item.cover), "term": str(item.term)}
            for item in items
        ],
    })
    return ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "motive",
        help="Compute the motivic infinite cyclic cover S^A."
    )
    parser.add_argument(
        "path",
        help="Path to the configuration (or resolution graph) JSON file."
    )
    add_selection_argument(parser)
    parser.add_argument(
        "--breakdown",
        action="store_true",
        help="Also print the contribution of every stratum."
    )
    add_format_argument(parser)

tool = Tool(
    name="motive",
    description="Compute the motivic infinite cyclic cover S^A.",
    add_argparser=add_argparser,
    main=main
)
