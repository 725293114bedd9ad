import argparse
import logging

from ._tool_descriptor import ExitCode, Tool, exit_code_for
from .utils.config import sorted_ids
from .utils.errors import MicoverError
from .utils.output import add_format_argument, add_selection_argument, emit
from .utils.reader import Reader
from .utils.realization import euler_closed_form, realize_euler


def main(path: str, selection: str | None = None, closed_form: bool = False, format: str = "text") -> ExitCode:
    reader = Reader(path)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE

    try:
        selected = reader.selection(selection)
        result = realize_euler(reader.configuration, selected)
        agree: bool | None = None
        if closed_form:
            closed = euler_closed_form(reader.configuration, selected)
            agree = closed == result
            result = closed
    except MicoverError as e:
        logging.error(f"Failed to compute Euler characteristic: {e}")
        return exit_code_for(e)

    lines = [str(result)]
    if agree is not None:
        lines.append("AGREE" if agree else "DISAGREE")
        if not agree:
            logging.warning(f"Closed form {result} differs from the realized motive")
    emit(format, lines, {"selection": sorted_ids(selected), "euler": result, "agree": agree})
    return ExitCode.FAILURE if agree is False else ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "euler",
        help="Compute the Euler characteristic of S^A."
    )
    parser.add_argument(
        "path",
        help="Path to the configuration (or resolution graph) JSON file."
    )
    add_selection_argument(parser)
    parser.add_argument(
        "--closed-form",
        dest="closed_form",
        action="store_true",
        help="Print the sum over components and whether it agrees with the realized motive."
    )
    add_format_argument(parser)

tool = Tool(
    name="euler",
    description="Compute the Euler characteristic of S^A.",
    add_argparser=add_argparser,
    main=main
)
