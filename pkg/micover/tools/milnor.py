import argparse
import logging

from ._tool_descriptor import ExitCode, Tool, exit_code_for
from .utils.config import sorted_ids
from .utils.errors import MicoverError, NotPolynomialError, UnrepresentableCoverError
from .utils.milnor import (
    MilnorSelection, acampo_zeta, milnor_euler, milnor_number, monodromy_polynomial, motivic_milnor_fiber,
)
from .utils.output import add_format_argument, add_selection_argument, emit
from .utils.reader import Reader


def main(graph: str, selection: str | None = None, format: str = "text") -> ExitCode:
    reader = Reader(graph)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE
    if reader.graph is None:
        logging.error(f"{graph} is not a resolution graph")
        return ExitCode.FAILURE

    try:
        selected = MilnorSelection.of(reader.graph, reader.selection(selection))
        zeta = acampo_zeta(reader.graph, selected)
        euler = milnor_euler(reader.graph, selected)
        mu = milnor_number(reader.graph, selected)
    except MicoverError as e:
        logging.error(f"Failed to compute Milnor fiber invariants: {e}")
        return exit_code_for(e)

    motive: str | None
    try:
        motive = str(motivic_milnor_fiber(reader.graph, selected))
    except UnrepresentableCoverError as e:
        logging.warning(f"Motivic Milnor fiber has no class in R: {e}")
        motive = None

    polynomial: str | None
    try:
        polynomial = str(monodromy_polynomial(reader.graph, selected).as_expr()).replace("**", "^")
    except NotPolynomialError as e:
        logging.warning(f"No monodromy polynomial: {e}")
        polynomial = None

    emit(format, [
        f"motive: {motive if motive is not None else 'unrepresentable'}",
        f"zeta: {zeta}",
        f"euler: {euler}",
        f"milnor number: {mu}",
        f"monodromy polynomial: {polynomial if polynomial is not None else 'none'}",
    ], {
        "selection": sorted_ids(selected.vertices),
        "motive": motive,
        "zeta": str(zeta),
        "euler": euler,
        "milnor_number": mu,
        "monodromy_polynomial": polynomial,
    })
    return ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "milnor",
        help="Compute Milnor fiber invariants of a plane curve germ from its resolution graph."
    )
    parser.add_argument(
        "graph",
        help="Path to the resolution graph JSON file."
    )
    add_selection_argument(parser)
    add_format_argument(parser)

tool = Tool(
    name="milnor",
    description="Compute Milnor fiber invariants of a plane curve germ from its resolution graph.",
    add_argparser=add_argparser,
    main=main
)
