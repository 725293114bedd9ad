import argparse
import logging

from ._tool_descriptor import ExitCode, Tool
from .utils.config import validate
from .utils.output import add_format_argument, emit
from .utils.reader import Reader


def main(path: str, format: str = "text") -> ExitCode:
    logging.info(f"Validating {path}")

    reader = Reader(path)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE

    config = reader.configuration
    diagnostics = validate(config)
    for d in diagnostics:
        logging.error(f" - {d}")

    lines = ["valid"] if not diagnostics else [str(d) for d in diagnostics]
    emit(format, lines, {
        "valid": not diagnostics,
        "ambient_dim": config.ambient_dim,
        "components": len(config.components),
        "strata": len(config.strata),
        "diagnostics": [{"kind": d.kind, "subject": d.subject, "message": d.message} for d in diagnostics],
    })

    if diagnostics:
        logging.error(f"Configuration is invalid: {len(diagnostics)} problems")
        return ExitCode.FAILURE
    logging.info(f"Configuration is valid: {len(config.components)} components, {len(config.strata)} strata")
    return ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "validate",
        help="Validate a configuration or resolution graph file."
    )
    parser.add_argument(
        "path",
        help="Path to the configuration (or resolution graph) JSON file."
    )
    add_format_argument(parser)

tool = Tool(
    name="validate",
    description="Validate a configuration or resolution graph file.",
    add_argparser=add_argparser,
    main=main
)
