import argparse
import json
import logging

from ._tool_descriptor import ExitCode, Tool, exit_code_for
from .utils.blowup import blowup
from .utils.config import format_stratum
from .utils.errors import MicoverError
from .utils.output import STRUCTURED, add_format_argument
from .utils.reader import Reader, dump_configuration, read_center, write_configuration


def main(path: str, center: str, output: str | None = None, exceptional_id: str | None = None,
         format: str = "text") -> ExitCode:
    reader = Reader(path)
    if not reader.ok:
        return ExitCode.IO_ERROR if reader.io_error else ExitCode.FAILURE

    try:
        z = read_center(center)
        blown = blowup(reader.configuration, z, exceptional_id)
        star = next(iter(blown.component_ids() - reader.configuration.component_ids()))
        logging.info(f"Blew up center in E_{format_stratum(z.containing)}: exceptional component '{star}' "
                     f"with multiplicity {blown.components[star].multiplicity}, {len(blown.strata)} strata")
        if output is not None:
            write_configuration(blown, output)
            logging.info(f"Wrote {output}")
    except (MicoverError, OSError) as e:
        logging.error(f"Blow-up failed: {e}")
        return exit_code_for(e)

    if output is None:
        print(json.dumps(dump_configuration(blown), indent=2))
    elif format == STRUCTURED:
        print(json.dumps({"output": output, "exceptional_id": star,
                          "multiplicity": blown.components[star].multiplicity}, indent=2, sort_keys=True))
    else:
        print(output)
    return ExitCode.SUCCESS


def add_argparser(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "blowup",
        help="Blow up a configuration along a center."
    )
    parser.add_argument(
        "path",
        help="Path to the configuration (or resolution graph) JSON file."
    )
    parser.add_argument(
        "center",
        help="Path to the center JSON file."
    )
    parser.add_argument(
        "-o", "--output",
        default=None,
        help="Write the blown-up configuration to this file instead of stdout."
    )
    parser.add_argument(
        "--exceptional-id",
        dest="exceptional_id",
        default=None,
        help="Id of the exceptional component (default: first free of *, *1, *2, ...)."
    )
    add_format_argument(parser)

tool = Tool(
    name="blowup",
    description="Blow up a configuration along a center.",
    add_argparser=add_argparser,
    main=main
)
