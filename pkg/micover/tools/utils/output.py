import argparse
import json
from typing import Any

TEXT = "text"
STRUCTURED = "structured"


def add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[TEXT, STRUCTURED],
        default=TEXT,
        help="Output format: human readable text or JSON (default: text)."
    )


def emit(format: str, lines: list[str], data: dict[str, Any]) -> None:
    if format == STRUCTURED:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def add_selection_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-a", "--selection",
        dest="selection",
        default=None,
        help="Components A: 'all', 'exceptional' or a comma-separated id list "
             "(default: all, or the exceptional vertices of a resolution graph)."
    )
