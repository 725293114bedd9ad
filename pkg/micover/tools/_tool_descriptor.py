import argparse

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable

from .utils.errors import SelectionError


class ExitCode(IntEnum):
    SUCCESS = 0
    FAILURE = 1
    USAGE = 2
    IO_ERROR = 3


def exit_code_for(error: Exception) -> ExitCode:
    if isinstance(error, OSError):
        return ExitCode.IO_ERROR
    if isinstance(error, SelectionError):
        return ExitCode.USAGE
    return ExitCode.FAILURE


@dataclass
class Tool:
    name: str
    description: str
    add_argparser: Callable[[argparse._SubParsersAction], None]
    main: Callable[..., ExitCode]

    def __call__(self, **kwargs) -> ExitCode: # type: ignore[no-untyped-def]
        return self.main(**kwargs)
