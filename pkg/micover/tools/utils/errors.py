from __future__ import annotations

from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .config import Diagnostic


class MicoverError(Exception):
    """Base class for all library errors."""


class DiagnosticsError(MicoverError):
    def __init__(self, message: str, diagnostics: Iterable[Diagnostic]):
        self.diagnostics: list[Diagnostic] = list(diagnostics)
        details = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"{message}: {details}" if details else message)


class InvalidConfigurationError(DiagnosticsError):
    def __init__(self, diagnostics: Iterable[Diagnostic]):
        super().__init__("invalid configuration", diagnostics)


class InvalidCenterError(DiagnosticsError):
    def __init__(self, diagnostics: Iterable[Diagnostic]):
        super().__init__("invalid blow-up center", diagnostics)


class UnknownComponentError(MicoverError, KeyError):
    def __init__(self, component: str):
        self.component = component
        super().__init__(f"unknown component '{component}'")

    def __str__(self) -> str:
        return str(self.args[0])


class MissingStratumError(MicoverError, KeyError):
    def __init__(self, stratum: str):
        self.stratum = stratum
        super().__init__(f"no stratum {stratum} in configuration")

    def __str__(self) -> str:
        return str(self.args[0])


class UnrepresentableCoverError(MicoverError):
    def __init__(self, stratum: str, reason: str = ""):
        self.stratum = stratum
        message = f"unrepresentable cover for stratum {stratum}"
        super().__init__(f"{message} ({reason})" if reason else message)


class RingParseError(MicoverError, ValueError):
    pass


class FormatError(MicoverError, ValueError):
    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


class SelectionError(MicoverError, ValueError):
    pass


class NotPolynomialError(MicoverError, ValueError):
    pass
