import importlib
import logging
import pkgutil
from pathlib import Path

from ._tool_descriptor import ExitCode, Tool


def _discover_tools() -> dict[str, Tool]:
    tools: dict[str, Tool] = {}

    modules = sorted(pkgutil.iter_modules([str(Path(__file__).parent)]), key=lambda m: m.name)
    for module_info in modules:
        modname = module_info.name
        if modname.startswith("_") or module_info.ispkg:
            continue  # private modules and the utils package

        try:
            module = importlib.import_module(f'.{modname}', __name__)
        except Exception as e:
            logging.warning(f"Failed to import tool module '{modname}': {e}")
            continue

        tool = getattr(module, 'tool', None)
        if not isinstance(tool, Tool):
            continue
        if tool.name in tools:
            logging.warning(f"Duplicate tool name detected: '{tool.name}' in '{modname}' - skipping.")
            continue
        tools[tool.name] = tool

    return tools


tools: dict[str, Tool] = _discover_tools()
__all__ = ["ExitCode", "Tool", "tools"]
