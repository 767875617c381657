from .export import export, read_jsonl, render
from .runner import NumericalError, SweepRecord, run_scenario
from .scenario import BUILTINS, ConfigError, Scenario, builtin, from_dict, load

__all__ = [
    "BUILTINS",
    "ConfigError",
    "NumericalError",
    "Scenario",
    "SweepRecord",
    "builtin",
    "export",
    "from_dict",
    "load",
    "read_jsonl",
    "render",
    "run_scenario",
]
