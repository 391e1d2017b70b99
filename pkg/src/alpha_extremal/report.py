"""Run reports: one JSON document per CLI invocation."""

from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import numpy as np

SCHEMA_FILE = "run_report.schema.json"


def versions() -> dict[str, str]:
    from . import __version__

    return {"alpha_extremal": __version__, "python": platform.python_version(),
            "numpy": np.__version__}


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schemas", SCHEMA_FILE).read_text())


def _plain(obj: Any) -> Any:
    """Recursively convert numpy scalars, tuples and bytes into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, bytes):
        return obj.hex()
    return obj


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    wall_time_s: float = 0.0
    seed: int | None = None
    exit_code: int = 0

    def to_dict(self) -> dict:
        return _plain({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "versions": versions(),
            "wall_time_s": self.wall_time_s,
            "seed": self.seed,
            "exit_code": self.exit_code,
        })

    def to_json(self) -> str:
        # json writes floats with repr, i.e. the shortest round-tripping form
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False)
