"""Experiment configuration files and machine-readable run reports.

Config files are plain ``key = value`` lines (``#`` starts a comment).
Reports are JSON with sorted keys and no timing data, so the same config
and tool version always give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources

from .errors import UsageError
from .verdict import to_jsonable

TOOL_NAME = "lingrowth"
VERSION = "0.1.0"
SCHEMA_FILE = "data/report.schema.json"

STATUS_OK = "ok"
STATUS_VIOLATION = "violation"
STATUS_USAGE = "usage_error"
STATUS_RESOURCE = "resource_cap"
EXIT_CODES = {STATUS_OK: 0, STATUS_VIOLATION: 1, STATUS_USAGE: 2, STATUS_RESOURCE: 3}


@dataclass
class ExperimentConfig:
    """One experiment; ``options`` holds the command-specific settings."""

    command: str
    spec: str | None = None
    seed: int = 0
    trials: int | None = None
    enumeration_cap: int | None = None
    product_cap: int | None = None
    memory_mb: int | None = None
    output: str | None = None
    format: str = "json"
    threads: int = 1
    options: dict = field(default_factory=dict)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")  # where the report goes is not part of what it says
        return to_jsonable(d)


def read_config_file(path, allowed) -> dict[str, str]:
    """Parse ``key = value`` lines; keys outside ``allowed`` are rejected."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in allowed:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


@dataclass
class RunReport:
    config: ExperimentConfig
    status: str
    results: list = field(default_factory=list)
    error: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return to_jsonable(
            {
                "tool": TOOL_NAME,
                "version": VERSION,
                "config": self.config.echo(),
                "seed": self.config.seed,
                "status": self.status,
                "exit_code": self.exit_code,
                "error": self.error,
                "results": self.results,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("lingrowth").joinpath(SCHEMA_FILE).read_text())


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` does not match the schema."""
    import jsonschema

    jsonschema.validate(report, load_schema())
