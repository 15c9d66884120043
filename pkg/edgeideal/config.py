import os
from dataclasses import dataclass, replace

from edgeideal.errors import UsageError
from edgeideal.homology import Field

# Get environment variables
FIELD = os.environ.get("EDGEIDEAL_FIELD", "GF2")
WORKERS = os.environ.get("EDGEIDEAL_WORKERS")
DESK_CAP = os.environ.get("EDGEIDEAL_DESK_CAP", "12")
LOG_LEVEL = os.environ.get("EDGEIDEAL_LOG_LEVEL", "WARNING").upper()
SEED = int(os.environ.get("EDGEIDEAL_SEED", "2018"))

DEFAULT_DESK_CAP = 12
HARD_CAP = 62
OUTPUT_FORMATS = ("json", "tsv", "text")


def _int_setting(name, raw):
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Config:
    field: Field = Field(2)
    desk_cap: int = DEFAULT_DESK_CAP
    workers: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.desk_cap <= HARD_CAP:
            raise UsageError(f"desk cap must lie in 0..{HARD_CAP}, got {self.desk_cap}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"output format must be one of {', '.join(OUTPUT_FORMATS)}")

    @classmethod
    def from_env(cls):
        workers = WORKERS if WORKERS is not None else (os.cpu_count() or 1)
        return cls(
            field=Field.parse(FIELD),
            desk_cap=_int_setting("EDGEIDEAL_DESK_CAP", DESK_CAP),
            workers=_int_setting("EDGEIDEAL_WORKERS", workers),
        )

    def override(self, **changes):
        """Copy with every non-None keyword applied (CLI flags beat the environment)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
