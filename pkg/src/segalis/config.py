"""Run configuration shared by the command line and scripts."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from dataclasses import field as dc_field

from .triangulations import DEFAULT_FLIP_GUARDS

FORMATS = ("json", "dot", "text")


@dataclass(frozen=True)
class Config:
    max_n: int = 8
    max_d: int = 4
    cutoff: int = 1
    field: str = "QQ"
    seed: int = 0
    format: str = "text"
    verbosity: int = 0
    jobs: int = 1
    flip_guards: dict[int, int] = dc_field(default_factory=lambda: dict(DEFAULT_FLIP_GUARDS))

    def __post_init__(self) -> None:
        for name in ("max_n", "max_d", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")

    def to_json(self) -> dict:
        return asdict(self)
