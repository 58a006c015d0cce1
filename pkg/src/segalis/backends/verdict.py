from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class IsoVerdict:
    """Outcome of an isomorphism (or equivalence) test with a witness on failure."""

    ok: bool
    witness: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok
