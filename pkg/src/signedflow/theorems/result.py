from __future__ import annotations

from dataclasses import dataclass, field

from ..core import IntFlow


@dataclass(frozen=True)
class FlowResult:
    """A constructed flow, the bound it was built for and the branch taken."""

    flow: IntFlow
    k: int
    trace: tuple[str, ...]
    exceptional: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def trace_text(self) -> str:
        return " / ".join(self.trace)
