"""Size caps for the exponential searches."""
from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_VERTICES = "MINORLAB_MAX_VERTICES"


class CapExceeded(ValueError):
    """An input is larger than the configured search cap."""


@dataclass(frozen=True)
class Limits:
    # host-graph cap for minor / topological-minor search and pattern cap for subgraph search
    max_vertices: int = 14
    # the deletion/contraction closure oracle blows up much faster
    max_closure_vertices: int = 12

    @classmethod
    def from_env(cls) -> "Limits":
        raw = os.environ.get(ENV_MAX_VERTICES)
        if not raw:
            return cls()
        try:
            cap = int(raw)
        except ValueError:
            raise CapExceeded(f"{ENV_MAX_VERTICES} must be an integer, got {raw!r}") from None
        return cls(max_vertices=cap, max_closure_vertices=cap)


def current_limits(limits: Limits | None = None) -> Limits:
    return limits if limits is not None else Limits.from_env()


def require(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what} has {size} vertices; the cap is {cap} (set {ENV_MAX_VERTICES} to raise it)")
