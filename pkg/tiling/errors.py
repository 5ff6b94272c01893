"""Exceptions and non-error solver outcomes shared across the toolkit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class TilingError(Exception):
    """Base class for toolkit errors."""

    code = "error"

    def __init__(self, message: str, *, detail: dict[str, Any] | None = None):
        self.detail = detail or {}
        super().__init__(message)


class InvalidArgument(TilingError):
    """Raised when an operation's precondition is violated."""

    code = "invalid-argument"


class Unsupported(TilingError):
    """Raised for parameters the construction does not support."""

    code = "unsupported"


class BudgetExhausted(TilingError):
    """Raised inside a search when its node limit is reached."""

    code = "budget"

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} nodes", detail={"nodes": nodes})


class FormatError(InvalidArgument):
    """Raised when a graph, copy or certificate file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}", detail={"line": line})


@dataclass(frozen=True, slots=True)
class Infeasible:
    """Certified negative outcome (exhausted search or divisibility)."""

    reason: str
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, slots=True)
class Unknown:
    """Search aborted on its node budget; ``best`` holds any incumbent."""

    reason: str
    nodes: int = 0
    best: Any = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, slots=True)
class NotFound:
    """Exhaustive search found no witness."""

    reason: str

    def __bool__(self) -> bool:
        return False
