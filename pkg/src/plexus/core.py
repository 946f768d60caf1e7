"""Shared plumbing: index sets, error type, verdicts, id ordering."""
from __future__ import annotations

import re
from dataclasses import dataclass


class PlexusError(Exception):
    """Any validation or conformability failure. `code` is machine-readable."""

    def __init__(self, code: str, message: str, location: str | None = None):
        self.code = code
        self.location = location
        super().__init__(message)

    def __str__(self) -> str:
        base = super().__str__()
        if self.location:
            return f"[{self.code}] {base} (at {self.location})"
        return f"[{self.code}] {base}"


@dataclass(frozen=True)
class IndexSet:
    """A named finite index set. Conformability compares both name and size."""

    id: str
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise PlexusError("BAD_INDEX_SET", f"index set {self.id!r} needs size >= 1, got {self.size}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check; `witness` carries the first counterexample."""

    ok: bool
    law: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


_SPLIT_DIGITS = re.compile(r"(\d+)")


def natural_key(s: str):
    """Sort key treating digit runs numerically, so v2 < v10."""
    return tuple(int(part) if part.isdigit() else part for part in _SPLIT_DIGITS.split(s))
