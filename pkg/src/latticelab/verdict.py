"""Verdicts: the result of a property check, with witness data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of one property check.

    `witness` holds the failing instance for a refuted universal property, or
    the certificate for an established existential one. Everything inside is
    JSON-serializable (element names, map tables as name dicts, index lists).
    """

    prop: str
    holds: bool
    witness: dict[str, Any] | None = None
    notes: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"property": self.prop, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = self.notes
        return out
