"""Shared check records and deterministic serialization helpers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Check", "fmt_rat", "fmt_sig12", "json_bytes"]


@dataclass(frozen=True)
class Check:
    """One exactly evaluated inequality with its verdict.

    Binding checks gate the tool's exit status; informational ones record
    quantities whose failure is an expected possibility, not an error.
    """

    name: str
    lhs: object
    rhs: object
    relation: str  # "<=", ">=", "=="
    holds: bool
    binding: bool = True
    note: str = ""

    def describe(self) -> str:
        verdict = "PASS" if self.holds else "FAIL"
        kind = "" if self.binding else " (informational)"
        text = f"{verdict}{kind} {self.name}: {fmt_rat(self.lhs)} {self.relation} {fmt_rat(self.rhs)}"
        if self.note:
            text += f"  [{self.note}]"
        return text

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": fmt_rat(self.lhs),
            "rhs": fmt_rat(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
            "binding": self.binding,
        }


def fmt_rat(value) -> str:
    """Canonical string for exact values: "p" or "p/q"."""
    if isinstance(value, (Fraction, int)):
        return str(value)
    return str(value)


def fmt_sig12(value) -> str:
    """Advisory real-valued quantities carry 12 significant digits."""
    return f"{float(value):.12g}"


def json_bytes(obj: dict) -> bytes:
    """Deterministic JSON: insertion order preserved, fixed separators."""
    return (json.dumps(obj, indent=2, sort_keys=False) + "\n").encode("utf-8")
