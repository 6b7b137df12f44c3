"""Three-valued verdicts, search bounds, and the Unknown sentinel."""

from __future__ import annotations

from dataclasses import dataclass, field


class _Unknown:
    """Sentinel for bounded searches that exhausted their budget."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unknown"

    def __bool__(self):
        return False


UNKNOWN = _Unknown()

HOLDS = "holds"
FAILS = "fails"
UNKNOWN_STATUS = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a semi-decision check.

    `witnesses` carries structured, JSON-encodable evidence: for a failing
    verdict a checkable counterexample, for a holding existential condition
    the witnesses found.
    """

    status: str
    witnesses: tuple = ()
    note: str = ""

    @staticmethod
    def holds(witnesses=(), note=""):
        return Verdict(HOLDS, tuple(witnesses), note)

    @staticmethod
    def fails(witnesses=(), note=""):
        return Verdict(FAILS, tuple(witnesses), note)

    @staticmethod
    def unknown(witnesses=(), note=""):
        return Verdict(UNKNOWN_STATUS, tuple(witnesses), note)

    def is_holds(self):
        return self.status == HOLDS

    def is_fails(self):
        return self.status == FAILS

    def is_unknown(self):
        return self.status == UNKNOWN_STATUS

    def to_json(self):
        out = {"status": self.status, "witnesses": list(self.witnesses)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Bounds:
    """Budgets for the bounded searches in the analysis layer."""

    max_path_len: int = 6
    group_ball_radius: int = 6
    lasso_bound: int = 6
    state_bound: int = 64

    def __post_init__(self):
        for name in ("max_path_len", "group_ball_radius", "lasso_bound", "state_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def to_json(self):
        return {
            "max_path_len": self.max_path_len,
            "group_ball_radius": self.group_ball_radius,
            "lasso_bound": self.lasso_bound,
            "state_bound": self.state_bound,
        }
