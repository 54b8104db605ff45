"""Three-valued truth values (yes / no / unknown).

Unknown means "the rule set does not decide this", never "probably".
Statements only ever move from unknown to yes or no; a yes/no clash is an
error surfaced to the caller, not silently resolved.
"""
from __future__ import annotations

import enum


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool | None) -> "Tri":
        if value is None:
            return cls.UNKNOWN
        return cls.YES if value else cls.NO

    @property
    def known(self) -> bool:
        return self is not Tri.UNKNOWN

    def negate(self) -> "Tri":
        if self is Tri.YES:
            return Tri.NO
        if self is Tri.NO:
            return Tri.YES
        return Tri.UNKNOWN

    def __bool__(self) -> bool:
        # Force explicit comparisons; `if tri:` is a latent bug.
        raise TypeError("Tri has no truth value; compare against Tri.YES/NO")

    def __repr__(self) -> str:
        return f"Tri.{self.name}"


YES = Tri.YES
NO = Tri.NO
UNKNOWN = Tri.UNKNOWN
