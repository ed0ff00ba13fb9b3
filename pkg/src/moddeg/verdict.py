"""Three-valued outcome type shared across the toolkit."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PROVED = "proved"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    status is one of "proved", "refuted", "unknown".  witness carries the
    positive certificate (e.g. an invertible intertwiner), certificate the
    negative one (e.g. a Hom-dimension mismatch), log the search effort.
    """

    status: str
    witness: Any = None
    certificate: Any = None
    log: dict = field(default_factory=dict)

    @property
    def is_proved(self):
        return self.status == PROVED

    @property
    def is_refuted(self):
        return self.status == REFUTED

    @property
    def is_unknown(self):
        return self.status == UNKNOWN

    def __bool__(self):
        return self.is_proved

    def describe(self):
        extra = ""
        if self.certificate is not None:
            extra = f" [{self.certificate}]"
        elif self.log:
            extra = f" {self.log}"
        return f"{self.status}{extra}"


def proved(witness=None, **log):
    return Verdict(PROVED, witness=witness, log=log)


def refuted(certificate=None, **log):
    return Verdict(REFUTED, certificate=certificate, log=log)


def unknown(**log):
    return Verdict(UNKNOWN, log=log)
