"""Coefficient fields for the one-variable rings used by the engine.

Two kinds of field are supported.  PrimeField(p) is the field with p
elements, p prime; its elements are the integers 0..p-1 and polynomial
arithmetic over it is exact.  SymbolicAlgClosed() stands for an arbitrary
algebraically closed field whose elements are never computed with directly:
points of the line over it are opaque string labels, and every polynomial
over it must be presented in factored form.

Labels are nonempty strings over [A-Za-z0-9_].  The names "inf" and "gen"
are reserved for the point at infinity and for generic points and are not
valid element labels.
"""

import re
from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .errors import QfiltError

RESERVED_LABELS = frozenset({"inf", "gen"})
_LABEL_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The finite field with p elements, p prime and desk-scale."""

    p: int

    def validate(self, limits: Limits = DEFAULT_LIMITS) -> "PrimeField":
        if not is_prime(self.p):
            raise QfiltError(f"modulus {self.p} is not prime")
        if self.p > limits.max_prime:
            raise QfiltError(f"prime {self.p} exceeds limit {limits.max_prime}")
        return self

    def __str__(self) -> str:
        return f"F{self.p}"


@dataclass(frozen=True)
class SymbolicAlgClosed:
    """An algebraically closed field with opaque element labels."""

    def __str__(self) -> str:
        return "kbar"


BaseField = PrimeField | SymbolicAlgClosed


def check_label(label: str) -> str:
    """Validate a symbolic element label and return it."""
    if not isinstance(label, str) or not _LABEL_RE.match(label):
        raise QfiltError(f"bad label {label!r}: expected [A-Za-z0-9_]+")
    if label in RESERVED_LABELS:
        raise QfiltError(f"label {label!r} is reserved")
    return label


def field_from_literal(value) -> BaseField:
    """Build a field from its literal form: {"p": 2} or "symbolic"."""
    if value == "symbolic":
        return SymbolicAlgClosed()
    if isinstance(value, dict) and set(value) == {"p"}:
        return PrimeField(int(value["p"])).validate()
    raise QfiltError(f"bad field literal {value!r}")


def field_to_literal(field: BaseField):
    if isinstance(field, PrimeField):
        return {"p": field.p}
    return "symbolic"
