"""Invariant degrees of irreducible Weyl groups and what follows from them."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from .arith import FactoredInteger
from .errors import DomainError, ValidationError

_EXCEPTIONAL = {
    "G2": (2, 6),
    "F4": (2, 6, 8, 12),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "GL": 1}


@dataclass(frozen=True)
class RootSystem:
    """An irreducible root system, or the ``GL_n`` pseudo-type.

    ``family`` is one of A, B, C, D, E, F, G, GL; exceptional types carry
    their rank in the name (``RootSystem("E", 8)``).
    """

    family: str
    rank: int

    def __post_init__(self):
        if self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise ValidationError(
                    f"type {self.family} needs rank >= {_MIN_RANK[self.family]}, got {self.rank}"
                )
        elif self.label not in _EXCEPTIONAL:
            raise ValidationError(f"no root system {self.family}{self.rank}")

    @property
    def label(self) -> str:
        if self.family == "GL":
            return f"GL{self.rank}"
        return f"{self.family}{self.rank}"

    @property
    def is_gl(self) -> bool:
        return self.family == "GL"

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        r = self.rank
        if self.family == "A":
            return tuple(range(2, r + 2))
        if self.family in ("B", "C"):
            return tuple(range(2, 2 * r + 1, 2))
        if self.family == "D":
            return tuple(sorted([*range(2, 2 * r - 1, 2), r]))
        if self.family == "GL":
            return tuple(range(1, r + 1))
        return _EXCEPTIONAL[self.label]

    def __str__(self) -> str:
        return self.label


def parse_root(text: str) -> RootSystem:
    """Parse ``A:<r>``, ``B:<r>``, ``C:<r>``, ``D:<r>``, ``GL:<n>`` or an exceptional name."""
    text = text.strip()
    if text in _EXCEPTIONAL:
        return RootSystem(text[0], int(text[1]))
    match = re.fullmatch(r"(A|B|C|D|GL):(\d+)", text)
    if not match:
        raise SyntaxError(f"unknown root system {text!r}")
    return RootSystem(match[1], int(match[2]))


def catalogue(max_rank: int = 8, include_gl: bool = False) -> list[RootSystem]:
    """Classical types up to ``max_rank`` plus the five exceptional ones."""
    out = []
    for family, lo in _MIN_RANK.items():
        if family == "GL" and not include_gl:
            continue
        out.extend(RootSystem(family, r) for r in range(lo, max_rank + 1))
    out.extend(RootSystem(name[0], int(name[1])) for name in _EXCEPTIONAL)
    return out


def degrees(R: RootSystem) -> list[int]:
    return list(R.degrees)


def weyl_order(R: RootSystem) -> FactoredInteger:
    """``|W|`` as the product of the invariant degrees."""
    if R.is_gl:
        raise DomainError("GL is not irreducible; its Weyl group order n! is gl_weyl_order")
    return FactoredInteger.product(R.degrees)


def gl_weyl_order(n: int) -> FactoredInteger:
    return FactoredInteger.product(range(2, n + 1))


def weyl_group_order(R: RootSystem) -> FactoredInteger:
    """``|W|`` for any catalogue entry, GL included (``n!``)."""
    return gl_weyl_order(R.rank) if R.is_gl else weyl_order(R)


def coxeter_number(R: RootSystem) -> int:
    return R.degrees[-1]


def a_t(R: RootSystem, t: int) -> int:
    """Number of degrees divisible by ``t``."""
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    return sum(1 for d in R.degrees if d % t == 0)


def parity_counts(R: RootSystem) -> tuple[int, int]:
    """(number of even degrees, number of odd degrees)."""
    even = sum(1 for d in R.degrees if d % 2 == 0)
    return even, len(R.degrees) - even


def regular_number(R: RootSystem, t: int) -> bool:
    """Lehrer-Springer test: ``#{d = 0 mod t} == #{d = 2 mod t}``."""
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    zero = sum(1 for d in R.degrees if d % t == 0)
    two = sum(1 for d in R.degrees if d % t == 2 % t)
    return zero == two


def positive_root_count(R: RootSystem) -> int:
    return sum(d - 1 for d in R.degrees)


def dimension(R: RootSystem) -> int:
    return sum(2 * d - 1 for d in R.degrees)


def degree_divisors(R: RootSystem) -> list[int]:
    """All ``t`` dividing at least one degree."""
    return sorted({t for d in R.degrees for t in range(1, d + 1) if d % t == 0})


def is_symmetric(R: RootSystem) -> bool:
    d = R.degrees
    h = d[-1]
    return all(d[i] + d[-1 - i] == h + 2 for i in range(len(d)))


def coprime_rule_holds(R: RootSystem) -> bool:
    """Every ``j < h`` prime to ``h`` has ``j + 1`` among the degrees."""
    h = coxeter_number(R)
    return all(j + 1 in R.degrees for j in range(1, h) if math.gcd(j, h) == 1)
