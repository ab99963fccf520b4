"""Cyclotomic invariants ``(t, m)`` of a field at a prime ``ell``.

The image of the ``ell^inf``-cyclotomic character is a closed subgroup of
``Z_ell*``.  For odd ``ell`` it is ``C_t x (1 + ell^m Z_ell)``; for
``ell = 2`` it is one of

* type a: ``<1 + 2^m>``, t = 1
* type b: ``<-1 + 2^m>``, t = 2
* type c: ``<-1, 1 + 2^m>``, t = 2

with ``m >= 2``.  Types b and c coincide when ``m`` is infinite; we then
store type b.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Union

from .arith import INF, IntOrInf, factorize, is_prime, multiplicative_order, v_ell
from .errors import DomainError, ValidationError

TWO_TYPES = ("a", "b", "c")


# ---------------------------------------------------------------------------
# field descriptors


@dataclass(frozen=True)
class Rationals:
    label = "Q"


@dataclass(frozen=True)
class RealField:
    label = "R"


@dataclass(frozen=True)
class SeparablyClosed:
    label = "Qbar"


@dataclass(frozen=True)
class FiniteField:
    q: int

    def __post_init__(self):
        if self.q < 2 or len(factorize(self.q)) != 1:
            raise ValidationError(f"finite field size must be a prime power, got {self.q}")

    @property
    def characteristic(self) -> int:
        return next(iter(factorize(self.q)))

    @property
    def label(self) -> str:
        return f"F:{self.q}"


@dataclass(frozen=True)
class PadicField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"Qp needs a prime, got {self.p}")

    @property
    def label(self) -> str:
        return f"Qp:{self.p}"


@dataclass(frozen=True)
class CyclotomicField:
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValidationError(f"cyclotomic conductor must be >= 1, got {self.N}")

    @property
    def label(self) -> str:
        return f"QzN:{self.N}"


@dataclass(frozen=True)
class Explicit:
    """Invariants given directly; they are checked against ``ell`` on use."""

    t: int
    m: IntOrInf
    two_type: Optional[str] = None

    def __post_init__(self):
        if self.t < 1:
            raise ValidationError(f"t must be >= 1, got {self.t}")
        if self.m is not INF and self.m < 1:
            raise ValidationError(f"m must be >= 1 or inf, got {self.m}")
        if self.two_type is not None and self.two_type not in TWO_TYPES:
            raise ValidationError(f"unknown type {self.two_type!r}")

    @property
    def label(self) -> str:
        s = f"explicit:t={self.t},m={self.m}"
        return s + (f",type={self.two_type}" if self.two_type else "")


FieldDescriptor = Union[
    Rationals, RealField, SeparablyClosed, FiniteField, PadicField, CyclotomicField, Explicit
]


_FIELD_RE = {
    "F": FiniteField,
    "Qp": PadicField,
    "QzN": CyclotomicField,
}


def parse_field(text: str) -> FieldDescriptor:
    """Parse ``Q``, ``R``, ``Qbar``, ``F:<q>``, ``Qp:<p>``, ``QzN:<N>`` or
    ``explicit:t=<t>,m=<m|inf>[,type=<a|b|c>]``.

    Raises ``SyntaxError`` on malformed text and ValidationError when the
    text parses but describes no valid field.
    """
    text = text.strip()
    simple = {"Q": Rationals, "R": RealField, "Qbar": SeparablyClosed}
    if text in simple:
        return simple[text]()
    head, sep, tail = text.partition(":")
    if sep and head in _FIELD_RE:
        if not re.fullmatch(r"\d+", tail):
            raise SyntaxError(f"bad field descriptor {text!r}")
        return _FIELD_RE[head](int(tail))
    if sep and head == "explicit":
        fields: dict[str, str] = {}
        for part in tail.split(","):
            key, eq, val = part.partition("=")
            if not eq or key in fields or key not in ("t", "m", "type"):
                raise SyntaxError(f"bad field descriptor {text!r}")
            fields[key] = val
        if "t" not in fields or "m" not in fields or not re.fullmatch(r"\d+", fields["t"]):
            raise SyntaxError(f"bad field descriptor {text!r}")
        if fields["m"] == "inf":
            m: IntOrInf = INF
        elif re.fullmatch(r"\d+", fields["m"]):
            m = int(fields["m"])
        else:
            raise SyntaxError(f"bad field descriptor {text!r}")
        two_type = fields.get("type")
        if two_type is not None and two_type not in TWO_TYPES:
            raise SyntaxError(f"bad field descriptor {text!r}")
        return Explicit(int(fields["t"]), m, two_type)
    raise SyntaxError(f"unknown field descriptor {text!r}")


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class CycloInvariants:
    ell: int
    t: int
    m: IntOrInf
    two_type: Optional[str] = None

    def __post_init__(self):
        ell, t, m = self.ell, self.t, self.m
        if not is_prime(ell):
            raise ValidationError(f"{ell} is not prime")
        if m is not INF and (not isinstance(m, int) or m < 1):
            raise ValidationError(f"m must be a positive integer or inf, got {m!r}")
        if ell != 2:
            if t < 1 or (ell - 1) % t:
                raise ValidationError(f"t={t} does not divide ell-1={ell - 1}")
            if self.two_type is not None:
                raise ValidationError("two_type is only meaningful for ell = 2")
            return
        if t not in (1, 2):
            raise ValidationError(f"for ell = 2, t must be 1 or 2, got {t}")
        if m is not INF and m < 2:
            raise ValidationError(f"for ell = 2, m must be >= 2, got {m}")
        kind = self.two_type
        if kind is None:
            if t == 1:
                kind = "a"
            elif m is INF:
                kind = "b"
            else:
                raise ValidationError("ell = 2 with t = 2 and finite m needs a type (b or c)")
        if kind not in TWO_TYPES:
            raise ValidationError(f"unknown type {kind!r}")
        if (kind == "a") != (t == 1):
            raise ValidationError(f"type {kind} is incompatible with t={t}")
        if m is INF and kind == "c":
            kind = "b"
        object.__setattr__(self, "two_type", kind)

    @property
    def finite(self) -> bool:
        return self.m is not INF

    def __str__(self) -> str:
        s = f"t={self.t} m={self.m}"
        return s + (f" type={self.two_type}" if self.two_type else "")

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "t": self.t,
            "m": "inf" if self.m is INF else self.m,
            "type": self.two_type,
        }


def _rationals(ell: int) -> CycloInvariants:
    if ell == 2:
        return CycloInvariants(2, 2, 2, "c")
    return CycloInvariants(ell, ell - 1, 1)


def _finite(q: int, ell: int) -> CycloInvariants:
    if q % ell == 0:
        raise DomainError(f"ell={ell} divides q={q}: the characteristic must differ from ell")
    if ell == 2:
        if q % 4 == 1:
            return CycloInvariants(2, 1, v_ell(q - 1, 2), "a")
        return CycloInvariants(2, 2, v_ell(q + 1, 2), "b")
    t = multiplicative_order(q, ell)
    return CycloInvariants(ell, t, v_ell(q**t - 1, ell))


def invariants(field: FieldDescriptor, ell: int) -> CycloInvariants:
    """The invariants ``(t, m, type)`` of ``field`` at the prime ``ell``."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if isinstance(field, Rationals):
        return _rationals(ell)
    if isinstance(field, PadicField):
        return _rationals(ell) if field.p == ell else _finite(field.p, ell)
    if isinstance(field, FiniteField):
        return _finite(field.q, ell)
    if isinstance(field, RealField):
        return CycloInvariants(ell, 2, INF, "b" if ell == 2 else None)
    if isinstance(field, SeparablyClosed):
        return CycloInvariants(ell, 1, INF, "a" if ell == 2 else None)
    if isinstance(field, CyclotomicField):
        n = field.N
        if ell == 2 and n % 4 == 2:
            n //= 2
        a = v_ell(n, ell)
        if ell == 2:
            return CycloInvariants(2, 2, 2, "c") if a <= 1 else CycloInvariants(2, 1, a, "a")
        return CycloInvariants(ell, ell - 1, 1) if a == 0 else CycloInvariants(ell, 1, a)
    if isinstance(field, Explicit):
        return CycloInvariants(ell, field.t, field.m, field.two_type if ell == 2 else _no_type(field))
    raise TypeError(f"not a field descriptor: {field!r}")


def _no_type(field: Explicit) -> None:
    if field.two_type is not None:
        raise ValidationError("a 2-adic type was given for an odd prime")
    return None


# ---------------------------------------------------------------------------
# invariants read off a finite-level image


@dataclass(frozen=True)
class AtLeast:
    """A lower bound reported when precision runs out."""

    bound: int

    def __str__(self) -> str:
        return f">={self.bound}"


@dataclass(frozen=True)
class SubgroupInvariants:
    t: int
    m: Union[int, AtLeast]
    two_type: Optional[str] = None

    @property
    def conclusive(self) -> bool:
        return isinstance(self.m, int)


def _unit_part_valuation(values: list[int], ell: int, K: int) -> int:
    """Least ``v_ell(u - 1)`` over ``values`` (all ``1 mod ell``), capped at ``K``."""
    mod = ell**K
    best = K
    for u in values:
        r = (u - 1) % mod
        if r:
            best = min(best, v_ell(r, ell))
    return best


def invariants_from_subgroup(generators: list[int], ell: int, K: int) -> SubgroupInvariants:
    """``(t, m, type)`` of the closed subgroup of ``Z_ell*`` whose image mod ``ell^K``
    is generated by ``generators``.

    ``m`` is conclusive only when it is at most ``K - 2``; otherwise the
    result carries ``AtLeast(K - 1)``.
    """
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if K < 1:
        raise DomainError(f"precision must be >= 1, got {K}")
    mod = ell**K
    gens = [g % mod for g in generators] or [1]
    for g in gens:
        if g % ell == 0:
            raise DomainError(f"generator {g} is not a unit mod {ell}")
    ceiling = K - 1

    def clip(m: int) -> Union[int, AtLeast]:
        return m if m < ceiling else AtLeast(ceiling)

    if ell != 2:
        # image in F_ell* is cyclic, so its order is the lcm of the generator orders
        t = 1
        for g in gens:
            t = math.lcm(t, multiplicative_order(g, ell))
        # u -> u^(ell-1) kills the torsion part without moving v(u - 1)
        m = _unit_part_valuation([pow(g, ell - 1, mod) for g in gens], ell, K)
        return SubgroupInvariants(t, clip(m))

    odd = [g for g in gens if g % 4 == 3]
    if not odd:
        return SubgroupInvariants(1, clip(_unit_part_valuation(gens, 2, K)), "a")
    g0 = odd[0]
    unit_gens = [g for g in gens if g % 4 == 1] + [g * g0 % mod for g in odd] + [g0 * g0 % mod]
    mu = _unit_part_valuation(unit_gens, 2, K)
    r = (g0 + 1) % mod
    nu = K if r == 0 else v_ell(r, 2)
    if nu >= mu and mu < ceiling:
        return SubgroupInvariants(2, mu, "c")
    if nu < ceiling:
        return SubgroupInvariants(2, nu, "b")
    # -1 and the unit part are indistinguishable at this precision
    return SubgroupInvariants(2, AtLeast(ceiling), "b")
