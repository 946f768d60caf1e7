"""Commutative semirings: the value sets all arrays are computed over.

Supported kinds: boolean, nat64 (checked 64-bit overflow), int_mod(m),
min_plus (tropical), float64 (inexact, demonstration only).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PlexusError, Verdict

NAT64_MAX = 2**64 - 1
INF = math.inf

KINDS = ("boolean", "nat64", "int_mod", "min_plus", "float64")


@dataclass(frozen=True)
class Semiring:
    kind: str
    modulus: int = 0

    # -- carrier ---------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.kind != "float64"

    def zero(self):
        if self.kind == "min_plus":
            return INF
        if self.kind == "float64":
            return 0.0
        return 0

    def one(self):
        if self.kind == "min_plus":
            return 0
        if self.kind == "float64":
            return 1.0
        return 1

    def validate(self, x) -> None:
        k = self.kind
        if k == "boolean":
            if x not in (0, 1):
                raise PlexusError("BAD_ELEMENT", f"boolean element must be 0 or 1, got {x!r}")
        elif k == "nat64":
            if not isinstance(x, int) or not (0 <= x <= NAT64_MAX):
                raise PlexusError("BAD_ELEMENT", f"nat64 element out of range: {x!r}")
        elif k == "int_mod":
            if not isinstance(x, int) or not (0 <= x < self.modulus):
                raise PlexusError("BAD_ELEMENT", f"int_mod({self.modulus}) element out of range: {x!r}")
        elif k == "min_plus":
            if x != INF and (not isinstance(x, int) or x < 0):
                raise PlexusError("BAD_ELEMENT", f"min_plus element must be a natural or inf, got {x!r}")
        elif k == "float64":
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise PlexusError("BAD_ELEMENT", f"float64 element must be a number, got {x!r}")

    def elements(self):
        """Full carrier for the finite kinds; error otherwise."""
        if self.kind == "boolean":
            return [0, 1]
        if self.kind == "int_mod":
            return list(range(self.modulus))
        raise PlexusError("INFINITE_CARRIER", f"{self.kind} has no finite carrier to enumerate")

    def random_element(self, rng):
        k = self.kind
        if k == "boolean":
            return rng.randint(0, 1)
        if k == "nat64":
            return rng.randint(0, 3)
        if k == "int_mod":
            return rng.randrange(self.modulus)
        if k == "min_plus":
            return INF if rng.random() < 0.2 else rng.randint(0, 9)
        return rng.random()

    # -- operations ------------------------------------------------------

    def add(self, x, y):
        k = self.kind
        if k == "boolean":
            return x | y
        if k == "nat64":
            r = x + y
            if r > NAT64_MAX:
                raise PlexusError("OVERFLOW", f"nat64 addition overflow: {x} + {y}")
            return r
        if k == "int_mod":
            return (x + y) % self.modulus
        if k == "min_plus":
            return x if x <= y else y
        return x + y

    def mul(self, x, y):
        k = self.kind
        if k == "boolean":
            return x & y
        if k == "nat64":
            r = x * y
            if r > NAT64_MAX:
                raise PlexusError("OVERFLOW", f"nat64 multiplication overflow: {x} * {y}")
            return r
        if k == "int_mod":
            return (x * y) % self.modulus
        if k == "min_plus":
            if x == INF or y == INF:
                return INF
            return x + y
        return x * y

    def eq(self, x, y) -> bool:
        if self.kind == "float64":
            return math.isclose(x, y, rel_tol=1e-9, abs_tol=1e-12)
        return x == y

    # -- serialization ---------------------------------------------------

    @property
    def name(self) -> str:
        if self.kind == "int_mod":
            return f"int-mod:{self.modulus}"
        return self.kind.replace("_", "-")

    def element_to_json(self, x):
        if self.kind == "min_plus" and x == INF:
            return "inf"
        return x

    def element_from_json(self, v):
        if self.kind == "min_plus" and v == "inf":
            return INF
        if self.kind == "float64":
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise PlexusError("BAD_ELEMENT", f"not a float64 element: {v!r}")
            return float(v)
        if isinstance(v, bool) or not isinstance(v, int):
            raise PlexusError("BAD_ELEMENT", f"not an integer element: {v!r}")
        self.validate(v)
        return v


def make_semiring(kind: str, modulus: int | None = None) -> Semiring:
    kind = kind.replace("-", "_")
    if kind not in KINDS:
        raise PlexusError("UNKNOWN_KIND", f"unknown semiring kind {kind!r}")
    if kind == "int_mod":
        if modulus is None or modulus < 2:
            raise PlexusError("BAD_MODULUS", f"int_mod needs a modulus >= 2, got {modulus!r}")
        return Semiring("int_mod", modulus)
    if modulus is not None:
        raise PlexusError("BAD_MODULUS", f"{kind} takes no modulus")
    return Semiring(kind)


def parse_semiring(name: str) -> Semiring:
    """Parse the file/CLI spelling: boolean | nat64 | int-mod:<m> | min-plus | float64."""
    if name.startswith("int-mod:") or name.startswith("int_mod:"):
        try:
            m = int(name.split(":", 1)[1])
        except ValueError:
            raise PlexusError("BAD_MODULUS", f"bad modulus in {name!r}") from None
        return make_semiring("int_mod", m)
    return make_semiring(name)


def check_semiring_axioms(s: Semiring, samples=None) -> Verdict:
    """Exhaustive over the carrier for boolean/int_mod, over samples otherwise."""
    if s.kind in ("boolean", "int_mod"):
        elems = s.elements()
    else:
        if not samples:
            raise PlexusError("BAD_SAMPLES", "samples required for infinite carriers")
        elems = list(samples)
    zero, one = s.zero(), s.one()
    for a in elems:
        if not s.eq(s.add(a, zero), a):
            return Verdict(False, "additive identity", (a,))
        if not s.eq(s.mul(a, one), a):
            return Verdict(False, "multiplicative identity", (a,))
        if not s.eq(s.mul(a, zero), zero):
            return Verdict(False, "zero absorbing", (a,))
        for b in elems:
            if not s.eq(s.add(a, b), s.add(b, a)):
                return Verdict(False, "additive commutativity", (a, b))
            if not s.eq(s.mul(a, b), s.mul(b, a)):
                return Verdict(False, "multiplicative commutativity", (a, b))
            for c in elems:
                if not s.eq(s.add(s.add(a, b), c), s.add(a, s.add(b, c))):
                    return Verdict(False, "additive associativity", (a, b, c))
                if not s.eq(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c))):
                    return Verdict(False, "multiplicative associativity", (a, b, c))
                if not s.eq(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c))):
                    return Verdict(False, "distributivity", (a, b, c))
    return Verdict(True)
