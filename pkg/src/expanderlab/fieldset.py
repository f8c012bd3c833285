"""Exact arithmetic in F_p for odd primes p, and the canonical set type.

Every other module consumes these two types.  `PrimeField` is a value
object: all arithmetic returns plain ints in [0, p).  `FpSet` stores a
deduplicated, strictly increasing tuple of residues; treat instances as
immutable.  Both are safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import (
    CompositeModulusError,
    ElementOutOfRangeError,
    EvenModulusError,
    GeneratorNotUnitError,
    ModulusTooLargeError,
    SizeExceedsFieldError,
    SpecSyntaxError,
)

# Keeps x*y below 2**122 so exact products never need arbitrary precision
# in compiled helpers; Python ints would cope, numpy paths would not.
MAX_MODULUS = (1 << 61) - 1

# Deterministic Miller-Rabin witness set, exact for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DENSE_UNIVERSE_MAX = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic primality for 64-bit range inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p, p an odd prime in [3, 2**61 - 1]."""

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int):
            raise SpecSyntaxError(f"modulus must be an integer, got {type(p).__name__}")
        if p == 2:
            raise EvenModulusError("p = 2 is rejected: the algebra here divides by 2")
        if p > MAX_MODULUS:
            raise ModulusTooLargeError(f"modulus {p} exceeds 2**61 - 1")
        if not is_prime(p):
            raise CompositeModulusError(f"{p} is not prime")

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def neg(self, x: int) -> int:
        return (-x) % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return pow(x, self.p - 2, self.p)

    def reduce(self, x: int) -> int:
        return x % self.p

    def __repr__(self) -> str:
        return f"F_{self.p}"


def make_field(p: int) -> PrimeField:
    """Construct F_p, rejecting p = 2 and composite or oversized moduli."""
    return PrimeField(p)


class FpSet:
    """A finite subset of F_p: deduplicated, strictly increasing residues.

    Instances are immutable by convention; `elements` is a tuple and must
    not be replaced.  Membership is a set lookup; `as_array` returns a
    cached numpy view for bulk counting loops.
    """

    __slots__ = ("field", "elements", "_member", "_arr")

    def __init__(self, field: PrimeField, elements, *, reduce: bool = False):
        p = field.p
        if reduce:
            elems = sorted({int(e) % p for e in elements})
        else:
            elems = sorted({int(e) for e in elements})
            if elems and (elems[0] < 0 or elems[-1] >= p):
                bad = elems[0] if elems[0] < 0 else elems[-1]
                raise ElementOutOfRangeError(f"element {bad} outside [0, {p})")
        self.field = field
        self.elements = tuple(elems)
        self._member = frozenset(elems)
        self._arr = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._member

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpSet)
            and self.field.p == other.field.p
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.elements))

    def __repr__(self) -> str:
        if len(self.elements) <= 8:
            body = ",".join(map(str, self.elements))
        else:
            head = ",".join(map(str, self.elements[:6]))
            body = f"{head},...({len(self.elements)} elems)"
        return f"FpSet(F_{self.field.p}, {{{body}}})"

    def as_array(self, dtype=np.int64) -> np.ndarray:
        if self._arr is None or self._arr.dtype != np.dtype(dtype):
            self._arr = np.asarray(self.elements, dtype=dtype)
        return self._arr

    def indicator(self) -> np.ndarray:
        """Dense 0/1 membership array; only for universes up to 2**20."""
        p = self.field.p
        if p > DENSE_UNIVERSE_MAX:
            raise ValueError(f"indicator array refused for p = {p} > 2**20")
        ind = np.zeros(p, dtype=np.uint8)
        if self.elements:
            ind[self.as_array()] = 1
        return ind


def full_set(field: PrimeField) -> FpSet:
    """All of F_p; intended for small p only."""
    if field.p > DENSE_UNIVERSE_MAX:
        raise SizeExceedsFieldError(f"refusing to materialize all of F_{field.p}")
    return FpSet(field, range(field.p))


def _split_payload(spec: str) -> tuple[str, str]:
    head, sep, payload = spec.partition(":")
    if not sep:
        raise SpecSyntaxError(f"descriptor {spec!r} has no ':' separator")
    return head.strip(), payload


def _ints(payload: str, expect: int, what: str) -> list[int]:
    parts = payload.split(",")
    if len(parts) != expect:
        raise SpecSyntaxError(f"{what} takes {expect} integers, got {len(parts)}: {payload!r}")
    try:
        return [int(s) for s in parts]
    except ValueError as exc:
        raise SpecSyntaxError(f"bad integer in {what} descriptor: {payload!r}") from exc


def parse_set(field: PrimeField, spec: str) -> FpSet:
    """Build an FpSet from a descriptor string.

    Grammar (integers decimal; all but `list` values reduced mod p):

        list:v1,v2,...      explicit residues, must already lie in [0, p)
        interval:start,len  {start, start+1, ..., start+len-1} mod p
        ap:start,step,len   arithmetic progression
        gp:gen,len          powers gen^1 .. gen^len, gen a unit
        rand:len,seed       len distinct residues, deterministic in seed
    """
    p = field.p
    kind, payload = _split_payload(spec)
    if kind == "list":
        if payload.strip() == "":
            return FpSet(field, ())
        try:
            values = [int(s) for s in payload.split(",")]
        except ValueError as exc:
            raise SpecSyntaxError(f"bad integer in list descriptor: {payload!r}") from exc
        return FpSet(field, values)
    if kind == "interval":
        start, length = _ints(payload, 2, "interval")
        _check_length(length, p)
        return FpSet(field, ((start + i) % p for i in range(length)), reduce=True)
    if kind == "ap":
        start, step, length = _ints(payload, 3, "ap")
        _check_length(length, p)
        return FpSet(field, ((start + i * step) % p for i in range(length)), reduce=True)
    if kind == "gp":
        gen, length = _ints(payload, 2, "gp")
        _check_length(length, p)
        g = gen % p
        if g == 0:
            raise GeneratorNotUnitError(f"gp generator {gen} is 0 mod {p}")
        acc, values = 1, []
        for _ in range(length):
            acc = acc * g % p
            values.append(acc)
        return FpSet(field, values, reduce=True)
    if kind == "rand":
        length, seed = _ints(payload, 2, "rand")
        _check_length(length, p)
        return FpSet(field, rng.sample_distinct(p, length, seed))
    raise SpecSyntaxError(f"unknown set descriptor kind {kind!r}")


def _check_length(length: int, p: int) -> None:
    if length < 0:
        raise SpecSyntaxError(f"negative length {length}")
    if length > p:
        raise SizeExceedsFieldError(f"length {length} exceeds field size {p}")


def render_set(s: FpSet) -> str:
    """Canonical descriptor; parse_set(field, render_set(S)) == S."""
    return "list:" + ",".join(map(str, s.elements))


def require_same_field(*sets) -> PrimeField:
    field = sets[0].field
    for s in sets[1:]:
        if s.field.p != field.p:
            from .errors import FieldMismatchError

            raise FieldMismatchError(f"mixed moduli {field.p} and {s.field.p}")
    return field
