"""Deterministic generators of structured set families for size sweeps.

A family fixes the shape (interval, arithmetic or geometric progression,
seeded random draw, or a union of two sub-families) and `generate`
instantiates it at any requested size.  Generation is a pure function of
(spec, field, size): the same inputs always produce the same set, and
the result has exactly the requested size or an error is raised - never
a silent truncation.

Descriptor grammar (the set grammar with the length slot left to the
caller): `interval:start` | `ap:start,step` | `gp:gen` | `rand` |
`union:<desc>|<desc>`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    GeneratorNotUnitError,
    ProgressionCollisionError,
    SizeExceedsFieldError,
    SpecSyntaxError,
)
from .fieldset import FpSet, PrimeField
from .rng import derive_seed, sample_distinct

KINDS = ("interval", "ap", "gp", "rand", "union")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = ()
    seed: int = 0
    parts: tuple["FamilySpec", ...] = ()

    def describe(self) -> str:
        if self.kind == "union":
            return "union:" + "|".join(p.describe() for p in self.parts)
        if self.params:
            return f"{self.kind}:" + ",".join(map(str, self.params))
        return self.kind


def parse_family(desc: str, seed: int = 0) -> FamilySpec:
    """Parse a family descriptor; `seed` feeds any random components."""
    desc = desc.strip()
    if desc.startswith("union:"):
        body = desc[len("union:"):]
        halves = body.split("|")
        if len(halves) != 2:
            raise SpecSyntaxError(f"union takes exactly two sub-descriptors: {desc!r}")
        parts = tuple(
            parse_family(half, derive_seed(seed, i)) for i, half in enumerate(halves)
        )
        return FamilySpec("union", seed=seed, parts=parts)
    head, sep, payload = desc.partition(":")
    kind = head.strip()
    if kind == "rand":
        if sep and payload.strip():
            raise SpecSyntaxError("rand family takes no parameters; the seed is supplied separately")
        return FamilySpec("rand", seed=seed)
    expected = {"interval": 1, "ap": 2, "gp": 1}
    if kind not in expected:
        raise SpecSyntaxError(f"unknown family kind {kind!r}")
    if not sep:
        raise SpecSyntaxError(f"{kind} family needs parameters: {desc!r}")
    parts = payload.split(",")
    if len(parts) != expected[kind]:
        raise SpecSyntaxError(f"{kind} takes {expected[kind]} parameter(s), got {len(parts)}")
    try:
        params = tuple(int(s) for s in parts)
    except ValueError as exc:
        raise SpecSyntaxError(f"bad integer in family descriptor {desc!r}") from exc
    return FamilySpec(kind, params=params, seed=seed)


def generate(spec: FamilySpec, field: PrimeField, size: int) -> FpSet:
    """Instantiate the family at `size` elements exactly."""
    p = field.p
    if size < 0:
        raise SpecSyntaxError(f"negative size {size}")
    if size > p:
        raise SizeExceedsFieldError(f"size {size} exceeds field size {p}")
    if spec.kind == "interval":
        start = spec.params[0] % p
        return FpSet(field, ((start + i) % p for i in range(size)), reduce=True)
    if spec.kind == "ap":
        start, step = spec.params[0] % p, spec.params[1] % p
        if step == 0:
            raise ProgressionCollisionError("ap step is 0 mod p")
        return FpSet(field, ((start + i * step) % p for i in range(size)), reduce=True)
    if spec.kind == "gp":
        gen = spec.params[0] % p
        if gen == 0:
            raise GeneratorNotUnitError(f"gp generator {spec.params[0]} is 0 mod {p}")
        acc, seen = 1, []
        for _ in range(size):
            acc = acc * gen % p
            seen.append(acc)
        out = FpSet(field, seen)
        if len(out) != size:
            raise ProgressionCollisionError(
                f"generator {gen} has multiplicative order {len(out)} < {size}"
            )
        return out
    if spec.kind == "rand":
        return FpSet(field, sample_distinct(p, size, spec.seed))
    if spec.kind == "union":
        first = generate(spec.parts[0], field, size - size // 2)
        second = generate(spec.parts[1], field, size // 2)
        merged = FpSet(field, first.elements + second.elements)
        if len(merged) != size:
            raise ProgressionCollisionError(
                f"union parts overlap: {len(merged)} distinct elements, wanted {size}"
            )
        return merged
    raise SpecSyntaxError(f"unknown family kind {spec.kind!r}")
