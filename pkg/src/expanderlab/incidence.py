"""Point-plane incidence counting in F_p^3.

Planes are affine: n1*x + n2*y + n3*z = d with (n1, n2, n3) != 0, stored
with the normal scaled so its first nonzero coordinate is 1 (a unique
canonical representative per plane).  `incidence_bound_check` tests the
exact-constant spectral incidence bound

    I(P, Pi) <= |P||Pi| / p + p * sqrt(|P||Pi|),

which holds for every configuration: the point-plane incidence graph of
F_p^3 has second singular value exactly p, so the expander mixing lemma
gives the bound with constant 1.  (A sqrt(p) factor in place of p would
be false: taking all p^2 points of one plane against that single plane
already beats it.)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .fieldset import PrimeField
from .inequality import IneqReport
from .rng import sample_distinct


@dataclass(frozen=True)
class PointSet3:
    """Deduplicated points of F_p^3."""

    field: PrimeField
    points: tuple[tuple[int, int, int], ...]

    @staticmethod
    def make(field: PrimeField, points) -> "PointSet3":
        p = field.p
        dedup = sorted({(int(x), int(y), int(z)) for x, y, z in points})
        for q in dedup:
            if any(not 0 <= c < p for c in q):
                raise ValueError(f"point {q} outside [0, {p})^3")
        return PointSet3(field, tuple(dedup))

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class PlaneSet:
    """Deduplicated affine planes, each in canonical scaling."""

    field: PrimeField
    planes: tuple[tuple[int, int, int, int], ...]

    @staticmethod
    def make(field: PrimeField, planes) -> "PlaneSet":
        canon = {canonical_plane(field, *pl) for pl in planes}
        return PlaneSet(field, tuple(sorted(canon)))

    def __len__(self) -> int:
        return len(self.planes)


def canonical_plane(field: PrimeField, n1: int, n2: int, n3: int, d: int) -> tuple[int, int, int, int]:
    """Scale (n1, n2, n3, d) so the first nonzero normal coordinate is 1."""
    p = field.p
    n1, n2, n3, d = n1 % p, n2 % p, n3 % p, d % p
    for lead in (n1, n2, n3):
        if lead:
            s = field.inv(lead)
            return (n1 * s % p, n2 * s % p, n3 * s % p, d * s % p)
    raise ValueError("plane normal must be nonzero")


def all_points(field: PrimeField) -> PointSet3:
    p = field.p
    if p > 64:
        raise ValueError(f"refusing to materialize {p}^3 points")
    pts = [(x, y, z) for x in range(p) for y in range(p) for z in range(p)]
    return PointSet3(field, tuple(pts))


def all_planes(field: PrimeField) -> PlaneSet:
    """All p*(p^2 + p + 1) affine planes of F_p^3."""
    p = field.p
    if p > 64:
        raise ValueError(f"refusing to materialize all planes for p = {p}")
    normals = [(1, n2, n3) for n2 in range(p) for n3 in range(p)]
    normals += [(0, 1, n3) for n3 in range(p)]
    normals.append((0, 0, 1))
    planes = [(n1, n2, n3, d) for (n1, n2, n3) in normals for d in range(p)]
    return PlaneSet(field, tuple(planes))


def incidences(P: PointSet3, planes: PlaneSet) -> int:
    """Exact #{(q, pi) : q on pi}, by direct counting."""
    if P.field.p != planes.field.p:
        from .errors import FieldMismatchError

        raise FieldMismatchError("points and planes live in different fields")
    p = P.field.p
    if len(P) == 0 or len(planes) == 0:
        return 0
    if p <= (1 << 30) and len(P) * len(planes) > 1 << 12:
        coords = np.asarray(P.points, dtype=np.int64)
        x, y, z = coords[:, 0], coords[:, 1], coords[:, 2]
        total = 0
        for n1, n2, n3, d in planes.planes:
            total += int(np.count_nonzero((n1 * x + n2 * y + n3 * z - d) % p == 0))
        return total
    total = 0
    for qx, qy, qz in P.points:
        for n1, n2, n3, d in planes.planes:
            if (n1 * qx + n2 * qy + n3 * qz - d) % p == 0:
                total += 1
    return total


def incidence_bound_check(P: PointSet3, planes: PlaneSet) -> IneqReport:
    """Check I <= |P||Pi|/p + p*sqrt(|P||Pi|) exactly; True for every input.

    The comparison is done in integers: with N = |P||Pi|, the bound is
    p*I - N <= p^2 * sqrt(N), squared when the left side is positive.
    """
    p = P.field.p
    count = incidences(P, planes)
    n_pairs = len(P) * len(planes)
    surplus = p * count - n_pairs
    holds = surplus <= 0 or surplus * surplus <= p**4 * n_pairs
    rhs = n_pairs / p + p * sqrt(n_pairs)
    ratio = count / rhs if rhs else None
    return IneqReport(
        name="vinh-incidence",
        lhs=count,
        rhs=rhs,
        ratio=ratio,
        holds=holds,
        context={
            "p": p,
            "points": len(P),
            "planes": len(planes),
            "pairs": n_pairs,
        },
    )


def random_configuration(field: PrimeField, n_points: int, n_planes: int, seed: int):
    """Deterministic random configuration: distinct points and distinct planes."""
    p = field.p
    pt_idx = sample_distinct(p**3, n_points, seed)
    pts = [(i // (p * p), (i // p) % p, i % p) for i in pt_idx]
    n_normals = p * p + p + 1
    pl_idx = sample_distinct(n_normals * p, n_planes, seed ^ 0x51CE)
    planes = []
    for i in pl_idx:
        nidx, d = divmod(i, p)
        if nidx < p * p:
            normal = (1, nidx // p, nidx % p)
        elif nidx < p * p + p:
            normal = (0, 1, nidx - p * p)
        else:
            normal = (0, 0, 1)
        planes.append((*normal, d))
    return PointSet3.make(field, pts), PlaneSet.make(field, planes)
