"""Quadratic polynomials over F_p in two and three variables.

Provides the composition-form classifiers used throughout the library:

* `classify_degenerate` decides whether f(x,y) can be written as Q(L(x,y))
  with Q univariate and L a linear form, returning a reconstructing
  witness when it can.
* `lift_to_three` substitutes x -> u+v, giving the three-variable
  polynomial f(u+v, w).
* `classify_form3` decides whether a three-variable quadratic splits as
  g(h(x)+k(y)+l(z)) for single-variable g, h, k, l.

Witnesses are always re-verified by evaluation before being returned:
the closed-form coefficient conditions are validated against brute-force
composition oracles in the test suite, and composition is re-checked per
call so a bad witness can never escape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecSyntaxError
from .fieldset import PrimeField
from .rng import SplitMix64

# Full-grid witness verification below this modulus; random spot checks above.
_EXHAUSTIVE_VERIFY_MAX_P = 31
_RANDOM_VERIFY_POINTS = 1000


@dataclass(frozen=True)
class QuadPoly2:
    """f(x, y) = a*x^2 + b*y^2 + c*x*y + d*x + e*y + g0, coefficients in [0, p)."""

    field: PrimeField
    a: int
    b: int
    c: int
    d: int
    e: int
    g0: int = 0

    def __post_init__(self):
        p = self.field.p
        for name in ("a", "b", "c", "d", "e", "g0"):
            v = getattr(self, name)
            if not 0 <= v < p:
                object.__setattr__(self, name, v % p)

    @property
    def is_quadratic(self) -> bool:
        return (self.a, self.b, self.c) != (0, 0, 0)

    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.g0)


@dataclass(frozen=True)
class QuadPoly3:
    """F(x, y, z) with quadratic part (cxx, cyy, czz, cxy, cxz, cyz), linear part
    (cx, cy, cz) and constant c0."""

    field: PrimeField
    cxx: int
    cyy: int
    czz: int
    cxy: int
    cxz: int
    cyz: int
    cx: int
    cy: int
    cz: int
    c0: int = 0

    def __post_init__(self):
        p = self.field.p
        for name in ("cxx", "cyy", "czz", "cxy", "cxz", "cyz", "cx", "cy", "cz", "c0"):
            v = getattr(self, name)
            if not 0 <= v < p:
                object.__setattr__(self, name, v % p)

    def coefficients(self) -> tuple[int, ...]:
        return (
            self.cxx, self.cyy, self.czz,
            self.cxy, self.cxz, self.cyz,
            self.cx, self.cy, self.cz, self.c0,
        )

    @property
    def cross_terms(self) -> tuple[int, int, int]:
        return (self.cxy, self.cxz, self.cyz)


@dataclass(frozen=True)
class DegeneracyVerdict:
    """Outcome of the Q(L(x, y)) test.

    When `degenerate`, `q` holds (q2, q1, q0) with Q(t) = q2*t^2 + q1*t + q0
    and `linear` holds (alpha, beta) with L = alpha*x + beta*y, and the pair
    reproduces f identically.
    """

    degenerate: bool
    q: tuple[int, int, int] | None = None
    linear: tuple[int, int] | None = None

    @property
    def tag(self) -> str:
        return "degenerate" if self.degenerate else "non-degenerate"


@dataclass(frozen=True)
class Form3Verdict:
    """Outcome of the g(h(x)+k(y)+l(z)) test.

    When `of_form`, each of `g`, `h`, `k`, `l` is a coefficient triple
    (c2, c1, c0) of a univariate polynomial of degree <= 2, and
    g(h(x)+k(y)+l(z)) reproduces F identically.
    """

    of_form: bool
    g: tuple[int, int, int] | None = None
    h: tuple[int, int, int] | None = None
    k: tuple[int, int, int] | None = None
    l: tuple[int, int, int] | None = None

    @property
    def tag(self) -> str:
        return "of-form" if self.of_form else "not-of-form"


def parse_poly2(field: PrimeField, spec: str) -> QuadPoly2:
    """Parse `quad2:a,b,c,d,e,g0` (decimal, reduced mod p)."""
    head, sep, payload = spec.partition(":")
    if not sep or head.strip() != "quad2":
        raise SpecSyntaxError(f"polynomial descriptor must be quad2:a,b,c,d,e,g0, got {spec!r}")
    parts = payload.split(",")
    if len(parts) != 6:
        raise SpecSyntaxError(f"quad2 takes 6 coefficients, got {len(parts)}")
    try:
        a, b, c, d, e, g0 = (int(s) % field.p for s in parts)
    except ValueError as exc:
        raise SpecSyntaxError(f"bad integer in quad2 descriptor: {payload!r}") from exc
    return QuadPoly2(field, a, b, c, d, e, g0)


def render_poly2(f: QuadPoly2) -> str:
    return "quad2:" + ",".join(map(str, f.coefficients()))


def eval2(f: QuadPoly2, x: int, y: int) -> int:
    p = f.field.p
    return (f.a * x * x + f.b * y * y + f.c * x * y + f.d * x + f.e * y + f.g0) % p


def eval3(F: QuadPoly3, x: int, y: int, z: int) -> int:
    p = F.field.p
    return (
        F.cxx * x * x + F.cyy * y * y + F.czz * z * z
        + F.cxy * x * y + F.cxz * x * z + F.cyz * y * z
        + F.cx * x + F.cy * y + F.cz * z + F.c0
    ) % p


def swap_normalize(f: QuadPoly2) -> QuadPoly2:
    """Swap the two arguments when that moves a nonzero coefficient onto x^2.

    Swapping leaves the image f(A, A) unchanged because both arguments
    range over the same set.
    """
    if f.a == 0 and f.b != 0:
        return QuadPoly2(f.field, f.b, f.a, f.c, f.e, f.d, f.g0)
    return f


def lift_to_three(f: QuadPoly2) -> QuadPoly3:
    """The substitution x -> u+v: returns f(u+v, w) as a QuadPoly3 in (u, v, w)."""
    p = f.field.p
    return QuadPoly3(
        f.field,
        cxx=f.a, cyy=f.a, czz=f.b,
        cxy=2 * f.a % p, cxz=f.c, cyz=f.c,
        cx=f.d, cy=f.d, cz=f.e, c0=f.g0,
    )


def _eval_q(q: tuple[int, int, int], t: int, p: int) -> int:
    return (q[0] * t * t + q[1] * t + q[2]) % p


def _witness_matches2(f: QuadPoly2, q, linear) -> bool:
    p = f.field.p
    alpha, beta = linear
    if p <= _EXHAUSTIVE_VERIFY_MAX_P:
        points = ((x, y) for x in range(p) for y in range(p))
    else:
        stream = SplitMix64(0xC0FFEE ^ p)
        points = ((stream.below(p), stream.below(p)) for _ in range(_RANDOM_VERIFY_POINTS))
    for x, y in points:
        if eval2(f, x, y) != _eval_q(q, (alpha * x + beta * y) % p, p):
            return False
    return True


def _witness_matches3(F: QuadPoly3, g, h, k, l) -> bool:
    p = F.field.p
    if p <= _EXHAUSTIVE_VERIFY_MAX_P:
        points = ((x, y, z) for x in range(p) for y in range(p) for z in range(p))
    else:
        stream = SplitMix64(0xBEEF ^ p)
        points = (
            (stream.below(p), stream.below(p), stream.below(p))
            for _ in range(_RANDOM_VERIFY_POINTS)
        )
    for x, y, z in points:
        inner = (_eval_q(h, x, p) + _eval_q(k, y, p) + _eval_q(l, z, p)) % p
        if eval3(F, x, y, z) != _eval_q(g, inner, p):
            return False
    return True


def classify_degenerate(f: QuadPoly2) -> DegeneracyVerdict:
    """Decide whether f = Q(alpha*x + beta*y) for some univariate Q.

    Matching coefficients of Q(t) = q2*t^2 + q1*t + q0 at t = alpha*x + beta*y
    gives a = q2*alpha^2, b = q2*beta^2, c = 2*q2*alpha*beta, d = q1*alpha,
    e = q1*beta, so any such f satisfies

        c^2 - 4ab = 0,   2ae - cd = 0,   2bd - ce = 0,

    and conversely those three conditions allow a witness to be read off.
    Constant and linear f count as degenerate (Q may have degree <= 1).
    """
    fld = f.field
    p = fld.p
    a, b, c, d, e, g0 = f.coefficients()
    if (c * c - 4 * a * b) % p or (2 * a * e - c * d) % p or (2 * b * d - c * e) % p:
        return DegeneracyVerdict(False)
    if a != 0:
        beta = c * fld.inv(2 * a) % p
        q, linear = (a, d, g0), (1, beta)
    elif b != 0:
        # conditions force c = 0 and d = 0 here
        q, linear = (b, e, g0), (0, 1)
    elif d != 0 or e != 0:
        # c = 0 is forced; f is the linear form d*x + e*y plus a constant
        q, linear = (0, 1, g0), (d, e)
    else:
        q, linear = (0, 0, g0), (1, 0)
    if not _witness_matches2(f, q, linear):
        raise AssertionError(f"degeneracy witness failed verification for {f}")
    return DegeneracyVerdict(True, q=q, linear=linear)


def _rank_one_square(F: QuadPoly3) -> tuple[int, tuple[int, int, int]] | None:
    """Write the quadratic part as lam*(ax+by+cz)^2, or return None.

    Normalized so the first nonzero coordinate of the linear form is 1.
    Requires a nonzero quadratic part.
    """
    fld = F.field
    p = fld.p
    sq = (F.cxx, F.cyy, F.czz)
    cross = {(0, 1): F.cxy, (0, 2): F.cxz, (1, 2): F.cyz}
    pivot = next((i for i, v in enumerate(sq) if v), None)
    if pivot is None:
        # no square terms: lam*M^2 would need M = 0, impossible for a
        # nonzero quadratic part
        return None
    lam = sq[pivot]
    half = fld.inv(2 * lam)
    m = [0, 0, 0]
    m[pivot] = 1
    for j in range(3):
        if j == pivot:
            continue
        key = (min(pivot, j), max(pivot, j))
        m[j] = cross[key] * half % p
    # verify the full expansion lam*(m . x)^2 against all six coefficients
    if (
        sq[0] != lam * m[0] * m[0] % p
        or sq[1] != lam * m[1] * m[1] % p
        or sq[2] != lam * m[2] * m[2] % p
        or cross[(0, 1)] != 2 * lam * m[0] * m[1] % p
        or cross[(0, 2)] != 2 * lam * m[0] * m[2] % p
        or cross[(1, 2)] != 2 * lam * m[1] * m[2] % p
    ):
        return None
    return lam, (m[0], m[1], m[2])


def classify_form3(F: QuadPoly3) -> Form3Verdict:
    """Decide whether F = g(h(x)+k(y)+l(z)) for single-variable g, h, k, l.

    A quadratic F splits exactly when either

    * it has no cross terms (then g can be the identity and h, k, l soak
      up one variable each), or
    * its quadratic part is lam*M^2 for a linear form M and its linear
      part is a scalar multiple of M (then g is a genuine quadratic and
      h+k+l = M, with constants absorbed into g).

    Validated against a brute-force composition oracle over F_5 in the
    test suite.
    """
    p = F.field.p
    lin = (F.cx, F.cy, F.cz)
    if F.cross_terms == (0, 0, 0):
        g = (0, 1, 0)
        h = (F.cxx, F.cx, F.c0)
        k = (F.cyy, F.cy, 0)
        l = (F.czz, F.cz, 0)
        if not _witness_matches3(F, g, h, k, l):
            raise AssertionError(f"split witness failed verification for {F}")
        return Form3Verdict(True, g=g, h=h, k=k, l=l)
    decomp = _rank_one_square(F)
    if decomp is None:
        return Form3Verdict(False)
    lam, m = decomp
    pivot = next(i for i, v in enumerate(m) if v)  # m[pivot] == 1 by construction
    mu = lin[pivot]
    if any(lin[j] != mu * m[j] % p for j in range(3)):
        return Form3Verdict(False)
    g = (lam, mu, F.c0)
    h = (0, m[0], 0)
    k = (0, m[1], 0)
    l = (0, m[2], 0)
    if not _witness_matches3(F, g, h, k, l):
        raise AssertionError(f"split witness failed verification for {F}")
    return Form3Verdict(True, g=g, h=h, k=k, l=l)
