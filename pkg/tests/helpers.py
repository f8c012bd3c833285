"""Shared brute-force oracles for the test suite.

Everything here recomputes library quantities by literal enumeration or
exhaustive expansion, staying independent of the code paths under test.
"""

from itertools import product

from expanderlab import FpSet, PrimeField, eval3


def brute_energy2(A, B):
    """Literal count of (a1, a2, b1, b2) with a1 - b1 = a2 - b2."""
    p = A.field.p
    return sum(
        1
        for a1, a2 in product(A.elements, repeat=2)
        for b1, b2 in product(B.elements, repeat=2)
        if (a1 - b1) % p == (a2 - b2) % p
    )


def brute_energy4(A, B):
    """Literal count of 8-tuples with a common difference."""
    p = A.field.p
    count = 0
    for a_tuple in product(A.elements, repeat=4):
        for b_tuple in product(B.elements, repeat=4):
            diffs = {(a - b) % p for a, b in zip(a_tuple, b_tuple)}
            if len(diffs) == 1:
                count += 1
    return count


def brute_energy3(F, A, B, C):
    """Literal count of value-colliding triple pairs (6-tuples)."""
    vals = [
        eval3(F, a, b, c)
        for a in A.elements
        for b in B.elements
        for c in C.elements
    ]
    return sum(1 for v in vals for w in vals if v == w)


def brute_rep(A, B):
    """r_{A-B} as a plain dict."""
    p = A.field.p
    out = {}
    for a in A.elements:
        for b in B.elements:
            x = (a - b) % p
            out[x] = out.get(x, 0) + 1
    return out


def degenerate_tuples_f5():
    """All (a, b, c, d, e, g0) over F_5 expressible as Q(alpha*x + beta*y).

    Expands every univariate Q of degree <= 2 (125 of them) composed with
    every linear form (25), by direct coefficient expansion.
    """
    p = 5
    out = set()
    for q2, q1, q0, al, be in product(range(p), repeat=5):
        out.add((
            q2 * al * al % p,
            q2 * be * be % p,
            2 * q2 * al * be % p,
            q1 * al % p,
            q1 * be % p,
            q0,
        ))
    return out


def form3_tuples_f5():
    """All 10-coefficient tuples over F_5 of the form g(h(x)+k(y)+l(z)).

    Constants of h, k, l shift g's argument and g ranges over all
    degree <= 2 univariates, so they can be taken zero.  When deg g = 2
    the inner parts must be linear: a quadratic inner part would
    contribute an x^4 (or x^2 y^2) monomial whose coefficient is a
    nonzero square times the leading coefficient of g, and nothing can
    cancel it.  Coefficient order matches QuadPoly3:
    (xx, yy, zz, xy, xz, yz, x, y, z, const).
    """
    p = 5
    out = set()
    for g2 in range(1, p):
        for g1, g0, h1, k1, l1 in product(range(p), repeat=5):
            out.add((
                g2 * h1 * h1 % p, g2 * k1 * k1 % p, g2 * l1 * l1 % p,
                2 * g2 * h1 * k1 % p, 2 * g2 * h1 * l1 % p, 2 * g2 * k1 * l1 % p,
                g1 * h1 % p, g1 * k1 % p, g1 * l1 % p, g0,
            ))
    for g1, g0 in product(range(p), repeat=2):
        for h2, h1, k2, k1, l2, l1 in product(range(p), repeat=6):
            out.add((
                g1 * h2 % p, g1 * k2 % p, g1 * l2 % p,
                0, 0, 0,
                g1 * h1 % p, g1 * k1 % p, g1 * l1 % p, g0,
            ))
    return out


def random_subset(rand, p, max_size, min_size=1):
    size = rand.randint(min_size, min(max_size, p))
    return FpSet(PrimeField(p), rand.sample(range(p), size))
