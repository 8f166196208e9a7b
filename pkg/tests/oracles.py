"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive (exhaustive search, hand formulas) and
shares no code path with the implementations under test.
"""

from fractions import Fraction
from itertools import product


def brute_force_units(n):
    """Units of Z/n found by scanning for multiplicative inverses."""
    return sorted(x for x in range(n) if any((x * y) % n == 1 for y in range(n)))


def det_2x2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def brute_force_snf_2x2(m, bound=3):
    """Search small unimodular U, V for a diagonal D = U m V with d1 | d2.

    Only feasible for 2x2 matrices with small entries; used to confirm a
    handful of frozen Smith-form answers.
    """
    entries = range(-bound, bound + 1)
    unimodular = [((a, b), (c, d))
                  for a, b, c, d in product(entries, repeat=4)
                  if abs(a * d - b * c) == 1]

    def mul(x, y):
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2))
                           for j in range(2)) for i in range(2))

    results = set()
    for u in unimodular:
        um = mul(u, m)
        for v in unimodular:
            d = mul(um, v)
            if d[0][1] == 0 and d[1][0] == 0 and d[0][0] >= 0 and d[1][1] >= 0:
                d1, d2 = d[0][0], d[1][1]
                if d2 == 0 or (d1 != 0 and d2 % d1 == 0) or d1 == 0:
                    if not (d1 == 0 and d2 != 0):
                        results.add((d1, d2))
    return results


def exhaustive_solve_mod(m, b, n):
    """All x in (Z/n)^cols with M x = b mod n, by full enumeration."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    solutions = []
    for x in product(range(n), repeat=cols):
        if all(sum(m[i][j] * x[j] for j in range(cols)) % n == b[i] % n
               for i in range(rows)):
            solutions.append(x)
    return solutions


def balance_slope(term1, term2):
    """Solve t1 + n1*v = t2 + n2*v for the valuation v."""
    (t1, n1), (t2, n2) = term1, term2
    if n1 == n2:
        raise ZeroDivisionError("no balancing slope for equal exponents")
    return Fraction(t1 - t2, n2 - n1)


def segment_ray_exit(vertices, base, direction):
    """Exit parameter of the ray base + t*direction from a convex polygon.

    Independent of the half-plane clipping in the implementation: intersects
    the ray with every closed edge segment via 2x2 determinants.
    """
    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    best = None
    k = len(vertices)
    for i in range(k):
        p = vertices[i]
        q = vertices[(i + 1) % k]
        edge = (q[0] - p[0], q[1] - p[1])
        denom = cross(direction, edge)
        if denom == 0:
            continue
        rel = (p[0] - base[0], p[1] - base[1])
        t = Fraction(cross(rel, edge), denom)
        u = Fraction(cross(rel, direction), denom)
        if 0 <= u <= 1 and t > 0:
            if best is None or t < best:
                best = t
    return best


def oracle_probe_displaces(vertices, base, direction, point):
    """Strict-half criterion evaluated from scratch on exact rationals."""
    dx, dy = direction
    px, py = point[0] - base[0], point[1] - base[1]
    # point = base + s*direction must be consistent in both coordinates
    if dx == 0:
        if px != 0:
            return False
        s = Fraction(py, dy)
    else:
        s = Fraction(px, dx)
        if py != s * dy:
            return False
    length = segment_ray_exit(vertices, base, direction)
    if length is None:
        return False
    return 0 < s and 2 * s < length
