"""Linear algebra over Z and Z/n for finitely generated abelian groups.

Matrices are tuples of tuples of Python ints (arbitrary precision); all
dimensions in this artifact are tiny, so no sparse or numpy machinery is
needed.  The one nontrivial kernel is the Smith normal form, which powers
element equality, linear solving over every coefficient ring, and structure
computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, TorsionGroup
from .rings import INTEGERS_MOD, PRIME_FIELD, RATIONALS, Ring, reduce

Matrix = tuple  # tuple of row tuples
Vector = tuple


# --- basic matrix helpers ----------------------------------------------------

def freeze(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec(m: Matrix, v) -> Vector:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch("matrix/vector shape mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def determinant(m: Matrix) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise DimensionMismatch("determinant needs a square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --- Smith normal form --------------------------------------------------------

def smith_normal_form(m) -> tuple[Matrix, Matrix, Matrix]:
    """Diagonalize an integer matrix: returns (U, D, V) with D = U*M*V.

    U and V are unimodular, D is diagonal with nonnegative entries forming a
    divisibility chain d1 | d2 | ...  Pivots are chosen with minimal absolute
    value and smallest (row, col) position, so the output is deterministic.

    >>> u, d, v = smith_normal_form(((2, 0), (0, 3)))
    >>> [d[i][i] for i in range(2)]
    [1, 6]
    """
    m = freeze(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(row) for row in m]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def row_add(dst, src, c):
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, c):
        for r in range(rows):
            d[r][dst] += c * d[r][src]
        for r in range(cols):
            v[r][dst] += c * v[r][src]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def pivot_at(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0:
                    key = (abs(d[i][j]), i, j)
                    if best is None or key < best:
                        best = key
        return None if best is None else (best[1], best[2])

    for t in range(min(rows, cols)):
        while True:
            pos = pivot_at(t)
            if pos is None:
                break
            row_swap(t, pos[0])
            col_swap(t, pos[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        dirty = True
            if dirty:
                continue
            # Pull any entry the pivot does not divide into row t, so the
            # pivot shrinks to a gcd and the divisibility chain holds.
            fixed = True
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % p:
                        row_add(t, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break
        if pivot_at(t) is None and d[t][t] == 0:
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return freeze(u), freeze(d), freeze(v)


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def kernel_basis(m) -> list[Vector]:
    """Basis of the integer kernel {x : M x = 0}, as column vectors."""
    m = freeze(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [tuple(identity(cols)[i]) for i in range(cols)]
    _, d, v = smith_normal_form(m)
    diag = diagonal(d)
    basis = []
    for j in range(cols):
        if j >= len(diag) or diag[j] == 0:
            basis.append(tuple(v[i][j] for i in range(cols)))
    return basis


def solve_linear(m, b, ring: Ring):
    """Solve M x = b over the given ring; returns a tuple or None.

    Over Z/n the augmented integer system [M | nI] x' = b is solved over Z
    and the x block is reduced mod n, so the same exact kernel serves every
    ring.  None is returned exactly when no solution exists.
    """
    m = freeze(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if len(b) != rows:
        raise DimensionMismatch(
            f"rhs has length {len(b)}, matrix has {rows} rows")

    if ring.kind in (INTEGERS_MOD, PRIME_FIELD):
        n = ring.modulus
        if rows == 0:
            return (0,) * cols
        b_int = tuple(reduce(x, ring).value for x in b)
        aug = tuple(row + tuple(n if i == k else 0 for k in range(rows))
                    for i, row in enumerate(m))
        sol = solve_linear(aug, b_int, Ring.integers())
        if sol is None:
            return None
        return tuple(x % n for x in sol[:cols])

    rational = ring.kind == RATIONALS
    b = tuple(Fraction(x) for x in b)
    if not rational and any(x.denominator != 1 for x in b):
        return None
    if rows == 0:
        return (0,) * cols
    u, d, v = smith_normal_form(m)
    c = mat_vec(u, b)
    diag = diagonal(d)
    y = []
    for i in range(cols):
        di = diag[i] if i < len(diag) else 0
        ci = c[i] if i < rows else Fraction(0)
        if di == 0:
            if ci != 0:
                return None
            y.append(Fraction(0))
        else:
            q = ci / di
            if not rational and q.denominator != 1:
                return None
            y.append(q)
    for i in range(cols, rows):
        if c[i] != 0:
            return None
    x = mat_vec(v, tuple(y))
    if rational:
        return tuple(Fraction(t) for t in x)
    return tuple(int(t) for t in x)


def in_lattice(rows_matrix, vector, ring: Ring) -> bool:
    """Is the vector in the row span of rows_matrix over the ring?"""
    rows = freeze(rows_matrix)
    if not rows:
        if ring.kind in (INTEGERS_MOD, PRIME_FIELD):
            return all(reduce(x, ring).is_zero for x in vector)
        return all(Fraction(x) == 0 for x in vector)
    return solve_linear(transpose(rows), vector, ring) is not None


# --- groups --------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group presented by labelled generators
    and an integer relation matrix (rows = relations, columns = generators).
    """

    generator_labels: tuple
    relations: Matrix = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_labels",
                           tuple(self.generator_labels))
        object.__setattr__(self, "relations", freeze(self.relations))
        labels = self.generator_labels
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be unique")
        for row in self.relations:
            if len(row) != len(labels):
                raise DimensionMismatch("relation width != generator count")

    @property
    def ngens(self) -> int:
        return len(self.generator_labels)

    def structure(self) -> tuple[int, list[int]]:
        """(free rank, invariant factors d1 | d2 | ...) via Smith normal form."""
        if not self.relations:
            return self.ngens, []
        _, d, _ = smith_normal_form(self.relations)
        diag = diagonal(d)
        torsion = [x for x in diag if x not in (0, 1)]
        rank = self.ngens - sum(1 for x in diag if x != 0)
        return rank, torsion

    @property
    def is_free(self) -> bool:
        return self.structure()[1] == []

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def is_zero(self, coords, ring: Ring) -> bool:
        """Does the coordinate vector represent 0 in the group over the ring?"""
        if len(coords) != self.ngens:
            raise DimensionMismatch("coordinate length != generator count")
        return in_lattice(self.relations, tuple(coords), ring)

    def elements_equal(self, x, y, ring: Ring) -> bool:
        return self.is_zero(vec_sub(tuple(x), tuple(y)), ring)

    def describe(self, coords) -> str:
        """Render coordinates against generator labels, e.g. "4*H - 8*beta"."""
        parts = []
        for c, label in zip(coords, self.generator_labels):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+ {label}")
            elif c == -1:
                parts.append(f"- {label}")
            elif c > 0:
                parts.append(f"+ {c}*{label}")
            else:
                parts.append(f"- {-c}*{label}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def group_structure(group: FgAbelianGroup) -> tuple[int, list[int]]:
    return group.structure()


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != self.group.ngens:
            raise DimensionMismatch("coordinate length != generator count")

    def __add__(self, other):
        assert other.group == self.group
        return GroupElement(self.group, vec_add(self.coords, other.coords))

    def __sub__(self, other):
        assert other.group == self.group
        return GroupElement(self.group, vec_sub(self.coords, other.coords))

    def __neg__(self):
        return GroupElement(self.group, vec_scale(-1, self.coords))

    def scaled(self, c):
        return GroupElement(self.group, vec_scale(c, self.coords))

    def is_zero(self, ring: Ring) -> bool:
        return self.group.is_zero(self.coords, ring)

    def equals(self, other: "GroupElement", ring: Ring) -> bool:
        return self.group.elements_equal(self.coords, other.coords, ring)

    def __str__(self):
        return self.group.describe(self.coords)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by an integer matrix (columns = source generators).

    Construction checks that every source relation lands in the target's
    relation lattice, so the map is well defined on the quotient.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", freeze(self.matrix))
        if len(self.matrix) != self.target.ngens:
            raise DimensionMismatch("hom matrix rows != target generators")
        for row in self.matrix:
            if len(row) != self.source.ngens:
                raise DimensionMismatch("hom matrix cols != source generators")
        for relation in self.source.relations:
            image = mat_vec(self.matrix, relation)
            if not self.target.is_zero(image, Ring.integers()):
                raise ValueError(
                    "hom does not kill a source relation; not well defined")

    def apply(self, element_or_coords):
        coords = (element_or_coords.coords
                  if isinstance(element_or_coords, GroupElement)
                  else tuple(element_or_coords))
        return GroupElement(self.target, mat_vec(self.matrix, coords))

    def image_lattice(self) -> Matrix:
        """Rows spanning the image subgroup of the target (plus its relations)."""
        cols = transpose(self.matrix)
        return tuple(cols) + self.target.relations


@dataclass(frozen=True)
class IntersectionForm:
    """A symmetric integer pairing on a free group."""

    group: FgAbelianGroup
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", freeze(self.matrix))
        n = self.group.ngens
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise DimensionMismatch("form size != generator count")
        if self.matrix != transpose(self.matrix):
            raise ValueError("intersection form must be symmetric")
        if not self.group.is_free:
            raise TorsionGroup(
                "intersection pairing requires a torsion-free group")


def pair(form: IntersectionForm, x: GroupElement, y: GroupElement, ring: Ring):
    """Evaluate x^T * form * y and reduce into the ring."""
    if x.group != form.group or y.group != form.group:
        raise DimensionMismatch("pairing arguments live in the wrong group")
    if not form.group.is_free:
        raise TorsionGroup("intersection pairing requires a free group")
    total = 0
    for i, xi in enumerate(x.coords):
        if xi == 0:
            continue
        for j, yj in enumerate(y.coords):
            if yj == 0:
                continue
            total += xi * form.matrix[i][j] * yj
    return reduce(total, ring)
