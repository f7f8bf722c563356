"""Integer quadratic forms: normal forms, dual lattices, discriminant groups.

All arithmetic is exact.  Lattices are given by Gram matrices on a basis;
dual vectors are rational coordinate vectors in that basis.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property
from itertools import product
from math import gcd, lcm

from . import _exact as ex
from . import kernels
from .errors import DegenerateForm

# ------------------------------------------------------------- normal forms


def smith_normal_form(m):
    """Return (U, D, V) with U*m*V = D diagonal, d_1 | d_2 | ..., U, V unimodular."""
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = ex.identity(rows)
    v = ex.identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for mat in (a, v):
            for row in mat:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def hermite_normal_form(m) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by the rows of an integer matrix.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into [0, pivot).
    """
    a = [list(map(int, row)) for row in m if any(row)]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        rows_here = [i for i in range(r, len(a)) if a[i][c]]
        if not rows_here:
            continue
        while True:
            rows_here = [i for i in range(r, len(a)) if a[i][c]]
            piv = min(rows_here, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return [row for row in a[:r]]


def invariant_factors(m) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ------------------------------------------------------------- lattices


class IntegralLattice:
    """Nondegenerate integral lattice given by a symmetric Gram matrix."""

    def __init__(self, gram, name: str = ""):
        gram = [[int(x) for x in row] for row in gram]
        n = len(gram)
        if any(len(row) != n for row in gram) or any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be square and symmetric")
        self.gram = gram
        self.name = name
        self.det = int(ex.det(gram))
        if self.det == 0:
            raise DegenerateForm(f"degenerate Gram matrix {name}".strip())

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, x, y) -> Fraction:
        return Fraction(ex.bilinear(x, self.gram, y))

    def norm(self, x) -> Fraction:
        return self.pair(x, x)

    def is_dual(self, x) -> bool:
        return all(Fraction(v).denominator == 1 for v in ex.matvec(self.gram, x))

    def scaled(self, k: int) -> IntegralLattice:
        return IntegralLattice([[k * x for x in row] for row in self.gram], name=f"{self.name}({k})")

    def __add__(self, other: IntegralLattice) -> IntegralLattice:
        """Orthogonal direct sum."""
        n, m = self.rank, other.rank
        g = [row + [0] * m for row in self.gram] + [[0] * n + row for row in other.gram]
        return IntegralLattice(g, name=f"{self.name}+{other.name}")

    @cached_property
    def snf(self):
        return smith_normal_form(self.gram)

    @cached_property
    def dual_basis(self) -> list[list[Fraction]]:
        """Columns of V D^-1 as rows: a Z-basis of the dual lattice."""
        _, d, v = self.snf
        n = self.rank
        return [[Fraction(v[r][i], d[i][i]) for r in range(n)] for i in range(n)]

    def __repr__(self):
        return f"IntegralLattice({self.name or self.gram})"


def U(k: int = 1) -> IntegralLattice:
    return IntegralLattice([[0, k], [k, 0]], name=f"U({k})" if k != 1 else "U")


def A1(k: int = 1) -> IntegralLattice:
    return IntegralLattice([[k]], name=f"<{k}>")


def lattice_T() -> IntegralLattice:
    """U(2) + U(2) + <-4>."""
    t = U(2) + U(2) + A1(-4)
    t.name = "T"
    return t


@dataclass(frozen=True)
class DualVector:
    coords: tuple
    host: IntegralLattice = field(compare=False)

    def __post_init__(self):
        if not self.host.is_dual(self.coords):
            raise ValueError("vector does not pair integrally with the lattice")

    @property
    def norm(self) -> Fraction:
        return self.host.norm(self.coords)


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x // m)


def format_q(x: Fraction, modulus: int = 2) -> str:
    return f"{ex.frac_str(_mod(Fraction(x), modulus))} mod {modulus}"


class DiscGroup:
    """The finite group L*/L with its discriminant quadratic form.

    Elements are tuples of residues modulo the nontrivial invariant factors.
    ``q`` takes values in Q/2Z for even lattices (Q/Z otherwise) and ``b`` in Q/Z.
    """

    def __init__(self, lattice: IntegralLattice, sign: int = 1):
        self.lattice = lattice
        self.sign = sign
        _, d, v = lattice.snf
        n = lattice.rank
        diag = [d[i][i] for i in range(n)]
        self._slots = [i for i in range(n) if diag[i] != 1]
        self.invariant_factors = tuple(diag[i] for i in self._slots)
        self.generators = [lattice.dual_basis[i] for i in self._slots]
        self._vinv = ex.inverse(v)
        self._diag = diag
        self.q_modulus = 2 if lattice.even else 1

    @property
    def order(self) -> int:
        out = 1
        for x in self.invariant_factors:
            out *= x
        return out

    def negated(self) -> DiscGroup:
        return DiscGroup(self.lattice, -self.sign)

    def lift(self, c) -> list[Fraction]:
        n = self.lattice.rank
        x = [Fraction(0)] * n
        for ci, g in zip(c, self.generators):
            for r in range(n):
                x[r] += ci * g[r]
        return x

    def reduce(self, x) -> tuple[int, ...]:
        """Class of a dual vector."""
        z = ex.matvec(self._vinv, x)
        out = []
        for slot, d in zip(self._slots, self.invariant_factors):
            zi = Fraction(z[slot]) * self._diag[slot]
            if zi.denominator != 1:
                raise ValueError("not a dual vector")
            out.append(int(zi) % d)
        return tuple(out)

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(d) for d in self.invariant_factors)))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, k: int, x):
        return tuple((k * a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = lcm(o, d // gcd(a, d))
        return o

    def q(self, x) -> Fraction:
        v = self.lift(x)
        return _mod(self.sign * self.lattice.norm(v), self.q_modulus)

    def b(self, x, y) -> Fraction:
        return _mod(self.sign * self.lattice.pair(self.lift(x), self.lift(y)), 1)

    def cyclic_subgroup(self, x) -> frozenset:
        return frozenset(self.scale(k, x) for k in range(self.element_order(x)))

    def signature_multiset(self) -> Counter:
        return Counter((self.element_order(x), self.q(x)) for x in self.elements())


def discriminant_group(lattice) -> DiscGroup:
    if not isinstance(lattice, IntegralLattice):
        lattice = IntegralLattice(lattice)
    return DiscGroup(lattice)


def six_subgroups(d: DiscGroup) -> list[frozenset]:
    """Cyclic subgroups of order 4 whose generators have q = 3/4 (mod 2)."""
    target = Fraction(3, 4)
    subs = {d.cyclic_subgroup(x) for x in d.elements() if d.element_order(x) == 4 and d.q(x) == target}
    return sorted(subs, key=lambda s: sorted(s))


def subgroup_generators(d: DiscGroup, sub) -> list[tuple[int, ...]]:
    return sorted(x for x in sub if d.element_order(x) == len(sub))


def match_discriminant_forms(a: DiscGroup, b: DiscGroup) -> bool:
    """Necessary test for a sign-reversing isometry a ~ -b.

    Compares the multisets of (element order, q value) on both sides with the
    q values of ``b`` negated.  Equal multisets do not prove an isometry.
    """
    if a.order != b.order:
        return False
    return a.signature_multiset() == b.negated().signature_multiset()


def search_values(bound: int) -> list[int]:
    """Coordinate order used by the bounded searches: 0, 1, -1, 2, -2, ..."""
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def find_dual_vector(lattice: IntegralLattice, target_norm, target_class=None, bound: int = 4) -> DualVector | None:
    """Exhaustive search for a dual vector of a given norm (and class).

    Coordinates are taken on the dual basis in the box [-bound, bound]; the
    first hit in the order of ``search_values`` is returned.  ``target_class``
    is a class tuple or a collection of acceptable class tuples.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    target_norm = Fraction(target_norm)
    basis = lattice.dual_basis
    n = lattice.rank
    dual_gram = [[lattice.pair(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    scale = 1
    for row in dual_gram:
        for x in row:
            scale = lcm(scale, x.denominator)
    scale = lcm(scale, target_norm.denominator)
    int_gram = [[int(x * scale) for x in row] for row in dual_gram]
    allowed = None
    disc = None
    if target_class is not None:
        disc = DiscGroup(lattice)
        if isinstance(target_class, tuple) and all(isinstance(c, int) for c in target_class):
            allowed = {target_class}
        else:
            allowed = set(target_class)
    for z in kernels.box_search(int_gram, int(target_norm * scale), search_values(bound)):
        x = [sum(z[i] * basis[i][r] for i in range(n)) for r in range(n)]
        if allowed is not None and disc.reduce(x) not in allowed:
            continue
        return DualVector(tuple(x), lattice)
    return None


# ------------------------------------------------------------- radical quotient


class RadicalQuotient:
    """Lattice generated by vectors with a possibly degenerate Gram matrix.

    The quotient by the radical is given an integral basis: the first
    Q-independent generators give a rational frame, every generator is written
    in that frame, and the Hermite normal form of the (scaled) coordinate rows
    gives a Z-basis.
    """

    def __init__(self, gram, name: str = ""):
        self.full_gram = [[int(x) for x in row] for row in gram]
        self.n_generators = len(self.full_gram)
        frame: list[int] = []
        rows: list[list[int]] = []
        for k in range(self.n_generators):
            trial = rows + [self.full_gram[k]]
            if ex.rank(trial) > len(rows):
                frame.append(k)
                rows = trial
        self.frame = frame
        r = len(frame)
        gi = [[self.full_gram[i][j] for j in frame] for i in frame]
        gi_inv = ex.inverse(gi)
        self._coords = [ex.matvec(gi_inv, [self.full_gram[i][k] for i in frame]) for k in range(self.n_generators)]
        den = 1
        for row in self._coords:
            for x in row:
                den = lcm(den, x.denominator)
        hnf = hermite_normal_form([[int(x * den) for x in row] for row in self._coords])
        assert len(hnf) == r
        self.basis = [[Fraction(x, den) for x in row] for row in hnf]
        self._basis_inv = ex.inverse(self.basis)
        bg = ex.matmul(ex.matmul(self.basis, gi), ex.transpose(self.basis))
        assert all(x.denominator == 1 for row in bg for x in row)
        self.lattice = IntegralLattice([[int(x) for x in row] for row in bg], name=name)

    @property
    def rank(self) -> int:
        return len(self.frame)

    def project(self, v) -> list[Fraction]:
        """Coordinates, in the computed basis, of the class of a generator combination."""
        frame_coords = [sum(Fraction(v[k]) * self._coords[k][j] for k in range(self.n_generators) if v[k]) for j in range(self.rank)]
        return [sum(frame_coords[i] * self._basis_inv[i][j] for i in range(self.rank)) for j in range(self.rank)]

    def in_radical(self, v) -> bool:
        return all(x == 0 for x in ex.matvec(self.full_gram, v))


def radical_quotient(gram32, name: str = "") -> RadicalQuotient:
    return RadicalQuotient(gram32, name=name)


# ------------------------------------------------------------- (16)_6 lattice


@cache
def ns_quotient() -> RadicalQuotient:
    from . import config16

    return radical_quotient(config16.gram_matrix(), name="NS'")


@cache
def ns_disc() -> DiscGroup:
    return DiscGroup(ns_quotient().lattice)


def patching_class(w) -> tuple[int, ...]:
    """Class of (3/4)H - (1/2) sum_{a in w} N_a in the discriminant group of NS'."""
    from . import config16

    e = config16.eleventh_node_class(w)
    return ns_disc().reduce(ns_quotient().project(e.coords))


def patching_subgroup(w) -> frozenset:
    return ns_disc().cyclic_subgroup(patching_class(w))
