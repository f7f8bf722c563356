"""Inscribed-conic criterion for six branch points on a conic.

Branch values t in P^1 go to the conic xz = y^2 via t -> (1 : t : t^2).  For a
pentagon p1..p5 of such points, D is the unique conic tangent to the five
sides; the condition is that the sixth point lies on D.  Everything is exact
over Q; a numpy path is kept only as an oracle for irrational witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import sympy

from . import _exact as ex
from . import f2geom as fg
from .errors import DegeneratePentagon, DuplicateElements, NotInHexad, NotTangent, NotUnique

INF = None  # the point at infinity of P^1


def parse_branch_value(text: str) -> Fraction | None:
    if text.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return Fraction(text)


def format_branch_value(t) -> str:
    return "inf" if t is INF else ex.frac_str(t)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, int, int]

    def __init__(self, *xyz):
        if len(xyz) == 1:
            (xyz,) = xyz
        object.__setattr__(self, "coords", ex.primitive(xyz))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "({}:{}:{})".format(*self.coords)


class ProjLine(ProjPoint):
    """Dual coordinates (a, b, c) of the line ax + by + cz = 0."""

    def __str__(self):
        return "[{}:{}:{}]".format(*self.coords)

    def contains(self, p) -> bool:
        return ex.dot(self.coords, tuple(p)) == 0


def join(p, q) -> ProjLine:
    c = ex.cross(tuple(p), tuple(q))
    if not any(c):
        raise DegeneratePentagon("coincident points have no joining line")
    return ProjLine(c)


def meet(l, m) -> ProjPoint:
    c = ex.cross(tuple(l), tuple(m))
    if not any(c):
        raise DegeneratePentagon("coincident lines have no intersection point")
    return ProjPoint(c)


@dataclass(frozen=True)
class Conic:
    """Symmetric integer matrix m (primitive); points satisfy p^T m p = 0."""

    m: tuple[tuple[int, int, int], ...]

    def __init__(self, m):
        m = [[Fraction(x) for x in row] for row in m]
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ValueError("conic matrix must be symmetric")
        upper = ex.primitive([m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]])
        a, b, c, d, e, f = upper
        object.__setattr__(self, "m", ((a, b, c), (b, d, e), (c, e, f)))

    @classmethod
    def from_upper(cls, upper) -> Conic:
        a, b, c, d, e, f = upper
        return cls([[a, b, c], [b, d, e], [c, e, f]])

    @property
    def upper(self) -> tuple[int, ...]:
        m = self.m
        return (m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2])

    def value(self, p):
        p = tuple(p)
        return ex.bilinear(p, self.m, p)

    def contains(self, p) -> bool:
        return self.value(p) == 0

    def det(self) -> int:
        return ex.det3(self.m)

    def is_degenerate(self) -> bool:
        return self.det() == 0

    def dual(self) -> Conic:
        """Adjugate: the conic of tangent lines, in dual coordinates."""
        return Conic(ex.adjugate3(self.m))

    def restriction_discriminant(self, line):
        """b^2 - ac for the restriction to a parametrized line; zero iff tangent (or contained)."""
        u, v = _points_on_line(tuple(line))
        a = ex.bilinear(u, self.m, u)
        b = ex.bilinear(u, self.m, v)
        c = ex.bilinear(v, self.m, v)
        return b * b - a * c

    def is_tangent(self, line) -> bool:
        return self.restriction_discriminant(line) == 0

    def transformed(self, a) -> Conic:
        """Image under the point map p -> A p, namely A^-T m A^-1."""
        ainv = ex.inverse(a)
        return Conic(ex.matmul(ex.matmul(ex.transpose(ainv), self.m), ainv))


def _points_on_line(l):
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    pts = [ex.cross(l, e) for e in basis]
    pts = [p for p in pts if any(p)]
    u = pts[0]
    for v in pts[1:]:
        if any(ex.cross(u, v)):
            return u, v
    raise ValueError("zero line")


VERONESE_CONIC = Conic.from_upper((0, 0, 1, -2, 0, 0))


def veronese(t) -> ProjPoint:
    if t is INF:
        return ProjPoint(0, 0, 1)
    t = Fraction(t)
    return ProjPoint(1, t, t * t)


def _conic_row(p):
    x, y, z = p
    return [x * x, x * y, x * z, y * y, y * z, z * z]


def conic_through_five(*points) -> Conic:
    if len(points) == 1:
        (points,) = points
    pts = [tuple(p) for p in points]
    if len(pts) != 5:
        raise ValueError("need five points")
    null = ex.nullspace([_conic_row(p) for p in pts])
    if len(null) != 1:
        raise NotUnique("the five points do not determine a unique conic")
    a, b, c, d, e, f = null[0]
    return Conic([[2 * a, b, c], [b, 2 * d, e], [c, e, 2 * f]])


def pentagon_sides(points) -> list[ProjLine]:
    pts = list(points)
    return [join(pts[i], pts[(i + 1) % 5]) for i in range(5)]


def inscribed_conic(points) -> Conic:
    """The conic tangent to the five sides of the pentagon p1 p2 p3 p4 p5."""
    pts = list(points)
    if len(pts) != 5:
        raise ValueError("a pentagon has five vertices")
    sides = pentagon_sides(pts)
    if len(set(sides)) != 5:
        raise DegeneratePentagon("repeated side")
    for a, b, c in combinations(sides, 3):
        if ex.det3([a.coords, b.coords, c.coords]) == 0:
            raise DegeneratePentagon(f"sides {a}, {b}, {c} are concurrent")
    try:
        dual = conic_through_five(sides)
    except NotUnique as err:
        raise DegeneratePentagon(str(err)) from err
    d = dual.dual()
    if d.is_degenerate() or dual.is_degenerate():
        raise DegeneratePentagon("inscribed conic is degenerate")
    assert all(d.is_tangent(s) for s in sides)
    return d


# ------------------------------------------------------------- labelings


def _canonical_cycle(cycle) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    c = tuple(cycle[k:]) + tuple(cycle[:k])
    return min(c, (c[0],) + tuple(reversed(c[1:])))


@dataclass(frozen=True)
class PentagonLabeling:
    """A cyclic order of five of the indices 1..6 and the remaining distinguished index."""

    cycle: tuple[int, ...]
    distinguished: int

    def __post_init__(self):
        if sorted((*self.cycle, self.distinguished)) != [1, 2, 3, 4, 5, 6]:
            raise ValueError("labeling must use each of 1..6 once")

    @classmethod
    def make(cls, cycle, distinguished=None) -> PentagonLabeling:
        cycle = tuple(int(i) for i in cycle)
        if distinguished is None:
            (distinguished,) = set(range(1, 7)) - set(cycle)
        return cls(cycle, distinguished)

    def canonical(self) -> PentagonLabeling:
        return PentagonLabeling(_canonical_cycle(self.cycle), self.distinguished)

    def dihedral_variants(self) -> list[PentagonLabeling]:
        out = []
        for seq in (self.cycle, tuple(reversed(self.cycle))):
            for k in range(5):
                out.append(PentagonLabeling(seq[k:] + seq[:k], self.distinguished))
        return out

    def __str__(self):
        return "".join(map(str, self.cycle)) + "|" + str(self.distinguished)

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "distinguished": self.distinguished}


def all_labelings() -> list[PentagonLabeling]:
    out = set()
    for d in range(1, 7):
        rest = [i for i in range(1, 7) if i != d]
        for perm in permutations(rest):
            out.add(PentagonLabeling(_canonical_cycle(perm), d))
    return sorted(out, key=lambda lab: (lab.distinguished, lab.cycle))


def hexad_pentagon_convention(w: fg.WeberHexad, w0: fg.TwoTorsion) -> PentagonLabeling:
    """Cycle (a..e) of the Type1 form {0,ab,bc,cd,de,ea} of w + w0, distinguished letter f."""
    if w0 not in w.elements:
        raise NotInHexad(f"{w0} is not in {w}")
    t = w.translate(w0)
    assert t.form is fg.HexadForm.TYPE1
    return PentagonLabeling(t.witness[:5], t.witness[5])


# ------------------------------------------------------------- branch data


@dataclass(frozen=True)
class BranchSextuple:
    values: tuple

    def __init__(self, values):
        vals = tuple(INF if v is INF else Fraction(v) for v in values)
        if len(vals) != 6:
            raise ValueError("need six branch values")
        if len(set(vals)) != 6:
            raise DuplicateElements("branch values must be pairwise distinct")
        object.__setattr__(self, "values", vals)

    def points(self) -> list[ProjPoint]:
        return [veronese(t) for t in self.values]

    def as_strings(self) -> list[str]:
        return [format_branch_value(t) for t in self.values]


def _as_sextuple(b) -> BranchSextuple:
    return b if isinstance(b, BranchSextuple) else BranchSextuple(b)


def pentagon_point_check(points, sixth) -> bool:
    """Point-level form of the criterion: sixth lies on the conic inscribed in points."""
    return inscribed_conic(points).contains(sixth)


def humbert_check(b, lab: PentagonLabeling) -> bool:
    pts = _as_sextuple(b).points()
    return pentagon_point_check([pts[i - 1] for i in lab.cycle], pts[lab.distinguished - 1])


def humbert_check_all(b) -> list[PentagonLabeling]:
    b = _as_sextuple(b)
    return [lab for lab in all_labelings() if humbert_check(b, lab)]


def humbert_locus_quartic(values, cycle=(1, 2, 3, 4, 5)) -> list[Fraction]:
    """Coefficients c0..c4 of q(t) = (1,t,t^2) D (1,t,t^2)^T; D inscribed in the labeled pentagon.

    A zero leading coefficient means t = inf is a root of the homogenized quartic.
    """
    vals = [INF if v is INF else Fraction(v) for v in values]
    if len(vals) != 5:
        raise ValueError("need five branch values")
    d = inscribed_conic([veronese(vals[i - 1]) for i in cycle]).m
    return [
        Fraction(d[0][0]),
        Fraction(2 * d[0][1]),
        Fraction(2 * d[0][2] + d[1][1]),
        Fraction(2 * d[1][2]),
        Fraction(d[2][2]),
    ]


def quartic_roots(coeffs) -> tuple[list, list[complex]]:
    """Split the roots of sum c_k t^k into exact rationals (inf included) and numeric others."""
    t = sympy.Symbol("t")
    top = max((k for k, c in enumerate(coeffs) if c), default=-1)
    if top < 0:
        raise ValueError("zero polynomial")
    exact: list = [INF] if top < 4 else []
    numeric: list[complex] = []
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(coeffs)), t)
    if poly.degree() <= 0:
        return exact, numeric
    _, factors = sympy.factor_list(poly)
    for fac, _mult in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            exact.append(Fraction(int(r.p), int(r.q)))
        else:
            numeric.extend(complex(z) for z in fac.nroots(n=30))
    return exact, numeric


# ------------------------------------------------------------- float oracle


def _veronese_c(t) -> np.ndarray:
    if t is INF:
        return np.array([0, 0, 1], dtype=complex)
    t = complex(t)
    v = np.array([1, t, t * t], dtype=complex)
    return v / np.linalg.norm(v)


def _null_conic_c(points) -> np.ndarray:
    rows = np.array([[x * x, x * y, x * z, y * y, y * z, z * z] for x, y, z in points])
    _, _, vh = np.linalg.svd(rows)
    a, b, c, d, e, f = vh[-1].conj()
    return np.array([[2 * a, b, c], [b, 2 * d, e], [c, e, 2 * f]])


def humbert_residual_float(values, lab: PentagonLabeling) -> float:
    """Normalized |p6^T D p6| with every step redone in complex floating point."""
    pts = [_veronese_c(t) for t in values]
    pent = [pts[i - 1] for i in lab.cycle]
    sides = []
    for i in range(5):
        s = np.cross(pent[i], pent[(i + 1) % 5])
        sides.append(s / np.linalg.norm(s))
    dual = _null_conic_c(sides)
    d = np.array(ex.adjugate3(dual.tolist()), dtype=complex)
    d = d / np.linalg.norm(d)
    p6 = pts[lab.distinguished - 1]
    return float(abs(p6 @ d @ p6))


# ------------------------------------------------------------- line picture


def _tangent_to(k: Conic, line) -> bool:
    """Line tangent to a nondegenerate conic k: l^T adj(k) l = 0."""
    return k.dual().contains(line)


def line_picture_check(k: Conic, lines, lab: PentagonLabeling) -> bool:
    """Pentagon of lines l_cycle, vertex conic E' through the five vertices, tangent to l_distinguished?"""
    lines = [ProjLine(tuple(l)) for l in lines]
    if len(lines) != 6:
        raise ValueError("need six lines")
    if len(set(lines)) != 6:
        raise DegeneratePentagon("repeated line")
    for l in lines:
        if not _tangent_to(k, l):
            raise NotTangent(f"{l} is not tangent to the conic")
    pent = [lines[i - 1] for i in lab.cycle]
    vertices = [meet(pent[i], pent[(i + 1) % 5]) for i in range(5)]
    try:
        e = conic_through_five(vertices)
    except NotUnique as err:
        raise DegeneratePentagon(str(err)) from err
    if e.is_degenerate():
        raise DegeneratePentagon("vertex conic is degenerate")
    return e.is_tangent(lines[lab.distinguished - 1])


def dualize(b) -> tuple[Conic, list[ProjLine]]:
    """The branch points as lines tangent to the dual of xz = y^2."""
    b = _as_sextuple(b)
    return VERONESE_CONIC.dual(), [ProjLine(p.coords) for p in b.points()]


def circle_tangent(u) -> ProjLine:
    """Tangent line to x^2 + y^2 = z^2 at (1 - u^2 : 2u : 1 + u^2); u = inf gives (-1 : 0 : 1)."""
    if u is INF:
        return ProjLine(1, 0, 1)
    u = Fraction(u)
    return ProjLine(1 - u * u, 2 * u, -(1 + u * u))


UNIT_CIRCLE = Conic([[1, 0, 0], [0, 1, 0], [0, 0, -1]])


def vertex_conic(lines) -> Conic:
    pent = [tuple(l) for l in lines]
    return conic_through_five([meet(pent[i], pent[(i + 1) % 5]) for i in range(5)])


def circle_sixth_tangents(us) -> list[complex]:
    """Parameters u of circle tangents l(u) that touch the vertex conic of l(u1)..l(u5)."""
    e = vertex_conic([circle_tangent(u) for u in us])
    adj = [[Fraction(x) for x in row] for row in ex.adjugate3(e.m)]
    u = sympy.Symbol("u")
    l = [1 - u**2, 2 * u, -(1 + u**2)]
    q = sympy.expand(sum(l[i] * sympy.Rational(adj[i][j].numerator, adj[i][j].denominator) * l[j] for i in range(3) for j in range(3)))
    return [complex(z) for z in sympy.Poly(q, u).nroots(n=30)]


def line_residual_float(k_lines, vertex_lines) -> float:
    """Normalized l^T adj(E') l for a float line l and E' from five exact lines."""
    e = vertex_conic(vertex_lines)
    adj = np.array(ex.adjugate3(e.m), dtype=complex)
    adj = adj / np.linalg.norm(adj)
    l = np.array(k_lines, dtype=complex)
    l = l / np.linalg.norm(l)
    return float(abs(l @ adj @ l))


# ------------------------------------------------------------- transformations


def mobius(t, a, b, c, d):
    """t -> (a t + b) / (c t + d) on P^1 over Q."""
    a, b, c, d = map(Fraction, (a, b, c, d))
    if a * d - b * c == 0:
        raise ValueError("singular Mobius map")
    if t is INF:
        return INF if c == 0 else a / c
    den = c * t + d
    if den == 0:
        return INF
    return (a * t + b) / den


def random_mobius(rng: random.Random, bound: int = 9) -> tuple[int, int, int, int]:
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c:
            return a, b, c, d


def random_projectivity(rng: random.Random, bound: int = 9) -> list[list[int]]:
    while True:
        a = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if ex.det3(a):
            return a


def random_sextuple(rng: random.Random, bound: int = 30) -> BranchSextuple:
    vals: set = set()
    while len(vals) < 6:
        vals.add(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    return BranchSextuple(sorted(vals))


def apply_projectivity(a, p) -> ProjPoint:
    return ProjPoint(ex.matvec(a, tuple(p)))


# ------------------------------------------------------------- rational instances


def rational_instance_search(bound: int = 4, limit: int = 1):
    """Look for exact Humbert sextuples (0, 1, inf, a, b, r) with r a rational root.

    Möbius invariance lets three branch values be fixed.  The labeling is the
    identity cycle with 6 distinguished.  Returns at most ``limit`` hits.
    """
    cands = sorted({Fraction(p, q) for p in range(-bound, bound + 1) for q in range(1, bound + 1)} - {0, 1})
    lab = PentagonLabeling((1, 2, 3, 4, 5), 6)
    hits = []
    for a, b in combinations(cands, 2):
        five = [Fraction(0), Fraction(1), INF, a, b]
        try:
            coeffs = humbert_locus_quartic(five)
        except DegeneratePentagon:
            continue
        exact, _ = quartic_roots(coeffs)
        for r in exact:
            if r in five:
                continue
            hits.append((BranchSextuple(five + [r]), lab))
            if len(hits) >= limit:
                return hits
    return hits
