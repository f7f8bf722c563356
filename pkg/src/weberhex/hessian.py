"""Hessian quartic model  s1+...+s5 = 0,  sum lambda_i / s_i = 0.

The degeneration test is exact: the product of the sixteen linear forms
sqrt(l1) + e2 sqrt(l2) + ... + e5 sqrt(l5) is evaluated in the algebra
Z[l][s_1..s_5]/(s_i^2 - l_i), where it collapses to a rational number P(l).
P vanishes iff some signed sum of square roots does.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import isqrt, lcm

import sympy

from . import _exact as ex
from . import kernels
from .errors import NoRationalSquareRoots, NotDegenerate, ZeroLambda

DIM = 5
SIGN_PATTERNS = tuple((1, *rest) for rest in product((1, -1), repeat=DIM - 1))


@dataclass(frozen=True)
class LambdaVector:
    values: tuple[Fraction, ...]

    def __init__(self, values):
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != DIM:
            raise ValueError("need exactly five lambda values")
        if any(v == 0 for v in vals):
            raise ZeroLambda("all lambda_i must be nonzero")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def scaled(self, t) -> LambdaVector:
        return LambdaVector(Fraction(t) * v for v in self.values)

    def permuted(self, perm) -> LambdaVector:
        return LambdaVector(self.values[i] for i in perm)

    def as_strings(self) -> list[str]:
        return [ex.frac_str(v) for v in self.values]


def _lam(lam) -> LambdaVector:
    return lam if isinstance(lam, LambdaVector) else LambdaVector(lam)


class SqrtAlgebraElement:
    """Element of R[s_1..s_5]/(s_i^2 - lam_i) over any commutative coefficient ring.

    Coefficients are indexed by 5-bit exponent masks; bit i set means s_{i+1}
    appears.  Multiplication is delegated to the compiled kernel when present.
    """

    __slots__ = ("coeffs", "lam", "_lamprod")

    def __init__(self, coeffs, lam, lamprod=None):
        self.coeffs = list(coeffs)
        self.lam = tuple(lam)
        if lamprod is None:
            lamprod = []
            for m in range(1 << DIM):
                p = 1
                for i in range(DIM):
                    if m >> i & 1:
                        p = p * self.lam[i]
                lamprod.append(p)
        self._lamprod = lamprod

    @classmethod
    def linear(cls, signs, lam) -> SqrtAlgebraElement:
        c = [0] * (1 << DIM)
        for i, e in enumerate(signs):
            c[1 << i] = e
        return cls(c, lam)

    @classmethod
    def one(cls, lam) -> SqrtAlgebraElement:
        c = [0] * (1 << DIM)
        c[0] = 1
        return cls(c, lam)

    def __mul__(self, other):
        return SqrtAlgebraElement(kernels.sqrt_mul(self.coeffs, other.coeffs, self._lamprod), self.lam, self._lamprod)

    @property
    def rational_part(self):
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])


def _sign_product(lam_ring):
    acc = SqrtAlgebraElement.one(lam_ring)
    for signs in SIGN_PATTERNS:
        acc = acc * SqrtAlgebraElement.linear(signs, lam_ring)
    assert acc.is_rational()
    return acc.rational_part


def degeneration_polynomial(lam) -> Fraction:
    """Exact P(lam) = prod over e2..e5 of (s1 + e2 s2 + ... + e5 s5), s_i^2 = lam_i.

    lam is scaled to integers first; P is homogeneous of degree 8.
    """
    lam = _lam(lam)
    den = reduce(lcm, (v.denominator for v in lam), 1)
    ints = [int(v * den) for v in lam]
    return Fraction(_sign_product(ints), den**8)


def degeneration_polynomial_symbolic():
    """P as a polynomial in l1..l5 over Z (a sympy PolyElement)."""
    ring, *gens = sympy.ring("l1:6", sympy.ZZ)
    return _sign_product(gens), ring


def is_degenerate(lam) -> bool:
    return degeneration_polynomial(lam) == 0


def min_sign_sum_float(lam) -> float:
    """Floating oracle: min over sign patterns of |sum e_i sqrt(l_i / max|l|)|.

    Uses the principal complex square root for negative entries; only the
    positive case is authoritative.
    """
    vals = [float(v) for v in _lam(lam)]
    top = max(abs(v) for v in vals)
    roots = [cmath.sqrt(v / top) if v < 0 else math.sqrt(v / top) for v in vals]
    return min(abs(sum(e * r for e, r in zip(signs, roots))) for signs in SIGN_PATTERNS)


def is_degenerate_float(lam, tol: float = 1e-9) -> bool:
    return min_sign_sum_float(lam) < tol


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def square_classes(lam) -> list[tuple[int, list[Fraction]]]:
    """Group indices whose ratios are rational squares.

    Returns (representative index, [q_i]) with sqrt(l_i) = q_i sqrt(l_rep),
    q_i > 0 (principal branch).  Square roots from different classes are
    linearly independent over Q.
    """
    lam = _lam(lam)
    classes: list[tuple[int, dict[int, Fraction]]] = []
    for i, v in enumerate(lam):
        for rep, members in classes:
            q = _rational_sqrt(v / lam[rep])
            if q is not None:
                members[i] = q
                break
        else:
            classes.append((i, {i: Fraction(1)}))
    out = []
    for rep, members in classes:
        out.append((rep, [members.get(i, Fraction(0)) for i in range(DIM)]))
    return out


def vanishing_sign_patterns(lam) -> list[tuple[int, ...]]:
    """Sign patterns (first sign +1) with sum e_i sqrt(l_i) = 0, decided exactly."""
    classes = square_classes(lam)
    return [s for s in SIGN_PATTERNS if all(sum(e * q for e, q in zip(s, qs)) == 0 for _, qs in classes)]


@dataclass(frozen=True)
class QuarticPoint:
    """Homogeneous coordinates on the hyperplane sum s_i = 0."""

    coords: tuple
    exact: bool = True

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("all coordinates are zero")

    @classmethod
    def normalized(cls, coords, exact=True) -> QuarticPoint:
        if exact:
            return cls(ex.primitive(coords), True)
        lead = next(c for c in coords if abs(c) > 1e-300)
        return cls(tuple(c / lead for c in coords), False)

    def as_strings(self) -> list[str]:
        if self.exact:
            return [ex.frac_str(c) for c in self.coords]
        return [repr(c) for c in self.coords]


def _point_for_pattern(lam: LambdaVector, signs, exact: bool) -> QuarticPoint:
    classes = square_classes(lam)
    if exact:
        if len(classes) != 1:
            raise NoRationalSquareRoots("lambda ratios are not all rational squares")
        (_, qs), = classes
        return QuarticPoint.normalized([e * q for e, q in zip(signs, qs)])
    roots = [cmath.sqrt(float(v)) if v < 0 else math.sqrt(float(v)) for v in lam]
    return QuarticPoint.normalized([e * r for e, r in zip(signs, roots)], exact=False)


def involution_fixed_points(lam, exact: bool | None = None) -> list[QuarticPoint]:
    """Fixed points of s -> lam/s on the model, one per vanishing sign pattern.

    Fixed points satisfy lam_i / s_i^2 = const, so s_i = e_i sqrt(lam_i), and lie
    on the model iff the signed sum vanishes.  ``exact=None`` picks exact
    coordinates whenever they are rational.
    """
    lam = _lam(lam)
    pats = vanishing_sign_patterns(lam)
    if exact is None:
        exact = len(square_classes(lam)) == 1
    return [_point_for_pattern(lam, s, exact) for s in pats]


def eleventh_node_coordinates(lam, exact: bool = True) -> QuarticPoint:
    """The extra node s_i = e_i sqrt(lam_i) for the first vanishing sign pattern."""
    lam = _lam(lam)
    pats = vanishing_sign_patterns(lam)
    if not pats:
        raise NotDegenerate("no signed sum of square roots vanishes")
    p = _point_for_pattern(lam, pats[0], exact)
    if exact and not (is_singular_point(lam, p.coords) and rank_condition(lam, p.coords)):
        raise AssertionError(f"{p} is not a node of the model")
    return p


def sigma(lam, s) -> list:
    """The Hutchinson-Weber map s_i -> lam_i / s_i (coordinates must be nonzero)."""
    return [Fraction(v) / x if isinstance(x, (int, Fraction)) else float(v) / x for v, x in zip(_lam(lam), s)]


# ------------------------------------------------------------- the quartic


def quintic_form(lam, s):
    """F(s) = sum_i lam_i prod_{j != i} s_j (the model is F = 0 on sum s = 0)."""
    total = 0
    for i in range(DIM):
        term = lam[i]
        for j in range(DIM):
            if j != i:
                term = term * s[j]
        total += term
    return total


def quintic_gradient(lam, s) -> list:
    out = []
    for k in range(DIM):
        g = 0
        for i in range(DIM):
            if i == k:
                continue
            term = lam[i]
            for j in range(DIM):
                if j != i and j != k:
                    term = term * s[j]
            g += term
        out.append(g)
    return out


def restricted_gradient(lam, s) -> list:
    """Gradient of f(s1..s4) = F(s1, .., s4, -(s1+..+s4)): dF/ds_k - dF/ds_5."""
    g = quintic_gradient(lam, s)
    return [g[k] - g[4] for k in range(4)]


def is_singular_point(lam, s, tol=None) -> bool:
    lam = tuple(_lam(lam))
    vals = [sum(s), quintic_form(lam, s), *restricted_gradient(lam, s)]
    if tol is None:
        return all(v == 0 for v in vals)
    scale = max(abs(x) for x in s)
    return all(abs(v) <= tol * max(1.0, scale**4) for v in vals)


def rank_condition(lam, s) -> bool:
    """rank [[1,..,1],[lam_i/s_i^2]] <= 1, i.e. lam_i / s_i^2 constant."""
    lam = _lam(lam)
    ratios = [Fraction(v) / (Fraction(x) ** 2) for v, x in zip(lam, s)]
    return len(set(ratios)) == 1


S_SYMBOLS = sympy.symbols("s1:5")
L_SYMBOLS = sympy.symbols("l1:6")


def quartic_equation(lam=None) -> sympy.Poly:
    """f(s1..s4) with s5 = -(s1+..+s4), expanded; symbolic in l1..l5 when lam is None."""
    s = list(S_SYMBOLS) + [-sum(S_SYMBOLS)]
    if lam is None:
        coeffs = list(L_SYMBOLS)
        domain = sympy.ZZ[tuple(L_SYMBOLS)]
    else:
        coeffs = [sympy.Rational(v.numerator, v.denominator) for v in _lam(lam)]
        domain = sympy.QQ
    expr = sum(coeffs[i] * sympy.Mul(*[s[j] for j in range(DIM) if j != i]) for i in range(DIM))
    return sympy.Poly(sympy.expand(expr), *S_SYMBOLS, domain=domain)


def coordinate_points() -> dict[tuple[int, int, int], tuple[int, ...]]:
    """P_ijk = {s_i = s_j = s_k = 0} on sum s = 0, keyed by 1-based (i, j, k)."""
    out = {}
    for triple in combinations(range(DIM), 3):
        a, b = [i for i in range(DIM) if i not in triple]
        p = [0] * DIM
        p[a], p[b] = 1, -1
        out[tuple(i + 1 for i in triple)] = tuple(p)
    return out


def count_coordinate_nodes(lam) -> int:
    lam = tuple(_lam(lam))
    return sum(is_singular_point(lam, p) for p in coordinate_points().values())


def node_report(lam) -> dict:
    """Exact summary; node coordinates are listed only when they are rational."""
    lam = _lam(lam)
    p = degeneration_polynomial(lam)
    n_extra = len(vanishing_sign_patterns(lam))
    rational = len(square_classes(lam)) == 1
    extra = [q.as_strings() for q in involution_fixed_points(lam, exact=True)] if rational else None
    coordinate = count_coordinate_nodes(lam)
    return {
        "degenerate": p == 0,
        "P": ex.frac_str(p),
        "node": extra[0] if extra else None,
        "extra_nodes": extra,
        "extra_node_count": n_extra,
        "coordinate_nodes": coordinate,
        "total_nodes": coordinate + n_extra,
    }
