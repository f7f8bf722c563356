"""The (16)_6 configuration as a lattice on 32 generators.

Generators are the sixteen nodes N_a (a in J(C)_2, in enumeration order)
followed by the sixteen tropes T_b (b a theta characteristic).  The Gram
matrix is degenerate of rank 17; two coordinate vectors are the same class
exactly when their difference pairs to zero with every generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from . import _exact as ex
from . import f2geom as fg
from .errors import WrongKind

N_GEN = 32


def n_index(a: fg.TwoTorsion) -> int:
    return a.index


def t_index(b: fg.ThetaChar) -> int:
    return 16 + b.index


def generator_names() -> list[str]:
    return [f"N_{a}" for a in fg.TWO_TORSION] + [f"T_{b}" for b in fg.THETA_CHARS]


@cache
def incidence_matrix() -> tuple[tuple[int, ...], ...]:
    """16x16 0/1 matrix, rows nodes, columns tropes."""
    return tuple(tuple(int(fg.incident(a, b)) for b in fg.THETA_CHARS) for a in fg.TWO_TORSION)


@cache
def _gram() -> tuple[tuple[int, ...], ...]:
    inc = incidence_matrix()
    g = [[0] * N_GEN for _ in range(N_GEN)]
    for i in range(16):
        g[i][i] = -2
        g[16 + i][16 + i] = -2
        for j in range(16):
            g[i][16 + j] = g[16 + j][i] = inc[i][j]
    return tuple(map(tuple, g))


def gram_matrix() -> list[list[int]]:
    return [list(row) for row in _gram()]


def pair(x, y):
    return ex.bilinear(x, _gram(), y)


def in_radical(v) -> bool:
    return all(x == 0 for x in ex.matvec(_gram(), v))


@dataclass(frozen=True)
class DivisorClass:
    """Formal combination of the 32 generators (integer or rational coefficients)."""

    coords: tuple

    @classmethod
    def zero(cls) -> DivisorClass:
        return cls((0,) * N_GEN)

    @classmethod
    def node(cls, a) -> DivisorClass:
        if isinstance(a, str):
            a = fg.TwoTorsion(a)
        c = [0] * N_GEN
        c[n_index(a)] = 1
        return cls(tuple(c))

    @classmethod
    def trope(cls, b) -> DivisorClass:
        if isinstance(b, str):
            b = fg.ThetaChar(b)
        c = [0] * N_GEN
        c[t_index(b)] = 1
        return cls(tuple(c))

    def __add__(self, other):
        return type(self)(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return type(self)(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(tuple(-x for x in self.coords))

    def __rmul__(self, k):
        return type(self)(tuple(k * x for x in self.coords))

    def pair(self, other) -> Fraction:
        return Fraction(pair(self.coords, other.coords))

    def self_pair(self) -> Fraction:
        return self.pair(self)

    def equivalent(self, other) -> bool:
        """Equal as classes: the difference lies in the radical."""
        return in_radical((self - other).coords)

    def is_dual(self) -> bool:
        """Pairs integrally with every generator."""
        return all(Fraction(x).denominator == 1 for x in ex.matvec(_gram(), self.coords))

    def to_json(self) -> dict[str, str]:
        names = generator_names()
        return {names[i]: ex.frac_str(x) for i, x in enumerate(self.coords) if x}


# rational classes use the same container; the alias documents intent
RationalClass = DivisorClass


def nodes_sum(elements) -> DivisorClass:
    out = DivisorClass.zero()
    for a in elements:
        out = out + DivisorClass.node(a)
    return out


def incident_nodes(b: fg.ThetaChar) -> list[fg.TwoTorsion]:
    return [a for a in fg.TWO_TORSION if fg.incident(a, b)]


def trope_relation(b: fg.ThetaChar) -> DivisorClass:
    """2 T_b + sum of the six nodes on T_b."""
    return 2 * DivisorClass.trope(b) + nodes_sum(incident_nodes(b))


def class_H() -> DivisorClass:
    """H = 2 T_1 + N_0 + sum_j N_1j."""
    return trope_relation(fg.ThetaChar("1"))


def check_H_relations() -> list[dict]:
    h = class_H()
    out = []
    for b in fg.THETA_CHARS:
        out.append({"check": f"H ~ 2T_{b} + sum N", "parameters": {"beta": str(b)}, "pass": h.equivalent(trope_relation(b))})
    all_t = DivisorClass.zero()
    for b in fg.THETA_CHARS:
        all_t = all_t + DivisorClass.trope(b)
    rhs = 2 * all_t + 6 * nodes_sum(fg.TWO_TORSION)
    out.append({"check": "16H ~ 2 sum T + 6 sum N", "parameters": {}, "pass": (16 * h).equivalent(rhs)})
    return out


def lattice_rank() -> int:
    return ex.rank(gram_matrix())


def hessian_class(w: fg.WeberHexad) -> DivisorClass:
    """L = 2H - sum_{a in w} N_a."""
    return 2 * class_H() - nodes_sum(w.elements)


CANONICAL_W = ("12", "23", "13", "14", "25", "36")

S_DIVISORS = {
    "S1": (("2", "3", "124", "134"), ("0", "24", "26", "34", "35", "56")),
    "S2": (("123", "145", "134", "125"), ("15", "26", "34", "45", "46", "56")),
    "S3": (("1", "3", "125", "146"), ("0", "15", "16", "34", "35", "46")),
    "S4": (("123", "124", "146", "136"), ("16", "24", "35", "45", "46", "56")),
    "S5": (("1", "2", "136", "145"), ("0", "15", "16", "24", "26", "45")),
}


def canonical_hexad() -> fg.WeberHexad:
    return fg.WeberHexad.from_elements(fg.TwoTorsion(x) for x in CANONICAL_W)


def _s_divisor(tropes, nodes, g: fg.AffineMap = fg.IDENTITY) -> DivisorClass:
    out = DivisorClass.zero()
    for b in tropes:
        out = out + DivisorClass.trope(g(fg.ThetaChar(b)))
    for a in nodes:
        out = out + DivisorClass.node(g(fg.TwoTorsion(a)))
    return out


def s_divisors(w: fg.WeberHexad | None = None) -> dict[str, DivisorClass]:
    """The five divisors S_1..S_5, carried to ``w`` by an affine map if given."""
    g = fg.IDENTITY
    if w is not None:
        g = transport_map(canonical_hexad(), w)
    return {k: _s_divisor(t, n, g) for k, (t, n) in S_DIVISORS.items()}


def transport_map(src: fg.WeberHexad, dst: fg.WeberHexad) -> fg.AffineMap:
    """Some affine map carrying src onto dst (first in group order)."""
    for g in fg.affine_group():
        if g.apply_set(src.elements) == dst.elements:
            return g
    raise ValueError("hexads are not in the same orbit")


def check_S_divisors() -> list[dict]:
    w = canonical_hexad()
    big_l = hessian_class(w)
    divs = s_divisors()
    out = []
    for name, d in divs.items():
        out.append({"check": f"{name} ~ L", "parameters": {"W": str(w)}, "pass": d.equivalent(big_l)})
    total = DivisorClass.zero()
    for d in divs.values():
        total = total + d
    t_mult = {str(b): total.coords[t_index(b)] for b in fg.THETA_CHARS if total.coords[t_index(b)]}
    n_mult = {str(a): total.coords[n_index(a)] for a in fg.TWO_TORSION if total.coords[n_index(a)]}
    out.append({"check": "tropes in union have multiplicity 2", "parameters": {}, "pass": len(t_mult) == 10 and set(t_mult.values()) == {2}, "witness": t_mult})
    out.append({"check": "nodes in union have multiplicity 3", "parameters": {}, "pass": len(n_mult) == 10 and set(n_mult.values()) == {3}, "witness": n_mult})
    return out


def node_coverage(w: fg.WeberHexad) -> set[fg.TwoTorsion]:
    """Nodes occurring in the transported S-divisors (the ten contracted nodes)."""
    cover = set()
    for d in s_divisors(w).values():
        cover |= {a for a in fg.TWO_TORSION if d.coords[n_index(a)]}
    return cover


def eleventh_node_class(w: fg.WeberHexad) -> DivisorClass:
    """(3/4) H - (1/2) sum_{a in w} N_a."""
    return Fraction(3, 4) * class_H() - Fraction(1, 2) * nodes_sum(w.elements)


def solve_eleventh_node_class(w: fg.WeberHexad) -> DivisorClass:
    """Class in span{H, N_a} with (E,H)=3, (E,N_a)=[a in w], found by a linear solve."""
    h = class_H()
    span = [h] + [DivisorClass.node(a) for a in fg.TWO_TORSION]
    gram = [[x.pair(y) for y in span] for x in span]
    rhs = [Fraction(3)] + [Fraction(int(a in w.elements)) for a in fg.TWO_TORSION]
    coeffs = ex.solve(gram, rhs)
    out = DivisorClass((Fraction(0),) * N_GEN)
    for c, v in zip(coeffs, span):
        out = out + c * v
    return out


def switch_obstruction(r: fg.Tetrad) -> DivisorClass:
    """H/4 + (1/2) sum_{a in r} N_a for a Rosenhain tetrad r."""
    if r.kind is not fg.TetradKind.ROSENHAIN:
        raise WrongKind(f"{r} is a Goepel tetrad")
    return Fraction(1, 4) * class_H() + Fraction(1, 2) * nodes_sum(r.elements)


# ------------------------------------------------------------- automorphisms


@dataclass(frozen=True)
class LatticeMap:
    """Permutation of the 32 generators; images[i] is the image of generator i."""

    images: tuple[int, ...]
    name: str = ""

    def __call__(self, d: DivisorClass) -> DivisorClass:
        out = [0] * N_GEN
        for i, x in enumerate(d.coords):
            if x:
                out[self.images[i]] += x
        return type(d)(tuple(out))

    def compose(self, other: LatticeMap) -> LatticeMap:
        return LatticeMap(tuple(self.images[other.images[i]] for i in range(N_GEN)), f"{self.name}*{other.name}")

    def preserves_pairing(self) -> bool:
        g = _gram()
        return all(g[self.images[i]][self.images[j]] == g[i][j] for i in range(N_GEN) for j in range(N_GEN))


def translation_action(a: fg.TwoTorsion) -> LatticeMap:
    """N_x -> N_{x+a}, T_b -> T_{b+a}."""
    imgs = [n_index(x + a) for x in fg.TWO_TORSION] + [t_index(b + a) for b in fg.THETA_CHARS]
    return LatticeMap(tuple(imgs), f"t_{a}")


def switch_action(b: fg.ThetaChar) -> LatticeMap:
    """N_x -> T_{x+b}, T_c -> N_{c+b}."""
    imgs = [t_index(x + b) for x in fg.TWO_TORSION] + [n_index(c + b) for c in fg.THETA_CHARS]
    return LatticeMap(tuple(imgs), f"s_{b}")


def switched_hexad(w: fg.WeberHexad, b: fg.ThetaChar) -> set[fg.TwoTorsion]:
    """Nodes N_g with (switch(E_w), N_g) = 1; a Weber hexad when the switch acts on E_w."""
    e = eleventh_node_class(w)
    img = switch_action(b)(e)
    return {a for a in fg.TWO_TORSION if img.pair(DivisorClass.node(a)) == 1}
