"""Affine symplectic geometry of the 2-torsion group of a genus-2 Jacobian.

Points of J(C)_2 are even subsets of the six Weierstrass letters modulo
complement; theta characteristics are odd subsets modulo complement.  Both are
stored as 6-bit masks in a canonical form, so equality and hashing are plain
integer comparisons.

The module covers tetrads (Goepel / Rosenhain), Weber hexads, the affine group
J(C)_2 . S_6 of order 11520, and the partition of the 192 hexads into six
classes ("dual six"), computed both through synthematic totals and through the
move set W ~ W + a, G-R ~ G-R^perp.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cache, total_ordering
from itertools import combinations, permutations

from . import kernels
from .errors import DuplicateElements, NotLinear, WrongKind

LETTERS = (1, 2, 3, 4, 5, 6)
_FULL = 0b111111


def _mask(letters) -> int:
    m = 0
    for x in letters:
        if x not in LETTERS:
            raise ValueError(f"letter {x!r} not in 1..6")
        m ^= 1 << (x - 1)
    return m


def _letters(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(6) if mask >> i & 1)


def _relabel(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i in range(6):
        if mask >> i & 1:
            out |= 1 << (perm[i] - 1)
    return out


def _parse_letters(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]")
    if text in ("0", ""):
        return ()
    return tuple(int(ch) for ch in text)


@total_ordering
class TwoTorsion:
    """A point of J(C)_2: an even subset of letters, canonical size 0 or 2."""

    __slots__ = ("mask",)

    def __init__(self, letters=()):
        if isinstance(letters, str):
            letters = _parse_letters(letters)
        m = _mask(letters)
        if bin(m).count("1") % 2:
            raise ValueError(f"{letters!r} has odd size")
        self.mask = _canon_even(m)

    @classmethod
    def from_mask(cls, mask: int) -> TwoTorsion:
        obj = object.__new__(cls)
        obj.mask = _canon_even(mask)
        return obj

    @property
    def rep(self) -> tuple[int, ...]:
        return _letters(self.mask)

    def __add__(self, other):
        if isinstance(other, TwoTorsion):
            return TwoTorsion.from_mask(self.mask ^ other.mask)
        if isinstance(other, ThetaChar):
            return ThetaChar.from_mask(self.mask ^ other.mask)
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return isinstance(other, TwoTorsion) and self.mask == other.mask

    def __hash__(self):
        return hash(("J2", self.mask))

    def __lt__(self, other):
        return self.rep < other.rep

    @property
    def index(self) -> int:
        return TWO_TORSION_INDEX[self]

    def __str__(self):
        return "".join(map(str, self.rep)) or "0"

    def __repr__(self):
        return f"TwoTorsion({str(self)!r})"


@total_ordering
class ThetaChar:
    """A theta characteristic: odd subset, canonical size 1 or size 3 containing 1."""

    __slots__ = ("mask",)

    def __init__(self, letters):
        if isinstance(letters, str):
            letters = _parse_letters(letters)
        m = _mask(letters)
        if bin(m).count("1") % 2 == 0:
            raise ValueError(f"{letters!r} has even size")
        self.mask = _canon_odd(m)

    @classmethod
    def from_mask(cls, mask: int) -> ThetaChar:
        obj = object.__new__(cls)
        obj.mask = _canon_odd(mask)
        return obj

    @property
    def rep(self) -> tuple[int, ...]:
        return _letters(self.mask)

    def __add__(self, other):
        if isinstance(other, TwoTorsion):
            return ThetaChar.from_mask(self.mask ^ other.mask)
        if isinstance(other, ThetaChar):
            return TwoTorsion.from_mask(self.mask ^ other.mask)
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return isinstance(other, ThetaChar) and self.mask == other.mask

    def __hash__(self):
        return hash(("S", self.mask))

    def __lt__(self, other):
        return self.rep < other.rep

    @property
    def index(self) -> int:
        return THETA_INDEX[self]

    def __str__(self):
        return "".join(map(str, self.rep))

    def __repr__(self):
        return f"ThetaChar({str(self)!r})"


def _canon_even(m: int) -> int:
    if bin(m).count("1") > 2:
        m ^= _FULL
    return m


def _canon_odd(m: int) -> int:
    size = bin(m).count("1")
    if size == 5 or (size == 3 and not m & 1):
        m ^= _FULL
    return m


TWO_TORSION: tuple[TwoTorsion, ...] = tuple(
    sorted({TwoTorsion.from_mask(m) for m in range(64) if bin(m).count("1") % 2 == 0})
)
THETA_CHARS: tuple[ThetaChar, ...] = tuple(
    sorted({ThetaChar.from_mask(m) for m in range(64) if bin(m).count("1") % 2})
)
TWO_TORSION_INDEX = {a: i for i, a in enumerate(TWO_TORSION)}
THETA_INDEX = {b: i for i, b in enumerate(THETA_CHARS)}
ZERO = TWO_TORSION[0]


def symplectic_form(a: TwoTorsion, b: TwoTorsion) -> int:
    """(a, b) = |a cap b| mod 2, well defined on classes mod complement."""
    return bin(a.mask & b.mask).count("1") & 1


def incident(a: TwoTorsion, b: ThetaChar) -> bool:
    """Node N_a lies on trope T_b iff a + b is the class of a single letter."""
    return len((a + b).rep) == 1


def element_sum(elements) -> TwoTorsion:
    m = 0
    for x in elements:
        m ^= x.mask
    return TwoTorsion.from_mask(m)


def elements_to_mask(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << TWO_TORSION_INDEX[x]
    return m


def mask_to_elements(mask: int) -> tuple[TwoTorsion, ...]:
    return tuple(TWO_TORSION[i] for i in range(16) if mask >> i & 1)


def format_set(elements) -> str:
    return ",".join(str(x) for x in sorted(elements))


def parse_set(text: str) -> list[TwoTorsion]:
    return [TwoTorsion(tok) for tok in text.replace("{", "").replace("}", "").split(",") if tok.strip()]


# ---------------------------------------------------------------- tetrads


class TetradKind(str, enum.Enum):
    GOEPEL = "goepel"
    ROSENHAIN = "rosenhain"


@dataclass(frozen=True, order=False)
class Tetrad:
    elements: frozenset
    kind: TetradKind

    def __post_init__(self):
        if len(self.elements) != 4 or element_sum(self.elements) != ZERO:
            raise ValueError("a tetrad is an affine plane of four points")

    @classmethod
    def from_elements(cls, elements) -> Tetrad:
        elements = frozenset(elements)
        return cls(elements, tetrad_kind(elements))

    def directions(self) -> frozenset:
        base = min(self.elements)
        return frozenset(x + base for x in self.elements)

    @property
    def is_linear(self) -> bool:
        return ZERO in self.elements

    def sort_key(self):
        return tuple(x.rep for x in sorted(self.elements))

    def __str__(self):
        return "{" + format_set(self.elements) + "}"


def is_affine_plane(elements) -> bool:
    elements = set(elements)
    return len(elements) == 4 and element_sum(elements) == ZERO


def tetrad_kind(elements) -> TetradKind:
    if not is_affine_plane(elements):
        raise ValueError("not an affine plane")
    base = next(iter(elements))
    d = [x + base for x in elements if x != base]
    iso = all(symplectic_form(u, v) == 0 for u, v in combinations(d, 2))
    return TetradKind.GOEPEL if iso else TetradKind.ROSENHAIN


@cache
def _all_planes() -> tuple[Tetrad, ...]:
    planes = [Tetrad.from_elements(q) for q in combinations(TWO_TORSION, 4) if is_affine_plane(q)]
    return tuple(sorted(planes, key=Tetrad.sort_key))


def enumerate_tetrads(kind) -> list[Tetrad]:
    """All affine planes of the given kind, in lexicographic order."""
    kind = TetradKind(kind)
    return [t for t in _all_planes() if t.kind is kind]


def rosenhain_perp(r: Tetrad) -> Tetrad:
    """Symplectic complement of a linear Rosenhain plane."""
    if not r.is_linear:
        raise NotLinear(f"{r} does not contain 0")
    if r.kind is not TetradKind.ROSENHAIN:
        raise WrongKind(f"{r} is a Goepel tetrad")
    perp = [x for x in TWO_TORSION if all(symplectic_form(x, y) == 0 for y in r.elements)]
    return Tetrad.from_elements(perp)


# ---------------------------------------------------------------- hexads


class HexadForm(str, enum.Enum):
    TYPE1 = "type1"  # {0, ab, bc, cd, de, ea}
    TYPE2 = "type2"  # {ij, jk, ki, il, jm, kn}


def _cycle_canonical(cycle) -> tuple[int, ...]:
    """Rotate to the smallest letter, then pick the direction with the smaller successor."""
    k = cycle.index(min(cycle))
    c = tuple(cycle[k:]) + tuple(cycle[:k])
    rev = (c[0],) + tuple(reversed(c[1:]))
    return min(c, rev)


def _classify(elements) -> tuple[HexadForm, tuple[int, ...]] | None:
    """Match a 6-set against the two standard forms; return (form, letters)."""
    elements = set(elements)
    if len(elements) != 6:
        return None
    duads = [x.rep for x in elements if x != ZERO]
    adj: dict[int, set[int]] = {i: set() for i in LETTERS}
    for a, b in duads:
        adj[a].add(b)
        adj[b].add(a)
    if ZERO in elements:
        used = [v for v in LETTERS if adj[v]]
        if len(used) != 5 or any(len(adj[v]) != 2 for v in used):
            return None
        # connected 2-regular on five vertices is the pentagon
        start = used[0]
        cycle, prev, cur = [start], None, start
        while True:
            nxt = min(adj[cur] - {prev}) if prev is not None else min(adj[cur])
            if nxt == start:
                break
            cycle.append(nxt)
            prev, cur = cur, nxt
        if len(cycle) != 5:
            return None
        missing = next(v for v in LETTERS if not adj[v])
        return HexadForm.TYPE1, _cycle_canonical(cycle) + (missing,)
    degs = sorted(len(adj[v]) for v in LETTERS)
    if degs != [1, 1, 1, 3, 3, 3]:
        return None
    tri = sorted(v for v in LETTERS if len(adj[v]) == 3)
    i, j, k = tri
    if not (j in adj[i] and k in adj[j] and i in adj[k]):
        return None
    pend = []
    for v in tri:
        (leaf,) = adj[v] - set(tri)
        pend.append(leaf)
    if len(set(pend)) != 3:
        return None
    return HexadForm.TYPE2, (i, j, k, *pend)


@dataclass(frozen=True)
class WeberHexad:
    elements: frozenset
    form: HexadForm
    witness: tuple[int, ...]

    @classmethod
    def from_elements(cls, elements) -> WeberHexad:
        elements = frozenset(elements)
        found = _classify(elements)
        if found is None:
            raise ValueError(f"{format_set(elements)} matches neither standard form")
        return cls(elements, *found)

    @property
    def mask(self) -> int:
        return elements_to_mask(self.elements)

    def translate(self, a: TwoTorsion) -> WeberHexad:
        return WeberHexad.from_elements(x + a for x in self.elements)

    def sort_key(self):
        return tuple(x.rep for x in sorted(self.elements))

    def __str__(self):
        return "{" + format_set(self.elements) + "}"


@cache
def enumerate_weber_hexads() -> tuple[WeberHexad, ...]:
    """All 6-sets G - R with G Goepel, R Rosenhain and |G cap R| = 1."""
    found = set()
    for g in enumerate_tetrads(TetradKind.GOEPEL):
        for r in enumerate_tetrads(TetradKind.ROSENHAIN):
            if len(g.elements & r.elements) == 1:
                found.add(g.elements ^ r.elements)
    return tuple(sorted((WeberHexad.from_elements(s) for s in found), key=WeberHexad.sort_key))


@cache
def _hexad_by_mask() -> dict[int, WeberHexad]:
    return {w.mask: w for w in enumerate_weber_hexads()}


def decompositions(w) -> list[tuple[Tetrad, Tetrad]]:
    """All splittings w = I - J with I, J affine planes meeting in one point.

    Returned pairs are ordered (Goepel, Rosenhain) when the kinds differ.
    """
    elements = sorted(w.elements if isinstance(w, WeberHexad) else w)
    out = []
    first = elements[0]
    rest = elements[1:]
    for pair in combinations(rest, 2):
        half = (first, *pair)
        other = [x for x in elements if x not in half]
        x = element_sum(half)
        if x in elements or x != element_sum(other):
            continue
        i = Tetrad.from_elements((x, *half))
        j = Tetrad.from_elements((x, *other))
        if i.kind is TetradKind.ROSENHAIN and j.kind is TetradKind.GOEPEL:
            i, j = j, i
        out.append((i, j))
    return out


def is_weber_hexad(s) -> WeberHexad | None:
    """Recognise a Weber hexad through its common partial sum.

    If the six elements sum to 0, every 3+3 split has equal partial sums x;
    the hexad is Weber iff for some split with x outside the set the two
    planes {x}+half are one Goepel and one Rosenhain tetrad.
    """
    elements = list(s)
    if len(set(elements)) < 6 or len(elements) != 6:
        raise DuplicateElements(f"need six distinct elements, got {len(set(elements))}")
    if element_sum(elements) != ZERO:
        return None
    for i, j in decompositions(elements):
        if i.kind is not j.kind:
            return WeberHexad.from_elements(elements)
    return None


# ---------------------------------------------------------------- group


@total_ordering
@dataclass(frozen=True)
class AffineMap:
    """x -> perm(x) + translation; perm[i-1] is the image of letter i."""

    translation: TwoTorsion
    permutation: tuple[int, ...]

    def __call__(self, x):
        m = _relabel(x.mask, self.permutation)
        if isinstance(x, ThetaChar):
            return ThetaChar.from_mask(m) + self.translation
        return TwoTorsion.from_mask(m) + self.translation

    def apply_set(self, elements) -> frozenset:
        return frozenset(self(x) for x in elements)

    def compose(self, other: AffineMap) -> AffineMap:
        """self after other."""
        perm = tuple(self.permutation[other.permutation[i] - 1] for i in range(6))
        t = TwoTorsion.from_mask(_relabel(other.translation.mask, self.permutation)) + self.translation
        return AffineMap(t, perm)

    def inverse(self) -> AffineMap:
        inv = [0] * 6
        for i, p in enumerate(self.permutation):
            inv[p - 1] = i + 1
        inv = tuple(inv)
        t = TwoTorsion.from_mask(_relabel(self.translation.mask, inv))
        return AffineMap(t, inv)

    def is_identity(self) -> bool:
        return self.translation == ZERO and self.permutation == LETTERS

    def _key(self):
        return (self.permutation, self.translation.rep)

    def __lt__(self, other):
        return self._key() < other._key()


IDENTITY = AffineMap(ZERO, LETTERS)


@cache
def affine_group() -> tuple[AffineMap, ...]:
    return tuple(AffineMap(t, p) for p in permutations(LETTERS) for t in TWO_TORSION)


@cache
def _perm_table() -> bytes:
    out = bytearray()
    for g in affine_group():
        out.extend(g(x).index for x in TWO_TORSION)
    return bytes(out)


def stabilizer(w: WeberHexad) -> list[AffineMap]:
    group = affine_group()
    return [group[i] for i in kernels.stabilizer_members(_perm_table(), w.mask)]


def orbit(w: WeberHexad) -> set[int]:
    """Masks of the orbit of w under the affine group."""
    return set(kernels.mask_images(_perm_table(), w.mask))


# ---------------------------------------------------------------- totals


Syntheme = tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


def syntheme(*duads) -> Syntheme:
    return tuple(sorted(tuple(sorted(d)) for d in duads))  # type: ignore[return-value]


def format_syntheme(s: Syntheme) -> str:
    return "".join(f"({a}{b})" for a, b in s)


@dataclass(frozen=True)
class Total:
    synthemes: frozenset

    def __post_init__(self):
        duads = [d for s in self.synthemes for d in s]
        if len(self.synthemes) != 5 or len(set(duads)) != 15:
            raise ValueError("a total is five synthemes covering all fifteen duads")

    def sorted_synthemes(self) -> list[Syntheme]:
        return sorted(self.synthemes)

    def __str__(self):
        return "{" + ",".join(format_syntheme(s) for s in self.sorted_synthemes()) + "}"


@cache
def all_synthemes() -> tuple[Syntheme, ...]:
    out = set()
    for p in permutations(LETTERS):
        out.add(syntheme(p[0:2], p[2:4], p[4:6]))
    return tuple(sorted(out))


@cache
def all_totals() -> tuple[Total, ...]:
    """The six totals, by brute force over 5-sets of synthemes."""
    syn = all_synthemes()
    totals = []
    for combo in combinations(syn, 5):
        duads = {d for s in combo for d in s}
        if len(duads) == 15:
            totals.append(Total(frozenset(combo)))
    return tuple(sorted(totals, key=Total.sorted_synthemes))


def _pentagon_total(cycle: tuple[int, ...], f: int) -> Total:
    out = []
    for k in range(5):
        a, b = cycle[k], cycle[(k + 1) % 5]
        c, d, e = cycle[(k + 2) % 5], cycle[(k + 3) % 5], cycle[(k + 4) % 5]
        out.append(syntheme((a, b), (c, e), (d, f)))
    return Total(frozenset(out))


def hexad_to_total(w: WeberHexad, via: TwoTorsion | None = None) -> Total:
    """The total attached to w.

    w is first translated by one of its own elements (``via``, default the
    smallest) so that it contains 0 and takes the pentagon form.  Each pentagon
    edge ab gives the syntheme (ab)(ce)(df) where c, d, e are the remaining
    pentagon vertices in order and f the letter off the pentagon.
    """
    if via is None:
        via = min(w.elements)
    if via not in w.elements:
        raise ValueError(f"{via} is not an element of {w}")
    t = w.translate(via)
    assert t.form is HexadForm.TYPE1
    return _pentagon_total(t.witness[:5], t.witness[5])


def hexad_total_fibers() -> dict[Total, list[WeberHexad]]:
    fibers: dict[Total, list[WeberHexad]] = {}
    for w in enumerate_weber_hexads():
        fibers.setdefault(hexad_to_total(w), []).append(w)
    return dict(sorted(fibers.items(), key=lambda kv: kv[0].sorted_synthemes()))


def perp_moves(w: WeberHexad) -> list[WeberHexad]:
    """Hexads G - R^perp for each splitting w = G - R with G cap R = {0}."""
    out = []
    for g, r in decompositions(w):
        if g.kind is TetradKind.GOEPEL and r.kind is TetradKind.ROSENHAIN and g.elements & r.elements == {ZERO}:
            rp = rosenhain_perp(r)
            out.append(WeberHexad.from_elements(g.elements ^ rp.elements))
    return out


@cache
def dual_six_classes() -> tuple[tuple[WeberHexad, ...], ...]:
    """Closure of the translation and R -> R^perp moves, as sorted classes."""
    hexads = enumerate_weber_hexads()
    index = {w.elements: i for i, w in enumerate(hexads)}
    parent = list(range(len(hexads)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, w in enumerate(hexads):
        for a in TWO_TORSION:
            union(i, index[frozenset(x + a for x in w.elements)])
        for v in perp_moves(w):
            union(i, index[v.elements])
    groups: dict[int, list[WeberHexad]] = {}
    for i, w in enumerate(hexads):
        groups.setdefault(find(i), []).append(w)
    return tuple(tuple(g) for _, g in sorted(groups.items()))


def dual_six_class_of(w: WeberHexad) -> int:
    for k, cls in enumerate(dual_six_classes()):
        if w in cls:
            return k
    raise ValueError(f"{w} is not a Weber hexad")
