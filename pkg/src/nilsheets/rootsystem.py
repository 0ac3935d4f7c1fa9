"""Root systems of (semi)simple Lie algebras built from Cartan matrices.

Conventions
-----------
``cartan[i][j] = <alpha_i, alpha_j^vee>``.  Types A-E use the Bourbaki numbering
of simple roots.  F4 and G2 use the numbering of GAP4, because the golden corpus
refers to positive roots by their position in GAP's list:

* G2: alpha_1 short, alpha_2 long.
* F4: the Dynkin chain reads ``1 - 3 => 4 - 2``; alpha_1, alpha_3 short.

Positive roots are generated level by level: the roots of height ``k + 1`` are
listed in order of discovery, scanning the roots of height ``k`` in order and
adding the simple roots in Bourbaki order.  ``DISPLAY_ORDER`` maps the Bourbaki
node order (also used when printing diagrams) onto native indices.  For F4 this
scan order matters from height 6 on; it is the one that makes the corpus
representatives consistent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "RootSystemError",
    "SimpleType",
    "RootSystem",
    "cartan_matrix",
    "parse_type",
    "build_root_system",
    "classify_cartan",
]


class RootSystemError(ValueError):
    """Invalid type, rank, or root."""


_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise RootSystemError(f"invalid rank {self.rank} for type {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_type(text: str) -> list[SimpleType]:
    """Parse ``"E6"``, ``"A2+A1"`` or ``"B3 + A1"`` into simple types."""
    out = []
    for part in text.replace(" ", "").upper().split("+"):
        if len(part) < 2 or not part[1:].isdigit():
            raise RootSystemError(f"cannot parse type {text!r}")
        out.append(SimpleType(part[0], int(part[1:])))
    return out


def cartan_matrix(t: SimpleType) -> list[list[int]]:
    n, f = t.rank, t.family
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a=-1, b=-1):
        # C[i][j] = a, C[j][i] = b (0-based indices)
        C[i][j] = a
        C[j][i] = b

    if f == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif f == "B":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n short
        link(n - 2, n - 1, -2, -1)
    elif f == "C":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n long
        link(n - 2, n - 1, -1, -2)
    elif f == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif f == "F":
        # GAP numbering: 1 - 3 => 4 - 2
        link(0, 2)
        link(1, 3)
        link(2, 3, -1, -2)
    elif f == "G":
        # GAP numbering: alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    return C


# Bourbaki node order (as drawn in the tables) expressed in native indices.
DISPLAY_ORDER = {
    "F4": (1, 3, 2, 0),
    "G2": (1, 0),
}


def _symmetrizer(C: Sequence[Sequence[int]]) -> list[Fraction]:
    """Half squared lengths d_i with d_j * C[i][j] symmetric, short roots of each
    component normalised to 1."""
    n = len(C)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and C[i][j] != 0 and d[j] is None:
                    # (a_i, a_j) = C[i][j] d_j = C[j][i] d_i
                    d[j] = Fraction(C[j][i], C[i][j]) * d[i]
                    comp.append(j)
                    stack.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    return d  # type: ignore[return-value]


def _components(C) -> list[list[int]]:
    n = len(C)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and C[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def classify_cartan(C: Sequence[Sequence[int]]) -> SimpleType:
    """Type of a connected Cartan matrix (any node numbering)."""
    n = len(C)
    if n == 0:
        raise RootSystemError("empty Cartan matrix")
    if len(_components(C)) != 1:
        raise RootSystemError("Cartan matrix is not connected")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if C[i][j] != 0]
    mult = {(i, j): C[i][j] * C[j][i] for i, j in edges}
    degree = [sum(1 for e in edges if k in e) for k in range(n)]
    if any(m == 3 for m in mult.values()):
        return SimpleType("G", 2)
    d = _symmetrizer(C)
    if any(m == 2 for m in mult.values()):
        if n == 2:
            return SimpleType("B", 2)
        if n == 4 and max(degree) == 2:
            i, j = next(e for e in edges if mult[e] == 2)
            if degree[i] == 2 and degree[j] == 2:
                return SimpleType("F", 4)
        i, j = next(e for e in edges if mult[e] == 2)
        end = i if degree[i] == 1 else j
        # short end node -> B, long end node -> C
        return SimpleType("B" if d[end] < max(d) else "C", n)
    if max(degree, default=0) <= 2:
        return SimpleType("A", n)
    branch = degree.index(3)
    arms = []
    for start in (j for j in range(n) if C[branch][j] != 0 and j != branch):
        length, prev, cur = 1, branch, start
        while True:
            nxt = [j for j in range(n) if j not in (prev, cur) and C[cur][j] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return SimpleType("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return SimpleType("E", n)
    raise RootSystemError(f"not a finite-type Cartan matrix: {C}")


@dataclass
class RootSystem:
    """Positive roots of a (semi)simple root system.

    ``positive_roots`` holds integer coordinate tuples over the simple roots in
    canonical order; root ``i`` (0-based) is printed as ``i + 1``.
    """

    cartan: tuple[tuple[int, ...], ...]
    types: tuple[SimpleType, ...] = ()
    scan_order: tuple[int, ...] | None = None
    positive_roots: tuple[tuple[int, ...], ...] = field(init=False)
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.cartan = tuple(tuple(int(x) for x in row) for row in self.cartan)
        l = len(self.cartan)
        for i in range(l):
            if self.cartan[i][i] != 2:
                raise RootSystemError("Cartan matrix must have 2 on the diagonal")
        self.half_norms = _symmetrizer(self.cartan) if l else []
        self.components = _components(self.cartan) if l else []
        if not self.types:
            self.types = tuple(
                classify_cartan([[self.cartan[i][j] for j in c] for i in c])
                for c in self.components
            )
        if self.scan_order is None:
            self.scan_order = tuple(range(l))
        self.positive_roots = tuple(self._generate())
        self.index = {r: i for i, r in enumerate(self.positive_roots)}
        for i, r in enumerate(self.positive_roots):
            self.index[tuple(-x for x in r)] = -(i + 1)
        self._max_norm = {}
        for ci, comp in enumerate(self.components):
            self._max_norm[ci] = max(self.half_norms[i] for i in comp)
        self._comp_of = {}
        for ci, comp in enumerate(self.components):
            for i in comp:
                self._comp_of[i] = ci

    # -- construction ---------------------------------------------------
    def _generate(self):
        l = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        known = set(simple)
        out = list(simple)
        level = list(simple)
        while level:
            nxt = []
            for r in level:
                for i in self.scan_order:
                    cand = tuple(r[j] + (j == i) for j in range(l))
                    if cand in known:
                        continue
                    # alpha_i-string through r: r - p a_i, ..., r + q a_i, p - q = <r, a_i^vee>
                    p = 0
                    while True:
                        s = tuple(r[j] - (p + 1) * (j == i) for j in range(l))
                        if s in known:
                            p += 1
                        else:
                            break
                    q = p - self.pairing(r, simple[i])
                    if q > 0:
                        known.add(cand)
                        nxt.append(cand)
            out.extend(nxt)
            level = nxt
        return out

    # -- basic data -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dim_algebra(self) -> int:
        return 2 * self.num_positive + self.rank

    def __str__(self):
        return "+".join(str(t) for t in self.types) if self.types else "T0"

    def simple_root(self, i: int) -> tuple[int, ...]:
        return self.positive_roots[i]

    def height(self, root) -> int:
        return sum(root)

    def is_root(self, coords) -> bool:
        return tuple(coords) in self.index

    def root_index(self, coords) -> int:
        """0-based index of a positive root; raises for anything else."""
        i = self.index.get(tuple(coords))
        if i is None or i < 0:
            raise RootSystemError(f"{tuple(coords)} is not a positive root")
        return i

    def inner(self, a, b) -> Fraction:
        """Symmetric form with short roots of each component of squared length 2."""
        C, d = self.cartan, self.half_norms
        s = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj and C[i][j]:
                        s += ai * bj * C[i][j] * d[j]
        return s

    def norm(self, a) -> Fraction:
        return self.inner(a, a)

    def pairing(self, a, b) -> int:
        """<a, b^vee> = 2 (a, b) / (b, b), computed from coordinates."""
        v = 2 * self.inner(a, b) / self.inner(b, b)
        assert v.denominator == 1
        return int(v)

    def cartan_integer(self, a, b) -> int:
        for r in (a, b):
            if not self.is_root(r):
                raise RootSystemError(f"{tuple(r)} is not a root")
        return self.pairing(a, b)

    def is_long(self, root) -> bool:
        """True when the root is strictly longer than the short roots of its
        component (never true in simply laced components)."""
        support = [i for i, x in enumerate(root) if x]
        ci = self._comp_of[support[0]]
        comp = self.components[ci]
        if len({self.half_norms[i] for i in comp}) == 1:
            return False
        return self.norm(root) / 2 == self._max_norm[ci]

    def coroot_coords(self, root) -> tuple[int, ...]:
        """Coordinates of h_root over h_1..h_l."""
        n = self.norm(root) / 2
        out = []
        for i, a in enumerate(root):
            c = a * self.half_norms[i] / n
            assert c.denominator == 1
            out.append(int(c))
        return tuple(out)

    def highest_root(self):
        return max(self.positive_roots, key=sum)

    # -- subsystems -----------------------------------------------------
    def subsystem(self, pi: Iterable[int]) -> "RootSystem":
        """Root subsystem generated by the simple roots ``pi`` (0-based),
        with those simple roots as its base, in increasing order."""
        pi = sorted(set(pi))
        for i in pi:
            if not 0 <= i < self.rank:
                raise RootSystemError(f"simple root index {i} out of range")
        sub = [[self.cartan[i][j] for j in pi] for i in pi]
        return RootSystem(sub)

    def subsystem_roots(self, pi: Iterable[int]) -> list[int]:
        """Indices of positive roots supported on ``pi``."""
        pi = set(pi)
        return [k for k, r in enumerate(self.positive_roots)
                if all(x == 0 or i in pi for i, x in enumerate(r))]

    def display_order(self) -> tuple[int, ...]:
        key = str(self)
        return DISPLAY_ORDER.get(key, tuple(range(self.rank)))

    def format_labels(self, labels: Sequence[int]) -> str:
        """Render node labels in the drawing order of the corpus tables.

        For type E the label of alpha_2 is put in brackets after alpha_4's:
        ``a1 a3 a4[a2] a5 ...``.
        """
        labels = list(labels)
        if len(self.types) == 1 and self.types[0].family == "E":
            bottom = [0, 2, 3] + list(range(4, self.rank))
            parts = []
            for i in bottom:
                s = str(labels[i])
                if i == 3:
                    s += f"[{labels[1]}]"
                parts.append(s)
            return " ".join(parts)
        return " ".join(str(labels[i]) for i in self.display_order())

    def parse_labels(self, text: str) -> tuple[int, ...]:
        """Inverse of :meth:`format_labels`."""
        text = text.strip()
        if len(self.types) == 1 and self.types[0].family == "E":
            toks = text.split()
            out = [0] * self.rank
            bottom = [0, 2, 3] + list(range(4, self.rank))
            if len(toks) != len(bottom):
                raise RootSystemError(f"cannot parse diagram {text!r}")
            for i, tok in zip(bottom, toks):
                if "[" in tok:
                    a, b = tok.rstrip("]").split("[")
                    out[i] = int(a)
                    out[1] = int(b)
                else:
                    out[i] = int(tok)
            return tuple(out)
        toks = [int(t) for t in text.split()]
        if len(toks) != self.rank:
            raise RootSystemError(f"cannot parse diagram {text!r}")
        out = [0] * self.rank
        for pos, i in enumerate(self.display_order()):
            out[i] = toks[pos]
        return tuple(out)


def block_cartan(types: Sequence[SimpleType]) -> list[list[int]]:
    mats = [cartan_matrix(t) for t in types]
    n = sum(len(m) for m in mats)
    C = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                C[off + i][off + j] = x
        off += len(m)
    return C


def build_root_system(spec) -> RootSystem:
    """Root system of a simple type, a list of simple types, or a string such
    as ``"E6"`` or ``"A2+A1"``."""
    if isinstance(spec, str):
        types = parse_type(spec)
    elif isinstance(spec, SimpleType):
        types = [spec]
    else:
        types = list(spec)
        if not all(isinstance(t, SimpleType) for t in types):
            raise RootSystemError(f"bad type specification {spec!r}")
    scan = None
    if len(types) == 1:
        scan = DISPLAY_ORDER.get(str(types[0]))
    return RootSystem(block_cartan(types), tuple(types), scan)


def all_subsets(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)
