"""Lie algebras with an integral Chevalley basis.

Basis order: ``x_a`` for the positive roots (in root order), then ``x_{-a}``
in the same order, then ``h_1, ..., h_l``.  Structure constants are fixed by
``N(a, b) = +(p + 1)`` on extraspecial pairs and ``N(-a, -b) = -N(a, b)``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .ratlinalg import RatMatrix, nullspace, rank, to_mod_p, PRIME
from .rootsystem import RootSystem, build_root_system

__all__ = ["ChevalleyAlgebra", "AlgebraElement", "build_algebra", "ChevalleyError"]

SIGN_CONVENTION = "extraspecial+1/v1"


class ChevalleyError(RuntimeError):
    """Internal inconsistency while building structure constants."""


class AlgebraElement:
    """Sparse vector over the Chevalley basis with exact rational coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "ChevalleyAlgebra", coords: Mapping[int, object] | None = None):
        self.algebra = algebra
        self.coords = {}
        if coords:
            for k, v in coords.items():
                if v:
                    self.coords[k] = Fraction(v)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, c):
        c = Fraction(c)
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.coords.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra \
            and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(sorted(self.coords.items())))

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        names = self.algebra.basis_names
        return " + ".join(f"{v}*{names[k]}" for k, v in sorted(self.coords.items()))

    def vector(self) -> list[Fraction]:
        v = [Fraction(0)] * self.algebra.dim
        for k, c in self.coords.items():
            v[k] = c
        return v


class ChevalleyAlgebra:
    def __init__(self, rs: RootSystem):
        self.rootsystem = rs
        self.rank = rs.rank
        self.npos = rs.num_positive
        self.dim = 2 * self.npos + self.rank
        self._build()

    def __repr__(self):
        return f"ChevalleyAlgebra({self.rootsystem}, dim={self.dim})"

    # -- indices --------------------------------------------------------
    def root_basis_index(self, signed: int) -> int:
        """Basis index of x_r for root number ``signed`` (1-based, negative for
        negative roots)."""
        if signed > 0:
            return signed - 1
        return self.npos - signed - 1

    def cartan_index(self, i: int) -> int:
        return 2 * self.npos + i

    def root_of_basis(self, k: int):
        """Coordinates of the root of basis vector ``k`` (None for Cartan)."""
        if k < self.npos:
            return self.rootsystem.positive_roots[k]
        if k < 2 * self.npos:
            return tuple(-x for x in self.rootsystem.positive_roots[k - self.npos])
        return None

    @cached_property
    def basis_names(self) -> list[str]:
        n = self.npos
        return ([f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
                + [f"h{i + 1}" for i in range(self.rank)])

    # -- construction ---------------------------------------------------
    def _build(self):
        rs = self.rootsystem
        roots = rs.positive_roots
        idx = {r: i for i, r in enumerate(roots)}
        norm = [rs.norm(r) for r in roots]

        def neg(r):
            return tuple(-x for x in r)

        def add(a, b):
            return tuple(x + y for x, y in zip(a, b))

        def sub(a, b):
            return tuple(x - y for x, y in zip(a, b))

        def p_of(r, s):
            p = 0
            t = sub(s, r)
            while t in idx or neg(t) in idx:
                p += 1
                t = sub(t, r)
            return p

        # N on pairs of positive roots, keyed by index pair
        Npos: dict[tuple[int, int], int] = {}

        def n_mixed(x, y):
            # N(x_x, x_{-y}) for positive roots x != y (indices)
            d = sub(roots[x], roots[y])
            if d in idx:
                z = idx[d]
                val = -Npos[(y, z)] * norm[z] / norm[x]
            elif neg(d) in idx:
                z = idx[neg(d)]
                val = Npos[(z, x)] * norm[z] / norm[y]
            else:
                return 0
            if val.denominator != 1:
                raise ChevalleyError("non-integral mixed structure constant")
            return int(val)

        for xi_i, xi in enumerate(roots):
            pairs = []
            for r_i in range(xi_i):
                d = sub(xi, roots[r_i])
                if d in idx and r_i < idx[d]:
                    pairs.append((r_i, idx[d]))
            if not pairs:
                continue
            a, b = min(pairs)
            pab = p_of(roots[a], roots[b])
            Npos[(a, b)] = pab + 1
            Npos[(b, a)] = -(pab + 1)
            for r, s in pairs:
                if (r, s) == (a, b):
                    continue
                t1 = n_mixed(b, r) * n_mixed(a, s)
                t1 = Fraction(t1) / rs.norm(sub(roots[b], roots[r])) if t1 else 0
                t2 = -n_mixed(a, r) * n_mixed(b, s)
                t2 = Fraction(t2) / rs.norm(sub(roots[a], roots[r])) if t2 else 0
                val = norm[xi_i] / Npos[(a, b)] * (t1 + t2)
                if val.denominator != 1:
                    raise ChevalleyError(f"non-integral N for pair {(r, s)}")
                val = int(val)
                if abs(val) != p_of(roots[r], roots[s]) + 1:
                    raise ChevalleyError(f"|N| != p+1 for pair {(r, s)}")
                Npos[(r, s)] = val
                Npos[(s, r)] = -val

        # full multiplication table on basis indices: table[i][j] = [(k, c), ...]
        n, l = self.npos, self.rank
        table: list[dict[int, list[tuple[int, int]]]] = [dict() for _ in range(self.dim)]

        def put(i, j, k, c):
            if c:
                table[i].setdefault(j, []).append((k, c))

        for (r, s), c in Npos.items():
            t = idx[add(roots[r], roots[s])]
            put(r, s, t, c)
            put(n + r, n + s, n + t, -c)
        for x in range(n):
            for y in range(n):
                if x == y:
                    continue
                c = n_mixed(x, y)
                if c:
                    d = sub(roots[x], roots[y])
                    k = idx[d] if d in idx else n + idx[neg(d)]
                    put(x, n + y, k, c)
                    put(n + y, x, k, -c)
        for x in range(n):
            for i, c in enumerate(rs.coroot_coords(roots[x])):
                put(x, n + x, 2 * n + i, c)
                put(n + x, x, 2 * n + i, -c)
        for x in range(n):
            for i in range(l):
                c = rs.pairing(roots[x], roots[i]) if l else 0
                put(2 * n + i, x, x, c)
                put(x, 2 * n + i, x, -c)
                put(2 * n + i, n + x, n + x, -c)
                put(n + x, 2 * n + i, n + x, c)
        self.table = table
        self.structure_constants = Npos

    # -- elements -------------------------------------------------------
    def element(self, coords: Mapping[int, object] | None = None) -> AlgebraElement:
        return AlgebraElement(self, coords)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self)

    def basis_element(self, k: int) -> AlgebraElement:
        return AlgebraElement(self, {k: 1})

    def root_vector(self, signed: int) -> AlgebraElement:
        return self.basis_element(self.root_basis_index(signed))

    def sum_of_root_vectors(self, indices: Iterable[int], coeffs: Iterable | None = None) -> AlgebraElement:
        """``sum c_i x_{beta_i}`` for 1-based positive root numbers."""
        indices = list(indices)
        coeffs = [1] * len(indices) if coeffs is None else list(coeffs)
        out: dict[int, Fraction] = {}
        for i, c in zip(indices, coeffs):
            k = self.root_basis_index(i)
            out[k] = out.get(k, 0) + Fraction(c)
        return AlgebraElement(self, out)

    def cartan_element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, {2 * self.npos + i: c for i, c in enumerate(coeffs)})

    def from_vector(self, v) -> AlgebraElement:
        return AlgebraElement(self, {k: c for k, c in enumerate(v) if c})

    # -- services -------------------------------------------------------
    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        out: dict[int, Fraction] = {}
        table = self.table
        for i, a in x.coords.items():
            ti = table[i]
            for j, b in y.coords.items():
                prods = ti.get(j)
                if prods:
                    ab = a * b
                    for k, c in prods:
                        out[k] = out.get(k, 0) + ab * c
        return AlgebraElement(self, out)

    def ad_columns(self, x: AlgebraElement) -> list[dict[int, Fraction]]:
        """Sparse columns of ad x: column j holds the coordinates of [x, b_j]."""
        cols: list[dict[int, Fraction]] = [dict() for _ in range(self.dim)]
        for i, a in x.coords.items():
            for j, prods in self.table[i].items():
                col = cols[j]
                for k, c in prods:
                    col[k] = col.get(k, 0) + a * c
        return cols

    def ad_matrix(self, x: AlgebraElement) -> RatMatrix:
        """Matrix of ``y -> [x, y]``; column j is the image of basis vector j."""
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for j, col in enumerate(self.ad_columns(x)):
            for k, v in col.items():
                if v:
                    rows[k][j] = v
        return RatMatrix(rows, n)

    def ad_rows(self, x: AlgebraElement) -> list[list]:
        """Same as :meth:`ad_matrix` but as plain nested lists (ints where exact)."""
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for j, col in enumerate(self.ad_columns(x)):
            for k, v in col.items():
                if v:
                    rows[k][j] = int(v) if v.denominator == 1 else v
        return rows

    def ad_mod_p(self, x: AlgebraElement, p: int = PRIME):
        return to_mod_p(self.ad_rows(x), p)

    def centralizer(self, x: AlgebraElement) -> list[AlgebraElement]:
        """Basis of C_g(x)."""
        return [self.from_vector(v) for v in nullspace(self.ad_rows(x))]

    def centralizer_dim(self, x: AlgebraElement) -> int:
        return self.dim - rank(self.ad_rows(x))

    def is_nilpotent(self, x: AlgebraElement) -> bool:
        """ad(x)^dim == 0, by repeated squaring with early exit."""
        if not x:
            return True
        # supported on roots of one sign: ad x moves the height strictly
        if all(k < self.npos for k in x.coords) or \
                all(self.npos <= k < 2 * self.npos for k in x.coords):
            return True
        M = self.ad_matrix(x)
        power = 1
        while power < self.dim:
            if M.is_zero():
                return True
            M = M @ M
            power *= 2
        return M.is_zero()

    def random_element(self, rng: random.Random, support: Iterable[int] | None = None, bound: int = 10):
        support = range(self.dim) if support is None else support
        return AlgebraElement(self, {k: rng.randint(-bound, bound) for k in support})

    def structure_constant(self, r: int, s: int) -> int:
        """N(r, s) for signed 1-based root numbers (0 if r + s is not a root)."""
        i, j = self.root_basis_index(r), self.root_basis_index(s)
        prods = self.table[i].get(j, [])
        for k, c in prods:
            if k < 2 * self.npos:
                return c
        return 0

    def multiplication_table(self):
        """Yield ``(i, j, k, c)`` with ``[b_i, b_j] = sum c b_k`` (1-based)."""
        for i in range(self.dim):
            for j in sorted(self.table[i]):
                for k, c in self.table[i][j]:
                    yield i + 1, j + 1, k + 1, c


_ALGEBRAS: dict = {}


def build_algebra(spec) -> ChevalleyAlgebra:
    """Build (and memoise) the algebra of a root system or type spec."""
    rs = spec if isinstance(spec, RootSystem) else build_root_system(spec)
    key = (rs.cartan, rs.scan_order)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = ChevalleyAlgebra(rs)
    return alg
