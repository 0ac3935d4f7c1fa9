"""sl2-triples through a nilpotent element (Jacobson-Morozov, done exactly).

1. find ``z`` with ``[[e, z], e] = 2e`` and put ``h = [e, z]``;
2. on ``R = C(e)`` solve ``(ad h + 2) u1 = [h, z] + 2z``;
3. ``f = z - u1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .chevalley import AlgebraElement, ChevalleyAlgebra
from .ratlinalg import PRIME, eigenspace_dim, nullspace, rank_mod_p, solve, to_mod_p

__all__ = [
    "Sl2Triple",
    "build_triple",
    "triple_signature",
    "NotNilpotent",
    "ZeroElement",
    "InternalInconsistency",
]


class NotNilpotent(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class Sl2Triple:
    h: AlgebraElement
    e: AlgebraElement
    f: AlgebraElement

    def check(self) -> bool:
        L = self.e.algebra
        return (L.bracket(self.h, self.e) == 2 * self.e
                and L.bracket(self.h, self.f) == -2 * self.f
                and L.bracket(self.e, self.f) == self.h)


def _square_columns(L: ChevalleyAlgebra, e: AlgebraElement) -> list[list]:
    """Dense rows of ad(e)^2."""
    cols = L.ad_columns(e)
    n = L.dim
    rows = [[0] * n for _ in range(n)]
    for j, col in enumerate(cols):
        out: dict[int, Fraction] = {}
        for k, v in col.items():
            for t, w in cols[k].items():
                out[t] = out.get(t, 0) + v * w
        for t, v in out.items():
            if v:
                rows[t][j] = v
    return rows


def build_triple(e: AlgebraElement, rng: random.Random | None = None,
                 check_nilpotent: bool = True) -> Sl2Triple:
    """Complete the nilpotent ``e`` to an sl2-triple.

    ``rng`` (test use) adds a random kernel vector to the step-1 solution, so
    that different free-variable choices can be compared.
    """
    L = e.algebra
    if not e:
        raise ZeroElement("e = 0 has no sl2-triple")
    if check_nilpotent and not L.is_nilpotent(e):
        raise NotNilpotent(f"{e!r} is not nilpotent")

    A = _square_columns(L, e)
    z = solve(A, [-2 * c for c in e.vector()])
    if z is None:
        raise InternalInconsistency("no z with [[e,z],e] = 2e")
    if rng is not None:
        for v in nullspace(A):
            c = rng.randint(-5, 5)
            if c:
                z = [a + c * b for a, b in zip(z, v)]
    z = L.from_vector(z)
    h = L.bracket(e, z)
    if L.bracket(h, e) != 2 * e:
        raise InternalInconsistency("[h, e] != 2e after step 1")

    u0 = L.bracket(h, z) + 2 * z
    if u0:
        R = L.centralizer(e)
        imgs = [(L.bracket(h, r) + 2 * r).vector() for r in R]
        M = [[img[i] for img in imgs] for i in range(L.dim)]
        c = solve(M, u0.vector())
        if c is None:
            raise InternalInconsistency("(ad h + 2) u1 = u0 has no solution in C(e)")
        u1 = L.zero()
        for ci, r in zip(c, R):
            if ci:
                u1 = u1 + ci * r
    else:
        u1 = L.zero()
    f = z - u1
    t = Sl2Triple(h, e, f)
    if not t.check():
        raise InternalInconsistency("triple relations fail")
    return t


def _max_eigenvalue(L: ChevalleyAlgebra) -> int:
    rs = L.rootsystem
    if not rs.rank:
        return 0
    return 2 * max((sum(r) for r in rs.positive_roots), default=0)


def triple_signature(h: AlgebraElement) -> tuple[int, ...]:
    """``(dim g(h,0), dim g(h,1), ..., dim g(h,m))`` for the neutral element h.

    Eigenspace dimensions are first taken over GF(p).  Each is an upper bound
    for the true one, so if they already add up to dim g they are exact;
    otherwise everything is recomputed over Q.
    """
    L = h.algebra
    rows = L.ad_rows(h)
    top = _max_eigenvalue(L)
    dims: list[int] = []
    try:
        M = to_mod_p(rows)
        total = 0
        n = L.dim
        for k in range(top + 1):
            S = M.copy()
            for i in range(n):
                S[i, i] = (S[i, i] - k) % PRIME
            d = n - rank_mod_p(S)
            dims.append(d)
            total += d if k == 0 else 2 * d
            if total >= n:
                break
        if total == n:
            return _trim(dims)
    except ZeroDivisionError:
        pass
    dims = [eigenspace_dim(rows, k) for k in range(top + 1)]
    if dims[0] + 2 * sum(dims[1:]) != L.dim:
        raise InternalInconsistency("ad h is not diagonalizable with integer spectrum")
    return _trim(dims)


def _trim(dims: list[int]) -> tuple[int, ...]:
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return tuple(dims)
