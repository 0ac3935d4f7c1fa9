"""Representatives ``e = sum x_b`` of induced orbits inside ``u``.

A subset of ``u`` whose diagram equals a prescribed shape is searched by
backtracking over nodes; a candidate is accepted when its orbit is the induced
one.  Any point of ``u`` whose orbit has the induced dimension lies in the
induced orbit, so a cheap rank test filters candidates before the signature
check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .chevalley import ChevalleyAlgebra
from .diagrams import DiagramSpec, diagram_of
from .induction import SheetDiagram, SheetRecord, Settings, u_space
from .orbitclass import OrbitClass, OrbitTable, RetriesExhausted
from .ratlinalg import nullspace, rank, rank_mod_p
from .seeding import task_rng
from .sl2jm import Sl2Triple, build_triple

__all__ = [
    "Representative",
    "VerificationReport",
    "NotFound",
    "VerificationFailed",
    "find_representative",
    "find_any_representative",
    "verify_representative",
    "is_admissible",
    "minimal_support_size",
    "attach_representatives",
]

SEARCH_BUDGET = 2_000_000
SPEC_FREE_BUDGET = 5_000


class NotFound(LookupError):
    pass


class VerificationFailed(LookupError):
    pass


@dataclass(frozen=True)
class Representative:
    roots: tuple[int, ...]       # 1-based positive root numbers
    verified: bool
    source: str                  # "spec", "free" or "corpus"
    admissible: bool
    support_bound: int | None = None


@dataclass(frozen=True)
class VerificationReport:
    in_u: bool
    orbit_ok: bool
    characteristic: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.in_u and self.orbit_ok


def _ordered_u(alg: ChevalleyAlgebra, sd: SheetDiagram) -> list[int]:
    rs = alg.rootsystem
    return sorted(u_space(alg, sd), key=lambda k: (sum(rs.positive_roots[k]), k))


def _element(alg, roots0):
    return alg.sum_of_root_vectors([k + 1 for k in roots0])


def _orbit_check(alg, table: OrbitTable, roots0, target: OrbitClass) -> bool:
    e = _element(alg, roots0)
    if not e:
        return target.is_zero
    if rank_mod_p(alg.ad_mod_p(e)) != target.dimension:
        return False
    return table.identify(e).wdd == target.wdd


def find_representative(alg: ChevalleyAlgebra, sd: SheetDiagram, spec: DiagramSpec,
                        target: OrbitClass, table: OrbitTable,
                        budget: int = SEARCH_BUDGET) -> tuple[int, ...]:
    """Least subset of ``u`` (ordered by height, then index) with diagram
    ``spec`` whose sum lies in ``target``; 1-based root numbers in node order."""
    rs = alg.rootsystem
    S = _ordered_u(alg, sd)
    k = spec.node_count
    if len(S) < k:
        raise NotFound("u is smaller than the diagram")
    roots = rs.positive_roots
    longs = [rs.is_long(roots[a]) for a in S]
    lines = spec.lines()
    want = {}
    for i in range(k):
        for j in range(i):
            n = lines.get((j, i), 0)
            want[(j, i)] = (n, (j, i) in spec.dotted)
    pair_cache: dict = {}

    def pair(a, b):
        key = (a, b)
        if key not in pair_cache:
            ra, rb = roots[S[a]], roots[S[b]]
            n = rs.pairing(ra, rb) * rs.pairing(rb, ra)
            pair_cache[key] = (n, n > 0 and rs.inner(ra, rb) > 0)
        return pair_cache[key]

    chosen: list[int] = []
    matched = 0
    visits = 0

    def dfs(i):
        nonlocal matched, visits
        if i == k:
            matched += 1
            sub = [S[a] for a in chosen]
            return sub if _orbit_check(alg, table, sub, target) else None
        for a in range(len(S)):
            visits += 1
            if visits > budget:
                raise NotFound("search budget exhausted")
            if a in chosen or longs[a] != (i in spec.long_nodes):
                continue
            if all(pair(chosen[j], a) == want[(j, i)] for j in range(i)):
                chosen.append(a)
                res = dfs(i + 1)
                if res is not None:
                    return res
                chosen.pop()
        return None

    res = dfs(0)
    if res is None:
        if matched:
            raise VerificationFailed(f"{matched} subsets match the diagram, none verifies")
        raise NotFound("no subset of u has this diagram")
    return tuple(r + 1 for r in res)


def find_any_representative(alg: ChevalleyAlgebra, sd: SheetDiagram, target: OrbitClass,
                            table: OrbitTable, min_size: int = 1,
                            budget: int = SPEC_FREE_BUDGET) -> tuple[int, ...]:
    """Shape-free search: least linearly independent subset of ``u`` of the
    smallest possible size whose sum lies in ``target``."""
    rs = alg.rootsystem
    S = _ordered_u(alg, sd)
    roots = rs.positive_roots
    checks = 0
    for size in range(max(min_size, 1), rs.rank + 1):
        chosen: list[int] = []

        def dfs(start):
            nonlocal checks
            if len(chosen) == size:
                checks += 1
                if checks > budget:
                    raise NotFound("search budget exhausted")
                sub = [S[a] for a in chosen]
                return sub if _orbit_check(alg, table, sub, target) else None
            for a in range(start, len(S) - (size - len(chosen)) + 1):
                chosen.append(a)
                if rank([roots[S[b]] for b in chosen]) == len(chosen):
                    res = dfs(a + 1)
                    if res is not None:
                        return res
                chosen.pop()
            return None

        res = dfs(0)
        if res is not None:
            return tuple(r + 1 for r in res)
    raise NotFound("no independent subset of u represents the orbit")


def verify_representative(alg: ChevalleyAlgebra, sd: SheetDiagram, roots: Sequence[int],
                          target: OrbitClass, table: OrbitTable) -> VerificationReport:
    """Check a 1-based root list: inside ``u`` and summing into ``target``."""
    u = set(u_space(alg, sd))
    in_u = all(0 < r <= alg.npos and r - 1 in u for r in roots)
    if not all(0 < r <= alg.npos for r in roots):
        return VerificationReport(False, False, None)
    e = alg.sum_of_root_vectors(roots)
    if not e:
        char = table.zero.wdd
    else:
        char = table.identify(e).wdd
    return VerificationReport(in_u, char == target.wdd, char)


def is_admissible(alg: ChevalleyAlgebra, roots: Sequence[int]) -> bool:
    """Linearly independent roots whose diagram has no odd cycle."""
    rs = alg.rootsystem
    coords = [rs.positive_roots[r - 1] for r in roots]
    if len(set(roots)) != len(roots):
        return False
    if coords and rank(coords) != len(coords):
        return False
    spec = diagram_of(rs, coords)
    adj = {i: set() for i in range(len(coords))}
    for i, j, _ in spec.edges:
        adj[i].add(j)
        adj[j].add(i)
    colour: dict[int, int] = {}
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def minimal_support_size(alg: ChevalleyAlgebra, triple: Sl2Triple | None,
                         rng: random.Random | None = None, samples: int = 4,
                         max_samples: int = 20) -> int:
    """``rank g`` minus the rank of the reductive centralizer of the triple."""
    if triple is None:
        return 0
    rng = rng or random.Random(0)
    # C(e) first, then the conditions [h, r] = [f, r] = 0 on its coefficients
    R = alg.centralizer(triple.e)
    cols = [alg.bracket(triple.h, r).vector() + alg.bracket(triple.f, r).vector() for r in R]
    basis = []
    if R:
        for c in nullspace([list(row) for row in zip(*cols)]):
            x = alg.zero()
            for ci, r in zip(c, R):
                if ci:
                    x = x + ci * r
            basis.append(x)
    if not basis:
        return alg.rank
    best = None
    stable = 0
    for _ in range(max_samples):
        x = alg.zero()
        for b in basis:
            x = x + rng.randint(-50, 50) * b
        cols = [alg.bracket(x, b).vector() for b in basis]
        dim = len(basis) - rank([list(r) for r in zip(*cols)])
        if best is None or dim < best:
            best, stable = dim, 0
        else:
            stable += 1
        if stable >= samples:
            return alg.rank - best
    raise RetriesExhausted("centralizer rank did not stabilise")


def attach_representatives(alg: ChevalleyAlgebra, records: list[SheetRecord], settings: Settings,
                           corpus=None, spec_free: bool = True) -> None:
    """Fill ``record.representative`` in place.

    Shapes come from the corpus row with the same sheet diagram when there is
    one; otherwise a shape-free search is tried.
    """
    table = settings.table(alg)
    rows = {}
    if corpus is not None:
        for row in corpus.sheets:
            rows[row.sheet_diagram] = row
    for rec in records:
        sd = rec.sheet_diagram
        row = rows.get(sd.labels)
        rep = None
        if rec.induced.is_zero:
            rec.representative = Representative((), True, "free", True, 0)
            continue
        triple = build_triple(_witness(alg, rec))
        bound = minimal_support_size(alg, triple,
                                     task_rng(settings.seed, "support", str(alg.rootsystem), sd.labels))
        try:
            if row is not None and row.spec is not None:
                roots = find_representative(alg, sd, row.spec, rec.induced, table)
                source = "spec"
            elif spec_free:
                roots = find_any_representative(alg, sd, rec.induced, table, min_size=bound)
                source = "free"
            else:
                roots = None
        except (NotFound, VerificationFailed):
            roots = None
        if roots is not None:
            rep = Representative(roots, verify_representative(alg, sd, roots, rec.induced, table).ok,
                                 source, is_admissible(alg, roots), bound)
        rec.representative = rep


def _witness(alg, rec: SheetRecord):
    return alg.sum_of_root_vectors([k + 1 for k in rec.u_roots], rec.witness)
