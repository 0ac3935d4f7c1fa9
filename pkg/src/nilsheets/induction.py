"""Induced nilpotent orbits, rigid orbits and sheets.

For a standard Levi ``l`` (simple roots ``P``) and an orbit ``L e0`` of ``l``,
the sheet diagram labels nodes outside ``P`` with 2 and nodes in ``P`` with
the diagram of ``e0``.  With ``w`` its additive extension to roots, the span
``u`` of the ``x_a`` with ``w(a) >= 2`` meets the induced orbit densely, and a
point ``e`` of ``u`` lies in it as soon as ``rank ad e = dim(L e0) + 2 dim n``
(no point of ``u`` has a larger orbit).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from typing import Sequence

from .chevalley import ChevalleyAlgebra, build_algebra
from .levi import LeviClass, component_algebra, enumerate_levi_classes, parabolic_data
from .orbitclass import (OrbitClass, OrbitTable, RetriesExhausted,
                         orbit_table, signature_of_element)
from .ratlinalg import rank_mod_p
from .rootsystem import RootSystem
from .seeding import DEFAULT_SEED, task_rng
from .sl2jm import InternalInconsistency

__all__ = [
    "SheetDiagram",
    "LeviOrbit",
    "SheetRecord",
    "Settings",
    "omega",
    "u_space",
    "induce",
    "rigid_orbits",
    "levi_orbits",
    "induction_table",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    seed: int = DEFAULT_SEED
    n_initial: int = 10
    samples: int = 50
    escalations: int = 3
    jobs: int = 1
    cache_dir: str | None = None

    def table(self, alg: ChevalleyAlgebra) -> OrbitTable:
        return orbit_table(alg, seed=self.seed, n_initial=self.n_initial,
                           cache_dir=self.cache_dir, jobs=self.jobs)


@dataclass(frozen=True)
class SheetDiagram:
    labels: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (0, 1, 2) for x in self.labels):
            raise ValueError(f"sheet diagram labels must be 0, 1 or 2: {self.labels}")

    @classmethod
    def build(cls, rank: int, pi: Sequence[int], wdd: Sequence[int]) -> "SheetDiagram":
        labels = [2] * rank
        for i, x in zip(pi, wdd):
            labels[i] = x
        return cls(tuple(labels))

    @property
    def pi(self) -> tuple[int, ...]:
        """Simple roots of the Levi (recoverable when the orbit is rigid)."""
        return tuple(i for i, x in enumerate(self.labels) if x < 2)

    def rigid_wdd(self) -> tuple[int, ...]:
        return tuple(self.labels[i] for i in self.pi)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.labels if x == 2)

    @property
    def dixmier(self) -> bool:
        return 1 not in self.labels


@dataclass(frozen=True)
class LeviOrbit:
    """Nilpotent orbit of the semisimple part of a standard Levi."""
    pi: tuple[int, ...]
    wdd: tuple[int, ...]          # labels on pi, in the order of pi
    dimension: int
    label: str | None = None

    @property
    def is_zero(self) -> bool:
        return not any(self.wdd)


@dataclass
class SheetRecord:
    levi: LeviClass
    rigid: LeviOrbit
    sheet_diagram: SheetDiagram
    rank: int
    dim_n: int
    induced: OrbitClass
    alternatives: tuple[OrbitClass, ...] = ()
    u_roots: tuple[int, ...] = ()
    witness: tuple[int, ...] = ()
    representative: object = None

    @property
    def sheet_dim(self) -> int:
        return self.induced.dimension + self.rank

    @property
    def dixmier(self) -> bool:
        return self.sheet_diagram.dixmier


def omega(labels: Sequence[int], root: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(labels, root))


def u_space(alg: ChevalleyAlgebra, sd: SheetDiagram) -> list[int]:
    """0-based indices of the positive roots with omega >= 2."""
    rs = alg.rootsystem
    u = [k for k, r in enumerate(rs.positive_roots) if omega(sd.labels, r) >= 2]
    # cross-check: u = l_{>=2} + n
    _, nil = parabolic_data(rs, sd.pi)
    inside = set(rs.subsystem_roots(sd.pi))
    l2 = [k for k in inside if omega(sd.labels, rs.positive_roots[k]) >= 2]
    if set(u) != set(l2) | set(nil):
        raise InternalInconsistency("u(D) is not l_{>=2} + n")
    return u


def induce(alg: ChevalleyAlgebra, pi: Sequence[int], orbit: LeviOrbit, rng, settings: Settings = Settings(),
           table: OrbitTable | None = None):
    """Induce ``orbit`` from the Levi on ``pi``.

    Returns ``(sheet_diagram, u, witness_coeffs, orbits)`` where ``orbits``
    lists the candidate orbits of g (one unless a type-D signature collision
    occurs).
    """
    rs = alg.rootsystem
    pi = tuple(pi)
    table = table or settings.table(alg)
    sd = SheetDiagram.build(rs.rank, pi, orbit.wdd)
    u = u_space(alg, sd)
    _, nil = parabolic_data(rs, pi)
    s = orbit.dimension + 2 * len(nil)
    if s == 0:
        return sd, u, (), [table.zero]
    N = settings.n_initial
    for _ in range(settings.escalations + 1):
        for _ in range(settings.samples):
            coeffs = [rng.randint(0, N) for _ in u]
            e = alg.sum_of_root_vectors([k + 1 for k in u], coeffs)
            if not e or rank_mod_p(alg.ad_mod_p(e)) != s:
                continue
            sig = signature_of_element(alg, e)
            found = table.lookup_all(sig)
            for o in found:
                if o.dimension != s:
                    raise InternalInconsistency(
                        f"induced orbit has dim {o.dimension}, expected {s}")
            return sd, u, tuple(coeffs), found
        N *= 2
    raise RetriesExhausted(f"no generic point of u for sheet diagram {sd.labels}")


# -- recursion over Levis ------------------------------------------------------

_RIGID: dict = {}


def _key(alg, settings, preferred=frozenset()):
    rs = alg.rootsystem
    return (rs.cartan, rs.scan_order, settings.seed, settings.n_initial, preferred)


def levi_orbits(alg: ChevalleyAlgebra, levi: LeviClass, settings: Settings = Settings(),
                rigid_only: bool = True) -> list[LeviOrbit]:
    """Orbits (rigid ones by default) of the semisimple part of ``levi``.

    Orbits of a sum are products of orbits of the simple factors.
    """
    rs = alg.rootsystem
    factors = []
    for comp in levi.components:
        calg = component_algebra(rs, comp.nodes)
        orbs = rigid_orbits(calg, settings) if rigid_only else list(settings.table(calg))
        factors.append((comp.nodes, orbs))
    out = []
    for combo in product(*(f[1] for f in factors)):
        labels = {}
        dim = 0
        names = []
        for (nodes, _), o in zip(factors, combo):
            labels.update(zip(nodes, o.wdd))
            dim += o.dimension
            if not o.is_zero:
                names.append(o.label or "[" + " ".join(map(str, o.wdd)) + "]")
        pi = levi.pi
        out.append(LeviOrbit(pi, tuple(labels[i] for i in pi), dim, "+".join(names) or "0"))
    out.sort(key=lambda o: (o.dimension, o.wdd))
    return out


def rigid_orbits(alg: ChevalleyAlgebra, settings: Settings = Settings()) -> list[OrbitClass]:
    """Rigid orbits of ``alg`` (zero orbit included), by recursion over Levis."""
    key = _key(alg, settings)
    if key in _RIGID:
        return _RIGID[key]
    table = settings.table(alg)
    if alg.rank == 0:
        return [table.zero]
    induced = set()
    for rec in induction_table(alg, settings, with_reps=False):
        induced.add(rec.induced.wdd)
        induced.update(o.wdd for o in rec.alternatives)
    out = [o for o in table if o.wdd not in induced]
    for o in out:
        if any(x == 2 for x in o.wdd):
            raise InternalInconsistency(f"rigid orbit {o.wdd} has a label 2")
    _RIGID[key] = out
    return out


_TABLES: dict = {}


def _sheet_task(alg, levi, orbit, settings, table):
    rng = task_rng(settings.seed, "induce", str(alg.rootsystem), levi.pi, orbit.wdd)
    sd, u, coeffs, found = induce(alg, levi.pi, orbit, rng, settings, table)
    return SheetRecord(levi=levi, rigid=orbit, sheet_diagram=sd, rank=levi.center_dim,
                       dim_n=parabolic_data(alg.rootsystem, levi.pi)[1].__len__(),
                       induced=found[0], alternatives=tuple(found[1:]), u_roots=tuple(u),
                       witness=coeffs)


def _worker_init(cartan, types, scan, settings, preferred):
    global _WORKER
    rs = RootSystem(cartan, types, scan)
    alg = build_algebra(rs)
    table = settings.table(alg)
    levis = enumerate_levi_classes(alg, table, preferred)
    _WORKER = (alg, table, levis, settings)


def _worker(args):
    li, orbit = args
    alg, table, levis, settings = _WORKER
    rec = _sheet_task(alg, levis[li], orbit, settings, table)
    return (rec.induced.wdd, tuple(o.wdd for o in rec.alternatives), rec.u_roots, rec.witness)


def induction_table(alg: ChevalleyAlgebra, settings: Settings = Settings(),
                    with_reps: bool = False, corpus=None,
                    preferred: frozenset = frozenset()) -> list[SheetRecord]:
    """One record per (proper Levi class, rigid orbit of its semisimple part).

    ``preferred`` selects Levi representatives (see ``enumerate_levi_classes``);
    it changes sheet diagrams only within a conjugacy class.
    """
    preferred = frozenset(tuple(sorted(p)) for p in preferred)
    key = _key(alg, settings, preferred)
    if key in _TABLES:
        records = [replace(r) for r in _TABLES[key]]
    else:
        table = settings.table(alg)
        levis = enumerate_levi_classes(alg, table, preferred)
        tasks = []
        for levi in levis:
            if not levi.is_proper(alg.rank):
                continue
            for orbit in levi_orbits(alg, levi, settings):
                tasks.append((levi, orbit))
        if settings.jobs > 1 and len(tasks) > 1:
            rs = alg.rootsystem
            # warm the recursion here so workers only run the top level
            for levi, _ in tasks:
                levi_orbits(alg, levi, settings)
            with ProcessPoolExecutor(settings.jobs, initializer=_worker_init,
                                     initargs=(rs.cartan, rs.types, rs.scan_order, settings, preferred)) as ex:
                results = list(ex.map(_worker, [(lv.index, o) for lv, o in tasks]))
            records = []
            for (levi, orbit), (iw, alts, u, coeffs) in zip(tasks, results):
                sd = SheetDiagram.build(alg.rank, levi.pi, orbit.wdd)
                records.append(SheetRecord(levi, orbit, sd, levi.center_dim, levi.dim_n,
                                           table.by_wdd[iw], tuple(table.by_wdd[a] for a in alts),
                                           u, coeffs))
        else:
            records = []
            for n, (levi, orbit) in enumerate(tasks, 1):
                records.append(_sheet_task(alg, levi, orbit, settings, table))
                log.info("%s: sheet %d/%d (Levi %s) done", alg.rootsystem, n, len(tasks), levi.name)
        for r in records:
            if r.induced.dimension != r.rigid.dimension + 2 * r.dim_n:
                raise InternalInconsistency("dimension law violated")
        records.sort(key=lambda r: (-r.induced.dimension, tuple(-x for x in r.induced.wdd),
                                    r.rank, r.levi.index, r.rigid.wdd))
        _TABLES[key] = records
        records = [replace(r) for r in records]
    if with_reps:
        from .repfinder import attach_representatives
        attach_representatives(alg, records, settings, corpus)
    return records


def group_by_induced(records: list[SheetRecord]) -> list[tuple[OrbitClass, list[SheetRecord]]]:
    out: list = []
    for r in records:
        if out and out[-1][0].wdd == r.induced.wdd:
            out[-1][1].append(r)
        else:
            out.append((r.induced, [r]))
    return out
