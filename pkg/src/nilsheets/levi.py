"""Standard Levi subalgebras up to conjugacy.

Two standard Levi subalgebras are conjugate exactly when the principal
nilpotents ``u_P = sum_{a in P} x_a`` of their semisimple parts lie in the same
orbit of g, so classes are keyed by that orbit's weighted Dynkin diagram.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .chevalley import ChevalleyAlgebra, build_algebra
from .orbitclass import OrbitTable, dominant_wdd, orbit_table
from .ratlinalg import solve
from .rootsystem import RootSystem, SimpleType, _components, all_subsets
from .sl2jm import InternalInconsistency, Sl2Triple, triple_signature

__all__ = ["LeviClass", "Component", "enumerate_levi_classes", "parabolic_data",
           "principal_triple", "component_algebra"]


@dataclass(frozen=True)
class Component:
    """A simple factor of a Levi: ambient simple-root indices and type."""
    nodes: tuple[int, ...]
    type: SimpleType
    short: bool = False  # type A made of short roots (printed with a tilde)

    def name(self) -> str:
        return ("~" if self.short else "") + str(self.type)


@dataclass
class LeviClass:
    pi: tuple[int, ...]
    members: list[tuple[int, ...]]
    components: tuple[Component, ...]
    center_dim: int
    principal_wdd: tuple[int, ...]
    dim_n: int
    name: str = ""
    index: int = 0

    @property
    def component_types(self) -> list[SimpleType]:
        return [c.type for c in self.components]

    @property
    def types_key(self) -> str:
        return _type_name(self.components)

    def is_proper(self, rank: int) -> bool:
        return len(self.pi) < rank


def parabolic_data(rs: RootSystem, pi) -> tuple[RootSystem, list[int]]:
    """``(Psi, nilradical)``: the subsystem on ``pi`` and the 0-based indices of
    the positive roots outside it."""
    psi = rs.subsystem(pi)
    inside = set(rs.subsystem_roots(pi))
    return psi, [k for k in range(rs.num_positive) if k not in inside]


def _split(rs: RootSystem, pi) -> tuple[Component, ...]:
    pi = sorted(pi)
    if not pi:
        return ()
    sub = [[rs.cartan[i][j] for j in pi] for i in pi]
    psi = RootSystem(sub)
    out = []
    for comp, t in zip(_components(sub), psi.types):
        nodes = tuple(pi[i] for i in comp)
        short = False
        if t.family == "A" and any(rs.is_long(rs.positive_roots[i]) for i in range(rs.rank)) \
                and not rs.is_long(rs.positive_roots[nodes[0]]):
            short = True
        out.append(Component(nodes, t, short))
    return tuple(out)


def _type_name(comps) -> str:
    if not comps:
        return "T"
    order = {"E": 0, "F": 1, "D": 2, "C": 3, "B": 4, "A": 5, "G": 6}
    names = Counter(c.name() for c in comps)
    key = {c.name(): (-c.type.rank, c.short, order[c.type.family]) for c in comps}
    parts = []
    for n in sorted(names, key=lambda n: key[n]):
        m = names[n]
        parts.append(f"{m}{n}" if m > 1 else n)
    return "+".join(parts)


def component_algebra(rs: RootSystem, nodes) -> ChevalleyAlgebra:
    """Algebra of the sub-Cartan matrix on ``nodes`` (kept in the given order)."""
    nodes = list(nodes)
    return build_algebra(RootSystem([[rs.cartan[i][j] for j in nodes] for i in nodes]))


def principal_triple(alg: ChevalleyAlgebra, pi) -> Sl2Triple:
    """Explicit triple through ``u_P``: ``h = sum c_i h_i`` with
    ``alpha_j(h) = 2`` on ``P`` and ``f = sum c_i x_{-alpha_i}``."""
    pi = sorted(pi)
    if not pi:
        raise ValueError("empty subset has no principal nilpotent")
    C = alg.rootsystem.cartan
    c = solve([[C[j][i] for i in pi] for j in pi], [2] * len(pi))
    if c is None:
        raise InternalInconsistency("singular Levi Cartan matrix")
    e = alg.sum_of_root_vectors([i + 1 for i in pi])
    f = alg.sum_of_root_vectors([-(i + 1) for i in pi], c)
    h = alg.cartan_element([c[pi.index(i)] if i in pi else 0 for i in range(alg.rank)])
    t = Sl2Triple(h, e, f)
    if not t.check():
        raise InternalInconsistency("principal triple relations fail")
    return t


def _principal_wdd(alg: ChevalleyAlgebra, table: OrbitTable, pi) -> tuple[int, ...]:
    rs = alg.rootsystem
    if not pi:
        return (0,) * rs.rank
    t = principal_triple(alg, pi)
    # signature lookup, as for any element ...
    found = table.lookup_all(triple_signature(t.h))
    # ... disambiguated (only possible for type D) by the dominant conjugate of h
    C = rs.cartan
    hc = [t.h.coords.get(2 * alg.npos + i, Fraction(0)) for i in range(rs.rank)]
    vals = [sum(hc[i] * C[j][i] for i in range(rs.rank)) for j in range(rs.rank)]
    dom = dominant_wdd(rs, [int(v) for v in vals])
    if dom not in {o.wdd for o in found}:
        raise InternalInconsistency(f"principal diagram of {pi} disagrees with its signature")
    return dom


_CLASSES: dict = {}


def enumerate_levi_classes(alg: ChevalleyAlgebra, table: OrbitTable | None = None,
                           preferred: frozenset = frozenset()) -> list[LeviClass]:
    """Conjugacy classes of standard Levi subalgebras, ordered by decreasing
    semisimple rank and then by representative subset.

    The representative of a class is its lexicographically least subset unless
    the class contains a subset listed in ``preferred``.
    """
    rs = alg.rootsystem
    preferred = frozenset(tuple(sorted(p)) for p in preferred)
    key = (rs.cartan, rs.scan_order, preferred)
    if key in _CLASSES:
        return _CLASSES[key]
    table = table or orbit_table(alg)
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for pi in all_subsets(rs.rank):
        groups.setdefault(_principal_wdd(alg, table, pi), []).append(pi)
    classes = []
    for wdd, members in groups.items():
        liked = [m for m in members if m in preferred]
        rep = min(liked) if liked else min(members)
        comps = _split(rs, rep)
        for m in members[1:]:
            if sorted(c.name() for c in _split(rs, m)) != sorted(c.name() for c in comps):
                raise InternalInconsistency(f"conjugate Levis {rep} and {m} differ in type")
        _, nil = parabolic_data(rs, rep)
        classes.append(LeviClass(rep, sorted(members), comps, rs.rank - len(rep), wdd, len(nil)))
    classes.sort(key=lambda c: (-len(c.pi), c.members[0]))
    seen = Counter(c.types_key for c in classes)
    count: Counter = Counter()
    for i, c in enumerate(classes):
        c.index = i
        base = c.types_key
        if seen[base] > 1:
            count[base] += 1
            c.name = f"({base})" + "'" * count[base]
        else:
            c.name = base
    _CLASSES[key] = classes
    return classes
