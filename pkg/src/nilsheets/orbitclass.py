"""Nilpotent orbits as weighted Dynkin diagrams, and lookup by signature.

A labelling ``w`` of the simple roots is accepted as a weighted Dynkin diagram
when an explicit element ``e`` of ``g(h, 2)`` is found with

* ``[g(h, 0), e] = g(h, 2)`` (rank certified over GF(p), which bounds the
  rational rank from below), and
* ``h = [e, y]`` for some ``y`` in ``g(h, -2)`` (exact solve),

so ``(h, e, y)`` is an sl2-triple with ``h`` dominant.  Every accepted
labelling is cross-checked against an independent Jacobson-Morozov triple
built from the same ``e``.
"""

from __future__ import annotations

import hashlib
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .chevalley import SIGN_CONVENTION, AlgebraElement, ChevalleyAlgebra, build_algebra
from .ratlinalg import PRIME, rank_mod_p, solve
from .rootsystem import RootSystem
from .seeding import DEFAULT_SEED, task_rng
from .sl2jm import InternalInconsistency, build_triple, triple_signature

__all__ = [
    "OrbitClass",
    "OrbitTable",
    "SignatureNotFound",
    "AmbiguousSignature",
    "RetriesExhausted",
    "signature_from_wdd",
    "signature_of_element",
    "dimension_of_orbit",
    "enumerate_orbit_wdds",
    "orbit_table",
    "dominant_wdd",
    "cartan_element_for",
]

log = logging.getLogger(__name__)

CACHE_VERSION = 1

Signature = tuple[int, ...]


class SignatureNotFound(LookupError):
    pass


class AmbiguousSignature(LookupError):
    def __init__(self, signature, candidates):
        super().__init__(f"signature {signature} matches {len(candidates)} orbits")
        self.signature = signature
        self.candidates = candidates


class RetriesExhausted(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class OrbitClass:
    dimension: int
    wdd: tuple[int, ...]
    signature: Signature = field(compare=False)
    label: str | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return not any(self.wdd)

    def name(self) -> str:
        return self.label if self.label is not None else "[" + " ".join(map(str, self.wdd)) + "]"


# -- signatures ------------------------------------------------------------

def _weights(rs: RootSystem, w: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(w, r)) for r in rs.positive_roots]


def signature_from_wdd(rs: RootSystem, w: Sequence[int]) -> Signature:
    """Eigenspace dimensions of ad h for the element h with alpha_i(h) = w_i."""
    w = tuple(w)
    if len(w) != rs.rank or any(x not in (0, 1, 2) for x in w):
        raise ValueError(f"bad labelling {w} for {rs}")
    vals = _weights(rs, w)
    top = max(vals, default=0)
    dims = [0] * (top + 1)
    for v in vals:
        dims[v] += 1
    dims[0] = rs.rank + 2 * dims[0]
    return tuple(dims)


def dimension_of_orbit(alg, s: Signature) -> int:
    dim = alg if isinstance(alg, int) else alg.dim
    return dim - s[0] - (s[1] if len(s) > 1 else 0)


def _sl2_shape_ok(s: Signature) -> bool:
    # g(k) - g(k+2) counts irreducible summands with highest weight k
    ext = list(s) + [0, 0]
    return all(ext[k] >= ext[k + 2] for k in range(len(s)))


def signature_of_element(alg: ChevalleyAlgebra, e: AlgebraElement, rng=None) -> Signature:
    if not e:
        return (alg.dim,)
    return triple_signature(build_triple(e, rng=rng).h)


# -- exact Weyl-group helpers -------------------------------------------------

def cartan_element_for(alg: ChevalleyAlgebra, values: Sequence) -> AlgebraElement:
    """The h in the Cartan subalgebra with alpha_j(h) = values[j]."""
    C = alg.rootsystem.cartan
    l = alg.rank
    # alpha_j(sum c_i h_i) = sum_i c_i C[j][i]
    c = solve([[C[j][i] for i in range(l)] for j in range(l)], list(values))
    return alg.cartan_element(c)


def dominant_wdd(rs: RootSystem, values: Sequence[int]) -> tuple[int, ...]:
    """Dominant W-conjugate of the Cartan element with alpha_i(h) = values[i]."""
    v = list(values)
    C = rs.cartan
    while True:
        i = next((k for k, x in enumerate(v) if x < 0), None)
        if i is None:
            return tuple(v)
        a = v[i]
        v = [v[j] - a * C[j][i] for j in range(len(v))]


# -- enumeration ---------------------------------------------------------------

def _graded(alg: ChevalleyAlgebra, w, k: int) -> list[int]:
    """Basis indices of root vectors in g(h, k), k != 0."""
    vals = _weights(alg.rootsystem, w)
    if k > 0:
        return [i for i, v in enumerate(vals) if v == k]
    return [alg.npos + i for i, v in enumerate(vals) if v == -k]


def _g0(alg: ChevalleyAlgebra, w) -> list[int]:
    vals = _weights(alg.rootsystem, w)
    zero = [i for i, v in enumerate(vals) if v == 0]
    return zero + [alg.npos + i for i in zero] + [2 * alg.npos + i for i in range(alg.rank)]


def _surjective_mod_p(alg, g0, g2, coeffs) -> bool:
    """rank of b -> [b, e] from g0 to g2, over GF(p), equals dim g2."""
    pos = {k: r for r, k in enumerate(g2)}
    M = np.zeros((len(g2), len(g0)), dtype=np.int64)
    for col, b in enumerate(g0):
        tb = alg.table[b]
        acc: dict[int, int] = {}
        for k, c in zip(g2, coeffs):
            for t, s in tb.get(k, ()):
                acc[t] = acc.get(t, 0) + c * s
        for t, v in acc.items():
            if t not in pos:
                raise InternalInconsistency("[g0, g2] left g2")
            M[pos[t], col] = v % PRIME
    return rank_mod_p(M) == len(g2)


def _morozov_partner(alg, w, g2, coeffs):
    """y in g(h,-2) with [e, y] = h, or None."""
    e = alg.element(dict(zip(g2, coeffs)))
    h = cartan_element_for(alg, w)
    gm2 = [alg.npos + k for k in g2]
    cols = [alg.bracket(e, alg.basis_element(k)).vector() for k in gm2]
    A = [[col[i] for col in cols] for i in range(alg.dim)]
    y = solve(A, h.vector())
    if y is None:
        return e, h, None
    return e, h, alg.element(dict(zip(gm2, y)))


def evaluate_candidate(alg: ChevalleyAlgebra, w, rng: random.Random, n_initial: int = 10,
                       samples: int = 50, escalations: int = 3, cross_check: bool = True):
    """Decide whether ``w`` is a weighted Dynkin diagram.

    Returns ``(signature, witness)`` or ``None``.
    """
    rs = alg.rootsystem
    w = tuple(w)
    sig = signature_from_wdd(rs, w)
    if not any(w):
        return sig, alg.zero()
    if not _sl2_shape_ok(sig) or len(sig) < 3 or sig[2] == 0:
        return None
    g0, g2 = _g0(alg, w), _graded(alg, w, 2)
    if len(g0) < len(g2):
        return None
    # generic test over GF(p): a random point reaches the generic rank except on
    # a hypersurface of degree <= dim g2, so three misses make it ~(dim g2 / p)^3
    if not any(_surjective_mod_p(alg, g0, g2, [rng.randrange(1, PRIME) for _ in g2])
               for _ in range(3)):
        return None
    N = n_initial
    for _ in range(escalations + 1):
        for _ in range(samples):
            coeffs = [rng.randint(0, N) for _ in g2]
            if not _surjective_mod_p(alg, g0, g2, coeffs):
                continue
            e, h, y = _morozov_partner(alg, w, g2, coeffs)
            if y is None:
                # e lies in the dense G0-orbit of g2, so w is not characteristic
                return None
            if alg.bracket(h, y) != -2 * y:
                raise InternalInconsistency("Morozov partner is not in g(h,-2)")
            if cross_check and triple_signature(build_triple(e, check_nilpotent=False).h) != sig:
                raise InternalInconsistency(f"signature cross-check failed for {w}")
            return sig, e
        N *= 2
    raise RetriesExhausted(f"no dense-orbit witness for labelling {w}")


def _worker(args):
    cartan, types, scan, w, seed, n_initial = args
    rs = RootSystem(cartan, types, scan)
    alg = build_algebra(rs)
    res = evaluate_candidate(alg, w, task_rng(seed, "wdd", str(rs), w), n_initial)
    return w, (res[0] if res else None)


def enumerate_orbit_wdds(alg: ChevalleyAlgebra, seed: int = DEFAULT_SEED, n_initial: int = 10,
                         jobs: int = 1) -> dict[tuple[int, ...], Signature]:
    """All weighted Dynkin diagrams of ``alg`` mapped to their signatures."""
    rs = alg.rootsystem
    cands = list(product((0, 1, 2), repeat=rs.rank))
    out = {}
    if jobs > 1 and len(cands) > 27:
        args = [(rs.cartan, rs.types, rs.scan_order, w, seed, n_initial) for w in cands]
        with ProcessPoolExecutor(jobs) as ex:
            for w, sig in ex.map(_worker, args, chunksize=8):
                if sig is not None:
                    out[w] = sig
    else:
        for n, w in enumerate(cands, 1):
            if n % 500 == 0:
                log.info("%s: %d/%d labellings tested, %d accepted", rs, n, len(cands), len(out))
            res = evaluate_candidate(alg, w, task_rng(seed, "wdd", str(rs), w), n_initial)
            if res is not None:
                out[w] = res[0]
    return dict(sorted(out.items()))


# -- orbit table -------------------------------------------------------------

class OrbitTable:
    """All nilpotent orbits of an algebra, indexed by signature."""

    def __init__(self, alg: ChevalleyAlgebra, orbits: Iterable[OrbitClass]):
        self.algebra = alg
        self.orbits = sorted(orbits, key=lambda o: (-o.dimension, tuple(-x for x in o.wdd)))
        self.by_wdd = {o.wdd: o for o in self.orbits}
        self.by_signature: dict[Signature, list[OrbitClass]] = {}
        for o in self.orbits:
            self.by_signature.setdefault(o.signature, []).append(o)

    def __len__(self):
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    @property
    def zero(self) -> OrbitClass:
        return self.by_wdd[(0,) * self.algebra.rank]

    def lookup(self, sig: Signature) -> OrbitClass:
        found = self.by_signature.get(tuple(sig))
        if not found:
            raise SignatureNotFound(f"no orbit with signature {tuple(sig)}")
        if len(found) > 1:
            raise AmbiguousSignature(tuple(sig), found)
        return found[0]

    def lookup_all(self, sig: Signature) -> list[OrbitClass]:
        found = self.by_signature.get(tuple(sig))
        if not found:
            raise SignatureNotFound(f"no orbit with signature {tuple(sig)}")
        return list(found)

    def identify(self, e: AlgebraElement, rng=None) -> OrbitClass:
        return self.lookup(signature_of_element(self.algebra, e, rng))

    def signatures_distinct(self) -> bool:
        return all(len(v) == 1 for v in self.by_signature.values())


def identify_orbit(alg: ChevalleyAlgebra, e: AlgebraElement, **kw) -> OrbitClass:
    return orbit_table(alg, **kw).identify(e)


def _labels_for(rs: RootSystem) -> dict:
    from .corpus import CorpusError, load_corpus
    from .rootsystem import build_root_system

    if len(rs.types) != 1:
        return {}
    name = str(rs)
    try:
        ref = build_root_system(name)
    except Exception:
        return {}
    if ref.cartan != rs.cartan:
        return {}
    try:
        labels = load_corpus(name).labels()
    except CorpusError:
        labels = {}
    labels[(0,) * rs.rank] = "0"
    return labels


def _cache_key(rs: RootSystem) -> str:
    digest = hashlib.sha1(repr(rs.cartan).encode()).hexdigest()[:10]
    return f"{rs}-{digest}"


def _cache_header(rs: RootSystem) -> str:
    return f"# nilsheets orbit cache v{CACHE_VERSION} signs={SIGN_CONVENTION} key={_cache_key(rs)}"


def _read_cache(path: Path, rs: RootSystem, labels) -> list[OrbitClass] | None:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if not lines or lines[0] != _cache_header(rs):
        return None
    out = []
    try:
        for line in lines[1:]:
            if not line.strip():
                continue
            w, s, d, _ = (x.strip() for x in line.split("|"))
            w = tuple(int(x) for x in w.split())
            s = tuple(int(x) for x in s.split())
            if signature_from_wdd(rs, w) != s or int(d) != dimension_of_orbit(rs.dim_algebra, s):
                return None
            out.append(OrbitClass(int(d), w, s, labels.get(w)))
    except ValueError:
        return None
    return out


def _write_cache(path: Path, rs: RootSystem, orbits) -> None:
    lines = [_cache_header(rs)]
    for o in orbits:
        lines.append(f"{' '.join(map(str, o.wdd))} | {' '.join(map(str, o.signature))} | "
                     f"{o.dimension} | {o.label or '-'}")
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


_TABLES: dict = {}


def orbit_table(alg: ChevalleyAlgebra, seed: int = DEFAULT_SEED, n_initial: int = 10,
                cache_dir: str | os.PathLike | None = None, jobs: int = 1) -> OrbitTable:
    """Orbit table of ``alg``, memoised per process and optionally cached on disk."""
    rs = alg.rootsystem
    key = (rs.cartan, rs.scan_order)
    if key in _TABLES:
        return _TABLES[key]
    labels = _labels_for(rs)
    orbits = None
    path = Path(cache_dir) / f"{_cache_key(rs)}.orbits" if cache_dir else None
    if path is not None:
        orbits = _read_cache(path, rs, labels)
    if orbits is None:
        wdds = enumerate_orbit_wdds(alg, seed=seed, n_initial=n_initial, jobs=jobs)
        orbits = [OrbitClass(dimension_of_orbit(alg, s), w, s, labels.get(w)) for w, s in wdds.items()]
        if path is not None:
            _write_cache(path, rs, sorted(orbits, key=lambda o: o.wdd))
    table = _TABLES[key] = OrbitTable(alg, orbits)
    return table
