"""Golden corpus files: reference rigid orbits and induction tables.

Line formats (``|``-separated, ``#`` starts a comment)::

    type | characteristic | label
    type | sheet_diagram | rank | induced_wdd | dim | rep_root_indices | spec_edges | label

Diagrams are in drawing order (see ``RootSystem.format_labels``); parsed
records hold native label tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .diagrams import DiagramSpec, parse_spec
from .rootsystem import build_root_system

__all__ = ["RigidRow", "SheetRow", "Corpus", "parse_corpus", "load_corpus", "CorpusError",
           "CORPUS_VERSION"]

CORPUS_VERSION = 1


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class RigidRow:
    algebra: str
    wdd: tuple[int, ...]
    label: str
    line: int = 0


@dataclass(frozen=True)
class SheetRow:
    algebra: str
    sheet_diagram: tuple[int, ...]
    rank: int
    induced_wdd: tuple[int, ...]
    dim: int
    representative: tuple[int, ...]
    spec: DiagramSpec | None
    label: str
    line: int = 0


@dataclass
class Corpus:
    algebra: str
    rigid: list[RigidRow]
    sheets: list[SheetRow]

    def levi_subsets(self) -> frozenset:
        """Simple-root subsets underlying the corpus sheet diagrams."""
        return frozenset(tuple(i for i, x in enumerate(s.sheet_diagram) if x < 2)
                         for s in self.sheets)

    def labels(self) -> dict[tuple[int, ...], str]:
        out = {r.wdd: r.label for r in self.rigid}
        for s in self.sheets:
            out.setdefault(s.induced_wdd, s.label)
        return out


def parse_corpus(text: str) -> Corpus:
    algebra = None
    rigid, sheets = [], []
    rs = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        f = [x.strip() for x in line.split("|")]
        if algebra is None:
            algebra = f[0]
            rs = build_root_system(algebra)
        elif f[0] != algebra:
            raise CorpusError(f"line {n}: mixed algebra types")
        try:
            if len(f) == 3:
                rigid.append(RigidRow(algebra, rs.parse_labels(f[1]), f[2], n))
            elif len(f) == 8:
                reps = tuple(int(x) for x in f[5].split(",") if x.strip())
                spec = parse_spec(f[6], len(reps)) if reps else None
                sheets.append(SheetRow(algebra, rs.parse_labels(f[1]), int(f[2]),
                                       rs.parse_labels(f[3]), int(f[4]), reps, spec, f[7], n))
            else:
                raise CorpusError(f"line {n}: expected 3 or 8 fields, got {len(f)}")
        except CorpusError:
            raise
        except Exception as exc:
            raise CorpusError(f"line {n}: {exc}") from exc
    if algebra is None:
        raise CorpusError("empty corpus")
    return Corpus(algebra, rigid, sheets)


def load_corpus(source) -> Corpus:
    """Load a corpus by algebra name (bundled data) or from a file path."""
    path = Path(source)
    if path.is_file():
        return parse_corpus(path.read_text())
    if isinstance(source, Path) or "/" in str(source):
        raise CorpusError(f"no such corpus file: {source}")
    stem = str(source)[:-7] if str(source).endswith(".corpus") else str(source)
    name = f"{stem.upper()}.corpus"
    ref = resources.files("nilsheets").joinpath("data", name)
    if not ref.is_file():
        raise CorpusError(f"no bundled corpus for {source}")
    return parse_corpus(ref.read_text())


def bundled_algebras() -> list[str]:
    root = resources.files("nilsheets").joinpath("data")
    return sorted(p.name[:-7] for p in root.iterdir() if p.name.endswith(".corpus"))
