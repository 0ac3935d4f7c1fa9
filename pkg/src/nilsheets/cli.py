"""Command-line interface: ``nilsheets <command> <type> [options]``."""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time
from dataclasses import dataclass

from .chevalley import build_algebra
from .corpus import CorpusError, load_corpus
from .induction import Settings, induction_table, rigid_orbits
from .levi import enumerate_levi_classes
from .orbitclass import RetriesExhausted
from .rootsystem import RootSystemError, build_root_system
from .seeding import DEFAULT_SEED

log = logging.getLogger("nilsheets")

CACHE_ENV = "NILSHEETS_CACHE_DIR"
LONG_TYPES = {"E7", "E8"}

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RETRIES = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    algebra: str
    seed: int = DEFAULT_SEED
    n_initial: int = 10
    cache_dir: str | None = None
    fmt: str = "text"
    jobs: int = 1
    include_reps: bool = True
    allow_long: bool = False
    lex_levi: bool = False

    def settings(self) -> Settings:
        return Settings(seed=self.seed, n_initial=self.n_initial, jobs=self.jobs,
                        cache_dir=self.cache_dir)


def _config(args) -> RunConfig:
    cache = args.cache_dir or os.environ.get(CACHE_ENV) or None
    return RunConfig(args.type.upper(), args.seed, args.n_initial, cache, args.format,
                     max(1, args.jobs), not args.no_reps, args.allow_long,
                     getattr(args, "lex_levi", False))


def _guard_long(cfg: RunConfig):
    if cfg.algebra in LONG_TYPES and not cfg.allow_long:
        raise UsageError(f"{cfg.algebra} takes a long time; pass --allow-long to run it")


def _corpus_or_none(name: str):
    try:
        return load_corpus(name)
    except CorpusError:
        return None


def _preferred(cfg: RunConfig, corpus) -> frozenset:
    if cfg.lex_levi or corpus is None:
        return frozenset()
    return corpus.levi_subsets()


def _emit_rows(cfg, header, rows, json_rows, caption):
    from .emit import dump_json, rows_to_latex, rows_to_text
    if cfg.fmt == "json":
        return dump_json({"algebra": cfg.algebra, "rows": json_rows})
    if cfg.fmt == "latex":
        return rows_to_latex(header, rows, caption)
    return rows_to_text(header, rows)


# -- commands ----------------------------------------------------------------

def cmd_roots(cfg: RunConfig) -> tuple[str, int]:
    rs = build_root_system(cfg.algebra)
    rows, js = [], []
    for n, r in enumerate(rs.positive_roots, 1):
        length = "long" if rs.is_long(r) else "short"
        rows.append([str(n), " ".join(map(str, r)), str(sum(r)), length])
        js.append({"index": n, "coords": list(r), "height": sum(r), "length": length})
    return _emit_rows(cfg, ["index", "coords", "height", "length"], rows, js,
                      f"Positive roots of {rs}"), EXIT_OK


def cmd_mult_table(cfg: RunConfig) -> tuple[str, int]:
    alg = build_algebra(cfg.algebra)
    lines = [f"# {cfg.algebra} dim {alg.dim}; [b_i, b_j] = sum c b_k; basis x_1..x_{alg.npos}, "
             f"x_-1..x_-{alg.npos}, h_1..h_{alg.rank}"]
    lines += [f"{i} {j} {k} {c}" for i, j, k, c in alg.multiplication_table()]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_orbits(cfg: RunConfig) -> tuple[str, int]:
    _guard_long(cfg)
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    table = cfg.settings().table(alg)
    rows, js = [], []
    for o in table:
        rows.append([o.label or "-", rs.format_labels(o.wdd), " ".join(map(str, o.signature)),
                     str(o.dimension)])
        js.append({"label": o.label, "wdd": list(o.wdd), "signature": list(o.signature),
                   "dim": o.dimension})
    return _emit_rows(cfg, ["label", "characteristic", "signature", "dim"], rows, js,
                      f"Nilpotent orbits in {rs}"), EXIT_OK


def cmd_levis(cfg: RunConfig) -> tuple[str, int]:
    _guard_long(cfg)
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    settings = cfg.settings()
    pref = _preferred(cfg, _corpus_or_none(cfg.algebra))
    rows, js = [], []
    for c in enumerate_levi_classes(alg, settings.table(alg), pref):
        rows.append([c.name, ",".join(str(i + 1) for i in c.pi) or "-",
                     "+".join(x.name() for x in c.components) or "-", str(c.center_dim),
                     rs.format_labels(c.principal_wdd)])
        js.append({"name": c.name, "pi": [i + 1 for i in c.pi],
                   "types": [x.name() for x in c.components], "center_dim": c.center_dim,
                   "principal_wdd": list(c.principal_wdd)})
    return _emit_rows(cfg, ["name", "pi", "types", "center", "principal characteristic"], rows, js,
                      f"Levi subalgebras of {rs}"), EXIT_OK


def cmd_rigid(cfg: RunConfig) -> tuple[str, int]:
    _guard_long(cfg)
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    rigid = [o for o in rigid_orbits(alg, cfg.settings())]
    nonzero = [o for o in rigid if not o.is_zero]
    rows = [[o.label or "-", rs.format_labels(o.wdd), str(o.dimension)] for o in nonzero]
    if not nonzero:
        rows = [["0", rs.format_labels((0,) * rs.rank), "0"]]
    js = [{"label": o.label, "wdd": list(o.wdd), "dim": o.dimension} for o in rigid]
    return _emit_rows(cfg, ["label", "characteristic", "dim"], rows, js,
                      f"Rigid nilpotent orbits in {rs}"), EXIT_OK


def cmd_table(cfg: RunConfig, figures: str | None = None) -> tuple[str, int]:
    from .emit import dump_json, sheets_to_json, sheets_to_latex, sheets_to_text
    _guard_long(cfg)
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    corpus = _corpus_or_none(cfg.algebra)
    t0 = time.time()
    records = induction_table(alg, cfg.settings(), with_reps=cfg.include_reps, corpus=corpus,
                              preferred=_preferred(cfg, corpus))
    log.info("%s: %d sheets in %.1fs", rs, len(records), time.time() - t0)
    if figures:
        from .figures import render_representatives
        for p in render_representatives(rs, records, figures):
            log.info("wrote %s", p)
    if cfg.fmt == "json":
        return dump_json(sheets_to_json(cfg.algebra, records)), EXIT_OK
    if cfg.fmt == "latex":
        return sheets_to_latex(rs, records), EXIT_OK
    return sheets_to_text(rs, records), EXIT_OK


def cmd_verify(cfg: RunConfig, corpus_path: str | None = None) -> tuple[str, int]:
    from .induction import SheetDiagram
    from .repfinder import is_admissible, verify_representative
    _guard_long(cfg)
    corpus = load_corpus(corpus_path) if corpus_path else load_corpus(cfg.algebra)
    if corpus.algebra.upper() != cfg.algebra:
        raise UsageError(f"corpus is for {corpus.algebra}, not {cfg.algebra}")
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    settings = cfg.settings()
    table = settings.table(alg)
    lines, bad = [], 0

    def report(ok, what):
        nonlocal bad
        bad += not ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {what}")

    rigid = {o.wdd for o in rigid_orbits(alg, settings) if not o.is_zero}
    gold = {r.wdd for r in corpus.rigid}
    report(rigid == gold, f"rigid orbits: {len(rigid)} computed, {len(gold)} in corpus")
    for r in corpus.rigid:
        report(r.wdd in rigid, f"rigid {r.label} [{rs.format_labels(r.wdd)}]")
    if corpus.sheets:
        records = induction_table(alg, settings, preferred=corpus.levi_subsets())
        mine = {}
        for rec in records:
            mine.setdefault(rec.sheet_diagram.labels, []).append(rec)
        report(len(records) == len(corpus.sheets),
               f"sheet count: {len(records)} computed, {len(corpus.sheets)} in corpus")
        for row in corpus.sheets:
            what = f"sheet [{rs.format_labels(row.sheet_diagram)}] {row.label}"
            recs = mine.get(row.sheet_diagram, [])
            if len(recs) != 1:
                report(False, f"{what}: {len(recs)} computed sheets with this diagram")
                continue
            rec = recs[0]
            diffs = []
            if rec.rank != row.rank:
                diffs.append(f"rank {rec.rank} != {row.rank}")
            if rec.induced.wdd != row.induced_wdd:
                diffs.append(f"characteristic {rs.format_labels(rec.induced.wdd)} != "
                             f"{rs.format_labels(row.induced_wdd)}")
            if rec.induced.dimension != row.dim:
                diffs.append(f"dim {rec.induced.dimension} != {row.dim}")
            report(not diffs, what + (": " + "; ".join(diffs) if diffs else ""))
            if row.representative:
                target = table.by_wdd.get(row.induced_wdd)
                if target is None:
                    report(False, f"{what}: representative target orbit unknown")
                    continue
                v = verify_representative(alg, SheetDiagram(row.sheet_diagram), row.representative,
                                          target, table)
                adm = "admissible" if is_admissible(alg, row.representative) else "not admissible"
                report(v.ok, f"{what}: representative {','.join(map(str, row.representative))} "
                             f"in u={v.in_u} orbit={v.orbit_ok} ({adm})")
    lines.append(f"{len(lines) - bad} passed, {bad} failed")
    return "\n".join(lines) + "\n", EXIT_MISMATCH if bad else EXIT_OK


def _spec_nodes(spec: str, nodes: int | None) -> int:
    if nodes:
        return nodes
    edges, _, longs = spec.partition(";")
    nums = [int(x) for x in re.findall(r"(\d+)-(\d+)", edges) for x in x]
    nums += [int(x) for x in re.findall(r"\d+", longs)]
    return max(nums, default=1)


def cmd_rep(cfg: RunConfig, diagram: str, roots: str | None, spec: str | None,
            nodes: int | None = None) -> tuple[str, int]:
    from .diagrams import parse_spec
    from .induction import LeviOrbit, SheetDiagram, induce
    from .repfinder import (NotFound, VerificationFailed, find_any_representative,
                            find_representative, is_admissible, verify_representative)
    from .seeding import task_rng
    _guard_long(cfg)
    alg = build_algebra(cfg.algebra)
    rs = alg.rootsystem
    settings = cfg.settings()
    table = settings.table(alg)
    try:
        sd = SheetDiagram(rs.parse_labels(diagram))
    except Exception as exc:
        raise UsageError(f"bad sheet diagram {diagram!r}: {exc}")
    pi = sd.pi
    # the orbit of the Levi given by the labels on pi
    from .levi import _split, component_algebra
    dim = 0
    for comp in _split(rs, pi):
        ctab = settings.table(component_algebra(rs, comp.nodes))
        w = tuple(sd.labels[i] for i in comp.nodes)
        if w not in ctab.by_wdd:
            raise UsageError(f"labels {w} on {comp.name()} are not a weighted Dynkin diagram")
        dim += ctab.by_wdd[w].dimension
    orbit = LeviOrbit(pi, sd.rigid_wdd(), dim)
    _, _, _, found = induce(alg, pi, orbit, task_rng(cfg.seed, "rep", diagram), settings, table)
    target = found[0]
    out = [f"sheet diagram: {rs.format_labels(sd.labels)}",
           f"induced orbit: {target.name()} [{rs.format_labels(target.wdd)}] dim {target.dimension}"]
    if roots:
        rl = [int(x) for x in roots.split(",") if x.strip()]
        v = verify_representative(alg, sd, rl, target, table)
        out.append(f"roots {','.join(map(str, rl))}: in u={v.in_u} orbit={v.orbit_ok} "
                   f"characteristic={rs.format_labels(v.characteristic) if v.characteristic else '-'} "
                   f"admissible={is_admissible(alg, rl)}")
        return "\n".join(out) + "\n", EXIT_OK if v.ok else EXIT_MISMATCH
    try:
        if spec:
            found_roots = find_representative(alg, sd, parse_spec(spec, _spec_nodes(spec, nodes)),
                                              target, table)
        else:
            found_roots = find_any_representative(alg, sd, target, table)
    except (NotFound, VerificationFailed) as exc:
        out.append(f"no representative: {exc}")
        return "\n".join(out) + "\n", EXIT_MISMATCH
    out.append(f"representative: {','.join(map(str, found_roots))} "
               f"admissible={is_admissible(alg, found_roots)}")
    return "\n".join(out) + "\n", EXIT_OK


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master random seed")
    common.add_argument("--n-initial", type=int, default=10, help="initial coefficient bound N")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--cache-dir", default=None, help=f"orbit cache directory (env {CACHE_ENV})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--allow-long", action="store_true", help="permit E7 and E8")
    common.add_argument("--no-reps", action="store_true", help="skip representative search")
    common.add_argument("--lex-levi", action="store_true",
                        help="use lexicographically least Levi subsets even when a corpus exists")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")

    p = argparse.ArgumentParser(prog="nilsheets", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [("roots", "list positive roots"),
                           ("mult-table", "dump the structure constants"),
                           ("orbits", "list nilpotent orbits"),
                           ("levis", "list Levi subalgebra classes"),
                           ("rigid", "list rigid nilpotent orbits")]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("type")
    sp = sub.add_parser("table", parents=[common], help="induction table with sheets")
    sp.add_argument("type")
    sp.add_argument("--figures", default=None, help="directory for representative diagrams (PNG)")
    sp = sub.add_parser("verify", parents=[common], help="check against a golden corpus")
    sp.add_argument("type")
    sp.add_argument("corpus", nargs="?", default=None)
    sp = sub.add_parser("rep", parents=[common], help="find or check a representative")
    sp.add_argument("type")
    sp.add_argument("diagram", help="sheet diagram, e.g. '2 0 0 1' or '2 0 2[2] 0 2'")
    sp.add_argument("--roots", default=None, help="comma-separated root numbers to verify")
    sp.add_argument("--spec", default=None, help="diagram shape, e.g. '1-2:2;long=2'")
    sp.add_argument("--nodes", type=int, default=None, help="node count of --spec (default: largest node)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        cfg = _config(args)
        build_root_system(cfg.algebra)
        if args.command == "roots":
            text, code = cmd_roots(cfg)
        elif args.command == "mult-table":
            text, code = cmd_mult_table(cfg)
        elif args.command == "orbits":
            text, code = cmd_orbits(cfg)
        elif args.command == "levis":
            text, code = cmd_levis(cfg)
        elif args.command == "rigid":
            text, code = cmd_rigid(cfg)
        elif args.command == "table":
            text, code = cmd_table(cfg, args.figures)
        elif args.command == "verify":
            text, code = cmd_verify(cfg, args.corpus)
        else:
            text, code = cmd_rep(cfg, args.diagram, args.roots, args.spec, args.nodes)
    except (UsageError, RootSystemError, CorpusError) as exc:
        print(f"nilsheets: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RetriesExhausted as exc:
        print(f"nilsheets: retries exhausted: {exc}", file=sys.stderr)
        return EXIT_RETRIES
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
