# -*- coding: utf-8 -*-
"""Batch conversion tool: derivations in, diagrams and statistics out.

Sentences are processed independently; one malformed entry is recorded as a
failure and never aborts the batch.  Identical input and configuration give
byte-identical outputs.

When both rewrites are requested, planarization runs before normalization
(planarization recognizes the raw crossed-composition images)."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import biclosed as bc
from .diagram import DEFAULT_ATOM_MAP, Cap, Cup, Swap, diagram_to_json
from .functor import LoweringContext, lower
from .ingest import IngestError, ingest_tree, read_derivations
from .render import render_svg, render_tikz
from .rewrite import normalize as normalize_diagram
from .rewrite import planarize as planarize_diagram
from .rules import leaves, rule_histogram
from .semantics import DimAssignment, semantically_equal

EMITS = ("biclosed", "diagram", "tikz", "svg", "stats")

STATS_COLUMNS = ("id", "words", "rule-histogram", "cups", "caps",
                 "swaps_before", "swaps_after", "layers")


@dataclass
class JobConfig:
    inputs: list[str]
    fmt: str = "json"
    out_dir: str | None = None
    emit: tuple[str, ...] = ("diagram",)
    normalize: bool = False
    planarize: bool = False
    check_semantics: str | None = None
    seed: int = 0
    strict: bool = False
    atom_map: dict[str, str] = field(default_factory=dict)

    def validate(self) -> list[str]:
        problems = []
        if not self.inputs:
            problems.append("no input files")
        if self.fmt not in ("json", "ccgbank"):
            problems.append(f"unknown input format {self.fmt!r}")
        if not self.emit:
            problems.append("at least one output format is required")
        for e in self.emit:
            if e not in EMITS:
                problems.append(f"unknown emit format {e!r}")
        return problems


@dataclass
class ExitReport:
    total: int = 0
    converted: int = 0
    failed: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    outputs: dict[str, str | bytes] = field(default_factory=dict)
    stats_rows: list[tuple] = field(default_factory=list)

    def summary(self) -> str:
        return f"total {self.total} converted {self.converted} failed {self.failed}"


def _parse_dims(spec: str) -> DimAssignment:
    dims: dict[str, int] = {}
    default = 2
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"bad dims entry {part!r}")
        if key == "*":
            default = int(value)
        else:
            dims[key] = int(value)
    return DimAssignment(dims, default)


def run(cfg: JobConfig) -> ExitReport:
    report = ExitReport()
    problems = cfg.validate()
    if problems:
        raise ValueError("; ".join(problems))
    ctx = LoweringContext({**DEFAULT_ATOM_MAP, **cfg.atom_map}) if cfg.atom_map \
        else LoweringContext()
    dims = _parse_dims(cfg.check_semantics) if cfg.check_semantics else None

    entries: list[tuple[str, object]] = []
    for path in cfg.inputs:
        data = Path(path).read_bytes()
        entries.extend(read_derivations(data, cfg.fmt, collect_errors=True))

    for ident, raw in entries:
        report.total += 1
        try:
            if isinstance(raw, IngestError):
                raise raw
            outputs, stats = _convert_one(ident, raw, cfg, ctx, dims)
        except (IngestError, ValueError) as exc:
            report.failed += 1
            report.failures.append((ident, str(exc)))
            continue
        report.converted += 1
        report.outputs.update(outputs)
        if stats is not None:
            report.stats_rows.append(stats)
    return report


def _convert_one(ident, raw, cfg: JobConfig, ctx, dims):
    derivation = ingest_tree(raw)
    term = bc.lower_derivation(derivation)
    diagram = lower(term, ctx)
    before = diagram
    if cfg.planarize:
        problems: list[str] = []
        diagram = planarize_diagram(diagram, problems=problems)
        if problems:
            raise ValueError("; ".join(problems))
    if cfg.normalize:
        diagram = normalize_diagram(diagram)
    if dims is not None:
        seeds = [cfg.seed + i for i in range(5)]
        if not semantically_equal(before, diagram, dims, seeds):
            raise ValueError("semantic check failed: rewrite changed the tensor")

    outputs: dict[str, str | bytes] = {}
    if "biclosed" in cfg.emit:
        outputs[f"{ident}.biclosed"] = bc.to_sexpr(term) + "\n"
    if "diagram" in cfg.emit:
        outputs[f"{ident}.diagram.json"] = diagram_to_json(diagram) + "\n"
    if "tikz" in cfg.emit:
        outputs[f"{ident}.tikz"] = render_tikz(diagram)
    if "svg" in cfg.emit:
        outputs[f"{ident}.svg"] = render_svg(diagram)

    stats = None
    if "stats" in cfg.emit:
        hist = ";".join(f"{k}={v}" for k, v in rule_histogram(derivation).items())
        stats = (
            ident, len(leaves(derivation)), hist or "-",
            diagram.count(Cup), diagram.count(Cap),
            before.count(Swap), diagram.count(Swap), len(diagram.layers),
        )
    return outputs, stats


def write_report(report: ExitReport, cfg: JobConfig, out=None) -> None:
    if out is None:
        out = sys.stdout
    if cfg.out_dir:
        out_dir = Path(cfg.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, payload in sorted(report.outputs.items()):
            target = out_dir / name
            if isinstance(payload, bytes):
                target.write_bytes(payload)
            else:
                target.write_text(payload, encoding="utf-8")
        if report.stats_rows:
            lines = ["\t".join(STATS_COLUMNS)]
            lines += ["\t".join(str(x) for x in row) for row in report.stats_rows]
            (out_dir / "stats.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        for name, payload in sorted(report.outputs.items()):
            if isinstance(payload, str):
                out.write(f"--- {name}\n{payload}")
        if report.stats_rows:
            out.write("\t".join(STATS_COLUMNS) + "\n")
            for row in report.stats_rows:
                out.write("\t".join(str(x) for x in row) + "\n")
    for ident, message in report.failures:
        out.write(f"FAIL {ident}: {message}\n")
    out.write(report.summary() + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="discoccg",
        description="Convert CCG derivations into DisCoCat string diagrams.")
    ap.add_argument("--in", dest="inputs", nargs="+", required=True,
                    help="input file(s) with serialized derivations")
    ap.add_argument("--format", dest="fmt", choices=("json", "ccgbank"), default="json")
    ap.add_argument("--out-dir", default=None)
    ap.add_argument("--emit", default="diagram",
                    help="comma-separated subset of " + ",".join(EMITS))
    ap.add_argument("--normalize", action="store_true",
                    help="snake removal and canonical layer order")
    ap.add_argument("--planarize", action="store_true",
                    help="remove crossed-composition swaps by state relocation")
    ap.add_argument("--check-semantics", default=None, metavar="DIMS",
                    help='verify rewrites numerically, e.g. "n=2,s=2" or "*=3"')
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--strict", action="store_true",
                    help="exit nonzero when any sentence fails")
    ap.add_argument("--atom-map", action="append", default=[], metavar="ATOM=base",
                    help="override an atom's wire base (repeatable)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    atom_map = {}
    for entry in args.atom_map:
        key, sep, value = entry.partition("=")
        if not sep or not key or not value:
            print(f"bad --atom-map entry {entry!r}", file=sys.stderr)
            return 2
        atom_map[key] = value
    cfg = JobConfig(
        inputs=args.inputs, fmt=args.fmt, out_dir=args.out_dir,
        emit=tuple(e.strip() for e in args.emit.split(",") if e.strip()),
        normalize=args.normalize, planarize=args.planarize,
        check_semantics=args.check_semantics, seed=args.seed,
        strict=args.strict, atom_map=atom_map)
    try:
        report = run(cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    write_report(report, cfg)
    if cfg.strict and report.failed:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
