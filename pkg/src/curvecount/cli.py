"""Command line front end.

Exit codes: 0 ok, 1 verdict false, 2 bad input, 3 consistency failure,
4 reconstruction failure, 5 cone failure (not a counting curve, unpointed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import fixture_path
from .cone import MatchingMatrix, WeightError, build_matrix, is_counting_curve, peripheral_vectors, rank
from .enumeration import NotCountingCurve, trace_components
from .reconstruct import (
    ReconstructionError,
    UnpointedCone,
    check_stanley,
    reciprocity_from_sequence,
    stanley_points,
)
from .ribbon import RibbonGraph, is_ribbon_document, parse_ribbon, ribbon_series
from .series import SparseSeries, compute_f_direct, compute_f_division, compute_g, specialize
from .surface import SurfaceError, Triangulation, load_surface, validate

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CONSISTENCY, EXIT_RECONSTRUCTION, EXIT_CONE = 0, 1, 2, 3, 4, 5

EVIDENCE_NOTE = "per-weight specializations are evidence for the multivariate identity, not a certificate"


class CliError(Exception):
    def __init__(self, code: int, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


@dataclass
class RunConfig:
    command: str
    path: str
    degree: int = 14
    weights: list[tuple[int, ...]] = field(default_factory=list)
    seed: int = 0
    format: str = "human"
    out: str | None = None
    essential: bool = False
    use_g: bool = False

    def __post_init__(self):
        if self.degree < 0:
            raise CliError(EXIT_INPUT, "--degree must be nonnegative")
        for w in self.weights:
            if any(v < 0 for v in w):
                raise CliError(EXIT_INPUT, "weights must be nonnegative")


def resolve(path: str) -> Path:
    """Filesystem path, falling back to the shipped fixtures (``fixtures/s11.json`` or ``s11``)."""
    p = Path(path)
    if p.exists():
        return p
    name = p.name if p.suffix else p.name + ".json"
    q = fixture_path(name)
    if q.is_file():
        return Path(str(q))
    raise CliError(EXIT_INPUT, f"no such file: {path}")


def read_text(path: str) -> str:
    return resolve(path).read_text()


def load_any(path: str) -> Triangulation | RibbonGraph:
    text = read_text(path)
    try:
        if is_ribbon_document(text):
            return parse_ribbon(text)
        return load_surface(text)
    except SurfaceError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc


def load_matrix(path: str) -> tuple[MatchingMatrix, list[int] | None]:
    try:
        doc = json.loads(read_text(path))
        m = MatchingMatrix.from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_INPUT, f"bad matrix document: {exc}") from exc
    w = doc.get("weights")
    return m, [int(v) for v in w] if w is not None else None


def parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from exc


def seeded_weights(m: int, seed: int, count: int = 2) -> list[tuple[int, ...]]:
    """``count`` distinct non-constant weight vectors drawn from {1, 2}, or {1, 2, 3} for one variable."""
    rng = random.Random(seed)
    pool = (1, 2) if 2**m > count else (1, 2, 3)
    out: list[tuple[int, ...]] = []
    seen = {(1,) * m}
    while len(out) < count:
        w = tuple(rng.choice(pool) for _ in range(m))
        if w not in seen and (m == 1 or len(set(w)) > 1):
            seen.add(w)
            out.append(w)
    return out


# -- commands ---------------------------------------------------------------------


def _surface_only(obj, what: str) -> Triangulation:
    if isinstance(obj, RibbonGraph):
        if obj.is_annulus:
            raise CliError(EXIT_INPUT, f"{what}: the annulus has no ideal triangulation")
        return obj.triangulation()
    return obj


def cmd_validate(cfg: RunConfig) -> tuple[int, dict]:
    obj = load_any(cfg.path)
    if isinstance(obj, RibbonGraph):
        body = {"name": obj.name, "ribbon": list(obj.rotation), "handles": len(obj.handles)}
        if obj.is_annulus:
            body.update({"ok": True, "genus": 0, "punctures": 2, "N": 0, "violations": [], "counting": True})
            return EXIT_OK, body
        obj = obj.triangulation()
    else:
        body = {"name": obj.name}
    report = validate(obj)
    body.update(report.as_dict())
    body["counting"] = is_counting_curve(obj) if report.ok else None
    ok = report.ok and body["counting"]
    return (EXIT_OK if ok else EXIT_INPUT), body


def cmd_matrix(cfg: RunConfig) -> tuple[int, dict]:
    t = _surface_only(load_any(cfg.path), "matrix")
    m = build_matrix(t)
    deltas = peripheral_vectors(t)
    total = [sum(d.corners[c] for d in deltas) for c in range(t.num_half_edges)]
    ok_sum = all(v == 1 for v in total)
    ok_kernel = all(not any(m.apply(d.corners)) for d in deltas)
    body = {
        "name": t.name,
        "shape": list(m.shape),
        "row_labels": list(m.row_labels),
        "col_labels": list(m.col_labels),
        "rows": [list(r) for r in m.rows],
        "rank": rank(m),
        "N": t.N,
        "rank_is_3N": rank(m) == 3 * t.N,
        "deltas": [
            {"puncture": d.puncture, "corners": list(d.corners), "weights": list(d.weights), "alpha": list(d.alpha)}
            for d in deltas
        ],
        "delta_sum_all_ones": ok_sum,
        "deltas_in_kernel": ok_kernel,
    }
    code = EXIT_OK if ok_sum and ok_kernel and body["rank_is_3N"] else EXIT_CONSISTENCY
    return code, body


def _first_difference(a: SparseSeries, b: SparseSeries):
    for alpha in sorted(set(a.terms) | set(b.terms)):
        if a[alpha] != b[alpha]:
            return alpha
    return None


def _series_of(obj, degree: int, essential: bool, check: bool) -> SparseSeries:
    if isinstance(obj, RibbonGraph):
        return ribbon_series(obj, degree, essential)
    g = compute_g(obj, degree)
    if not essential:
        return g
    f = compute_f_division(g, peripheral_vectors(obj), degree)
    if check:
        direct = compute_f_direct(obj, degree)
        alpha = _first_difference(f, direct)
        if alpha is not None:
            raise CliError(EXIT_CONSISTENCY, f"direct and division counts differ at alpha={list(alpha)}",
                           alpha=list(alpha), direct=direct[alpha], division=f[alpha])
    return f


def cmd_series(cfg: RunConfig) -> tuple[int, dict]:
    obj = load_any(cfg.path)
    s = _series_of(obj, cfg.degree, cfg.essential, check=cfg.essential)
    body = {"name": obj.name, "series": "f" if cfg.essential else "g"}
    body.update(s.to_dict())
    if cfg.essential:
        body["dual_method_check"] = True
    return EXIT_OK, body


def cmd_reciprocity(cfg: RunConfig) -> tuple[int, dict]:
    obj = load_any(cfg.path)
    s = _series_of(obj, cfg.degree, not cfg.use_g, check=False)
    m = len(s.variables)
    weights = list(cfg.weights) or [(1,) * m] + seeded_weights(m, cfg.seed)
    verdicts = []
    code = EXIT_OK
    for w in weights:
        if len(w) != m:
            raise CliError(EXIT_INPUT, f"expected {m} weights, got {len(w)}")
        if any(v <= 0 for v in w):
            raise CliError(EXIT_INPUT, "specialization weights must be positive")
        seq = specialize(s, w)
        v = reciprocity_from_sequence(seq, weights=w)
        d = v.as_dict()
        d["coefficients"] = seq
        verdicts.append(d)
        if v.function is None:
            code = max(code, EXIT_RECONSTRUCTION)
        elif not v.holds and code == EXIT_OK:
            code = EXIT_FALSE
    body = {
        "name": obj.name,
        "series": "g" if cfg.use_g else "f",
        "variables": list(s.variables),
        "degree": cfg.degree,
        "seed": cfg.seed,
        "verdicts": verdicts,
        "all_hold": all(v["reciprocal"] for v in verdicts),
        "note": EVIDENCE_NOTE,
    }
    return code, body


def cmd_stanley(cfg: RunConfig) -> tuple[int, dict]:
    m, doc_weights = load_matrix(cfg.path)
    ncols = m.shape[1]
    w = list(cfg.weights[0]) if cfg.weights else (doc_weights or [1] * ncols)
    try:
        k = stanley_points(m.rows, cfg.degree, w)
        ki = stanley_points(m.rows, cfg.degree, w, interior=True)
    except UnpointedCone as exc:
        raise CliError(EXIT_CONE, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    r = rank(m)
    body = {"shape": [m.shape[0], ncols], "rank": r, "weights": w, "degree": cfg.degree, "k": k, "k_interior": ki,
            "expected_sign": (-1) ** (ncols - r)}
    if not any(ki):
        body.update({"status": "not applicable", "reason": "interior series vanishes on the computed range"})
        return EXIT_OK, body
    try:
        v = check_stanley(k, ki, ncols, r)
    except ReconstructionError as exc:
        raise CliError(EXIT_RECONSTRUCTION, f"reconstruction failed: {exc}", **body) from exc
    body.update({"status": "checked", "holds": v.holds, "k_rational": v.function.as_dict(),
                 "k_string": str(v.function), "fit_window": v.fit_window, "validated_to": v.validated_to,
                 "witness": v.witness})
    return (EXIT_OK if v.holds else EXIT_FALSE), body


def cmd_trace(cfg: RunConfig) -> tuple[int, dict]:
    t = _surface_only(load_any(cfg.path), "trace")
    if len(cfg.weights) != 1:
        raise CliError(EXIT_INPUT, "trace needs exactly one --weights vector (one entry per edge)")
    try:
        comps = trace_components(t, cfg.weights[0])
    except WeightError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    body = {"name": t.name, "edges": list(t.edge_names), "weights": list(cfg.weights[0]),
            "components": [c.as_dict() for c in comps]}
    body["essential"] = not any(c.peripheral for c in comps)
    return EXIT_OK, body


COMMANDS = {
    "validate": cmd_validate,
    "matrix": cmd_matrix,
    "series": cmd_series,
    "reciprocity": cmd_reciprocity,
    "stanley": cmd_stanley,
    "trace": cmd_trace,
}


# -- formatting -------------------------------------------------------------------


def _human(command: str, code: int, body: dict) -> str:
    if "error" in body:
        return f"error: {body['error']}"
    lines = []
    if command == "series":
        lines.append(f"{body['name']}: {body['series']} over {body['variables']} through degree {body['truncation']}")
        for t in body["terms"]:
            lines.append(f"  {tuple(t['alpha'])}: {t['coeff']}")
    elif command == "reciprocity":
        lines.append(f"{body['name']}: reciprocity of {body['series']} at degree {body['degree']}")
        for v in body["verdicts"]:
            rat = v["rational"]
            fn = "unreconstructed" if rat is None else f"num={rat['num']} den={rat['den']}"
            status = "holds" if v["reciprocal"] else "fails"
            lines.append(f"  weights {tuple(v['weights'])}: {status}; {fn}" + (f"; {v['witness']}" if v["witness"] else ""))
        lines.append(f"  note: {body['note']}")
    elif command == "matrix":
        lines.append(f"{body['name']}: Phi {body['shape'][0]}x{body['shape'][1]}, rank {body['rank']} (3N = {3 * body['N']})")
        width = max(len(x) for x in body["row_labels"])
        for lab, row in zip(body["row_labels"], body["rows"]):
            lines.append(f"  {lab:>{width}}: " + " ".join(f"{v:2d}" for v in row))
        for d in body["deltas"]:
            lines.append(f"  delta_{d['puncture']}: weights {d['weights']} alpha {d['alpha']}")
        lines.append(f"  sum of deltas is all-ones: {body['delta_sum_all_ones']}")
    elif command == "trace":
        lines.append(f"{body['name']}: weights {body['weights']} on edges {body['edges']}")
        for i, c in enumerate(body["components"]):
            kind = f"peripheral (puncture {c['puncture']})" if c["peripheral"] else "essential"
            lines.append(f"  component {i}: {kind}, word {' '.join(c['word']) or '(empty)'}, weights {c['weights']}")
    else:
        for key, value in body.items():
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvecount", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("validate", "parse and validate a surface document"),
        ("matrix", "matching matrix, rank and peripheral vectors"),
        ("series", "truncated counting series g (or f with --essential)"),
        ("reciprocity", "reciprocity verdicts for univariate specializations of f"),
        ("stanley", "signed reciprocity between a cone and its interior"),
        ("trace", "trace the components of one edge-weight vector"),
    ]:
        s = sub.add_parser(name, help=help_text)
        s.add_argument("path", help="document path or shipped fixture name")
        s.add_argument("--degree", type=int, default=14 if name in ("reciprocity", "stanley") else 6)
        s.add_argument("--weights", type=parse_weights, action="append", default=[], metavar="W1,W2,...")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--format", choices=("human", "json"), default="human")
        s.add_argument("--out", default=None, metavar="PATH")
        s.add_argument("--essential", action="store_true", help="count essential multicurves only")
        s.add_argument("--use-g", action="store_true", help="debug: test g instead of f")
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        cfg = RunConfig(args.command, args.path, args.degree, args.weights, args.seed, args.format, args.out,
                        args.essential, args.use_g)
        code, body = COMMANDS[args.command](cfg)
    except CliError as exc:
        code, body = exc.code, {"error": str(exc), **exc.extra}
    except (SurfaceError, WeightError) as exc:
        code, body = EXIT_INPUT, {"error": str(exc)}
    except NotCountingCurve as exc:
        code, body = EXIT_CONE, {"error": str(exc)}
    except UnpointedCone as exc:
        code, body = EXIT_CONE, {"error": str(exc)}
    body = {"command": args.command, "exit_code": code, **body}
    text = json.dumps(body, indent=2) if fmt == "json" else _human(args.command, code, body)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
