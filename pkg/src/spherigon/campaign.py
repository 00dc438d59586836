"""Verification campaigns: generate, check, aggregate, and serialize.

A campaign is deterministic in (specs, trials, checks, seed, tolerance);
wall time is the only run-dependent field. Failed checks are recorded with
the full polygon for replay and re-verified at a tightened tolerance with
the sampling oracle before being flagged genuine: a violation of a proven
inequality is a bug until demonstrated otherwise.
"""

from __future__ import annotations

import dataclasses
import io
import json
import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .analysis import analyze, find_intersections
from .checks import CHECK_IDS, TheoremCheck, run_checks
from .errors import GeometryError
from .generators import GeneratorSpec, generate
from .oracles import oracle_crossings
from .polygon import SpacePolygon, SphericalPolygon, polygon_from_obj, polygon_to_obj

REPLAY_TOL = 1e-15


@dataclass(frozen=True)
class TrialResult:
    spec_index: int
    trial: int
    family: str
    n: int
    report: Optional[dict]  # AnalysisReport.to_obj() or space-polygon counters
    checks: tuple[TheoremCheck, ...]
    error: Optional[str] = None

    def to_obj(self) -> dict:
        return {
            "spec_index": self.spec_index,
            "trial": self.trial,
            "family": self.family,
            "n": self.n,
            "report": self.report,
            "checks": [c.to_obj() for c in self.checks],
            "error": self.error,
        }

    @staticmethod
    def from_obj(obj: dict) -> "TrialResult":
        return TrialResult(
            spec_index=obj["spec_index"],
            trial=obj["trial"],
            family=obj["family"],
            n=obj["n"],
            report=obj["report"],
            checks=tuple(TheoremCheck.from_obj(c) for c in obj["checks"]),
            error=obj["error"],
        )


@dataclass(frozen=True)
class Violation:
    spec_index: int
    trial: int
    check: TheoremCheck
    polygon: dict  # polygon file object, for replay
    genuine: bool  # survived tightened tolerance and the sampling oracle

    def to_obj(self) -> dict:
        return {
            "spec_index": self.spec_index,
            "trial": self.trial,
            "check": self.check.to_obj(),
            "polygon": self.polygon,
            "genuine": self.genuine,
        }

    @staticmethod
    def from_obj(obj: dict) -> "Violation":
        return Violation(
            spec_index=obj["spec_index"],
            trial=obj["trial"],
            check=TheoremCheck.from_obj(obj["check"]),
            polygon=obj["polygon"],
            genuine=obj["genuine"],
        )


@dataclass(frozen=True)
class ReportDoc:
    config: dict
    results: tuple[TrialResult, ...]
    aggregates: dict
    violations: tuple[Violation, ...]
    wall_time: float

    def to_obj(self) -> dict:
        return {
            "config": self.config,
            "results": [r.to_obj() for r in self.results],
            "aggregates": self.aggregates,
            "violations": [v.to_obj() for v in self.violations],
            "wall_time": self.wall_time,
        }

    @staticmethod
    def from_obj(obj: dict) -> "ReportDoc":
        return ReportDoc(
            config=obj["config"],
            results=tuple(TrialResult.from_obj(r) for r in obj["results"]),
            aggregates=obj["aggregates"],
            violations=tuple(Violation.from_obj(v) for v in obj["violations"]),
            wall_time=obj["wall_time"],
        )


def derive_trial_seed(seed: int, spec_index: int, trial: int) -> int:
    ss = np.random.SeedSequence((seed, spec_index, trial))
    return int(ss.generate_state(1, np.uint64)[0])


def _replay_is_genuine(p, check: TheoremCheck, tol: float) -> bool:
    """Re-evaluate a failed check at tightened tolerance and cross-check the
    intersection counts with the sampling oracle."""
    try:
        replayed = run_checks(p, [check.check_id], REPLAY_TOL)
    except GeometryError:
        return False
    if not replayed or replayed[0].passed:
        return False
    if isinstance(p, SphericalPolygon):
        got = {(r.i, r.j, r.kind.value) for r in find_intersections(p, tol)}
        if got != oracle_crossings(p):
            return False
    return True


def run_campaign(
    specs: Iterable[GeneratorSpec],
    trials: int,
    which: Optional[Iterable[str]] = None,
    tol: float = 1e-12,
) -> ReportDoc:
    specs = list(specs)
    ids = tuple(which) if which is not None else CHECK_IDS
    t0 = time.perf_counter()
    results: list[TrialResult] = []
    violations: list[Violation] = []
    agg = {
        cid: {"evaluated": 0, "hypothesis_met": 0, "passed": 0, "violations": 0}
        for cid in ids
    }
    for si, spec in enumerate(specs):
        for t in range(trials):
            sub = dataclasses.replace(spec, seed=derive_trial_seed(spec.seed, si, t))
            try:
                p = generate(sub)
                checks = tuple(run_checks(p, ids, tol))
            except GeometryError as exc:
                results.append(
                    TrialResult(si, t, spec.family, spec.n, None, (), f"{type(exc).__name__}: {exc}")
                )
                continue
            if isinstance(p, SphericalPolygon):
                rep_obj = analyze(p, tol).to_obj()
            else:
                rep_obj = None
            results.append(TrialResult(si, t, spec.family, spec.n, rep_obj, checks))
            for c in checks:
                agg[c.check_id]["evaluated"] += 1
                agg[c.check_id]["hypothesis_met"] += int(c.hypothesis_met)
                agg[c.check_id]["passed"] += int(c.passed)
                if not c.passed:
                    agg[c.check_id]["violations"] += 1
                    violations.append(
                        Violation(
                            spec_index=si,
                            trial=t,
                            check=c,
                            polygon=polygon_to_obj(p),
                            genuine=_replay_is_genuine(p, c, tol),
                        )
                    )
    config = {
        "specs": [
            {"family": s.family, "n": s.n, "seed": s.seed, "max_rejections": s.max_rejections}
            for s in specs
        ],
        "trials": trials,
        "checks": list(ids),
        "tol": tol,
    }
    return ReportDoc(
        config=config,
        results=tuple(results),
        aggregates=agg,
        violations=tuple(violations),
        wall_time=time.perf_counter() - t0,
    )


def replay_polygon(obj: dict, which, tol: float = 1e-12) -> list[TheoremCheck]:
    """Re-run checks on a recorded polygon object."""
    return run_checks(polygon_from_obj(obj), which, tol)


def emit_report(doc: ReportDoc, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(doc.to_obj(), indent=2)
    if fmt == "csv":
        out = io.StringIO()
        ids = doc.config["checks"]
        header = ["spec_index", "trial", "family", "n", "error"]
        header += ["I", "Dplus", "Dminus", "S"]
        header += [f"{cid}_pass" for cid in ids]
        out.write(",".join(header) + "\n")
        for r in doc.results:
            row = [str(r.spec_index), str(r.trial), r.family, str(r.n), r.error or ""]
            rep = r.report or {}
            row += [str(rep.get(k, "")) for k in ("I", "Dplus", "Dminus", "S")]
            by_id = {c.check_id: c for c in r.checks}
            row += [
                str(int(by_id[cid].passed)) if cid in by_id else "" for cid in ids
            ]
            out.write(",".join(row) + "\n")
        return out.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> ReportDoc:
    return ReportDoc.from_obj(json.loads(text))


def exit_code(doc: ReportDoc) -> int:
    return 2 if doc.violations else 0
