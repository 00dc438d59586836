"""Theorem-inequality checks with hypothesis gating.

A check passes when its hypotheses are unmet (vacuous) or when lhs >= rhs.
COUNT_LEMMAS folds the four counting bounds into one check whose lhs is the
minimal margin (count minus bound) over the bounds whose hypotheses apply;
MONOTONE_DELETE's lhs is the minimal inflection drop over good-vertex
deletions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .analysis import analyze, analyze_space_polygon, classify_vertices, count_inflections
from .polygon import SpacePolygon, SphericalPolygon, check_general_position, delete_vertex
from .sphere_core import DEGENERACY_TOL

CHECK_IDS = (
    "SEGRE4",
    "MOBIUS6",
    "SPECIAL6",
    "GEN_D6",
    "GEN_DPLUS4",
    "GEN_SYM6",
    "SPACE_TF6",
    "SPACE_TF4",
    "COUNT_LEMMAS",
    "MONOTONE_DELETE",
)

SPACE_CHECKS = ("SPACE_TF6", "SPACE_TF4")


@dataclass(frozen=True)
class TheoremCheck:
    check_id: str
    hypothesis_met: bool
    lhs: int
    rhs: int
    passed: bool

    def to_obj(self) -> dict:
        return {
            "id": self.check_id,
            "hypothesis_met": self.hypothesis_met,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
        }

    @staticmethod
    def from_obj(obj: dict) -> "TheoremCheck":
        return TheoremCheck(
            check_id=obj["id"],
            hypothesis_met=obj["hypothesis_met"],
            lhs=obj["lhs"],
            rhs=obj["rhs"],
            passed=obj["pass"],
        )


def _gated(check_id: str, hyp: bool, lhs: int, rhs: int) -> TheoremCheck:
    return TheoremCheck(
        check_id=check_id,
        hypothesis_met=hyp,
        lhs=lhs,
        rhs=rhs,
        passed=(not hyp) or lhs >= rhs,
    )


def run_checks(
    p: SphericalPolygon | SpacePolygon,
    which: Optional[Iterable[str]] = None,
    tol: float = DEGENERACY_TOL,
) -> list[TheoremCheck]:
    ids: Sequence[str] = tuple(which) if which is not None else CHECK_IDS
    for cid in ids:
        if cid not in CHECK_IDS:
            raise ValueError(f"unknown check id {cid!r}")

    if isinstance(p, SpacePolygon):
        f = tp = tm = 0
        needs_space = any(c in SPACE_CHECKS for c in ids)
        if needs_space and p.n >= 6:
            f, tp, tm = analyze_space_polygon(p, tol)
        out = []
        for cid in ids:
            if cid == "SPACE_TF6":
                out.append(_gated(cid, p.n >= 6, 2 * (tp + tm) + f, 6))
            elif cid == "SPACE_TF4":
                out.append(_gated(cid, p.n >= 6, 2 * tp + f, 4))
            else:
                out.append(_gated(cid, False, 0, 0))
        return out

    q = p
    rep = analyze(q, tol)
    strict_gp = check_general_position(q, tol).ok
    n = q.n
    classes = classify_vertices(q, tol) if "MONOTONE_DELETE" in ids and n >= 5 else None

    out = []
    for cid in ids:
        if cid == "SEGRE4":
            out.append(_gated(cid, rep.balanced and rep.simple and n >= 4, rep.inflections, 4))
        elif cid == "MOBIUS6":
            hyp = rep.symmetric and rep.balanced and rep.simple and n >= 6
            out.append(_gated(cid, hyp, rep.inflections, 6))
        elif cid == "SPECIAL6":
            hyp = rep.balanced and rep.d == 0 and n >= 6
            out.append(_gated(cid, hyp, rep.inflections, 6))
        elif cid == "GEN_D6":
            out.append(_gated(cid, rep.balanced and n >= 6, 2 * rep.d + rep.inflections, 6))
        elif cid == "GEN_DPLUS4":
            out.append(_gated(cid, rep.balanced and n >= 4, 2 * rep.dplus + rep.inflections, 4))
        elif cid == "GEN_SYM6":
            hyp = rep.symmetric and rep.balanced and n >= 6
            out.append(_gated(cid, hyp, 2 * rep.dplus + rep.inflections, 6))
        elif cid in SPACE_CHECKS:
            out.append(_gated(cid, False, 0, 0))
        elif cid == "COUNT_LEMMAS":
            margins = []
            nonessential = n - rep.ess_count
            # nonessential >= n-3: balanced sets, n >= 5, strict general
            # position (antipodal pairs defeat the lemma).
            if rep.balanced and strict_gp and n >= 5:
                margins.append(nonessential - (n - 3))
            # good >= 4: balanced simple polygons.
            if rep.balanced and rep.simple and n >= 4:
                margins.append(rep.good_count - 4)
            # excellent >= 2: balanced without any intersections.
            if rep.balanced and rep.d == 0 and strict_gp and n >= 6:
                margins.append(rep.exc_count - 2)
            # good >= 3: simple polygons inside a closed hemisphere.
            if (not rep.balanced) and rep.simple and n >= 4:
                margins.append(rep.good_count - 3)
            hyp = bool(margins)
            out.append(_gated(cid, hyp, min(margins) if margins else 0, 0))
        elif cid == "MONOTONE_DELETE":
            hyp = rep.simple and strict_gp and n >= 5 and classes is not None
            margin = 0
            if hyp:
                drops = [
                    rep.inflections - count_inflections(delete_vertex(q, i), tol)
                    for i, c in enumerate(classes)
                    if c.good
                ]
                hyp = bool(drops)
                margin = min(drops) if drops else 0
            out.append(_gated(cid, hyp, margin, 0))
    return out
