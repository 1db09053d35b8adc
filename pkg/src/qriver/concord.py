"""Compare LLS windows with river turn runs, up to shift and reversal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from qriver.errors import InsufficientOverlap
from qriver.forms import BinaryQuadraticForm
from qriver.sail import LLSWindow, lls_window
from qriver.topograph import RiverPath, river_segment, turn_runs

DEFAULT_MIN_OVERLAP = 4


@dataclass(frozen=True)
class MatchReport:
    """Outcome of an alignment. ``b[i]`` sits against ``a[i + offset]`` (after reversing ``b`` if ``reversed``)."""

    matched: bool
    offset: int
    reversed: bool
    compared_length: int
    first_mismatch: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        return {
            "matched": self.matched,
            "offset": self.offset,
            "reversed": self.reversed,
            "compared_length": self.compared_length,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
        }


def _try(a: Sequence[int], b: Sequence[int], offset: int) -> tuple[int, Optional[tuple[int, int]]]:
    """Interior terms compared and the first mismatching ``(index in a, index in b)``, if any."""
    last = len(b) - 1
    interior = 0
    for i in range(max(0, -offset), min(len(b), len(a) - offset)):
        j = i + offset
        if i in (0, last):
            # boundary runs may be truncated: only a lower bound is known
            if a[j] < b[i]:
                return interior, (j, i)
        elif a[j] != b[i]:
            return interior, (j, i)
        else:
            interior += 1
    return interior, None


def align(a: Sequence[int], b: Sequence[int], min_overlap: int = DEFAULT_MIN_OVERLAP) -> MatchReport:
    """Find a shift (possibly of reversed ``b``) under which the windows agree.

    All terms of ``a`` are complete. The first and last terms of ``b`` are
    treated as truncated and only need to be ``<=`` their counterpart. A match
    needs at least ``min_overlap`` interior terms of ``b`` compared exactly.
    """
    if not a or not b:
        raise InsufficientOverlap("both windows must be nonempty")
    if len(a) < min_overlap or len(b) - 2 < min_overlap:
        raise InsufficientOverlap(
            f"windows of length {len(a)} and {len(b)} cannot give {min_overlap} interior comparisons"
        )
    best: Optional[tuple] = None
    closest: Optional[tuple] = None
    for rev in (False, True):
        bb = list(reversed(b)) if rev else list(b)
        for offset in range(-(len(b) - 1), len(a)):
            interior, mismatch = _try(a, bb, offset)
            if mismatch is None and interior >= min_overlap:
                rank = (-interior, rev, abs(offset), -offset)
                if best is None or rank < best[0]:
                    best = (rank, MatchReport(True, offset, rev, interior))
            elif mismatch is not None:
                rank = (-interior, rev, abs(offset), -offset)
                if closest is None or rank < closest[0]:
                    closest = (rank, MatchReport(False, offset, rev, interior, mismatch))
    if best is not None:
        return best[1]
    if closest is not None:
        return closest[1]
    return MatchReport(False, 0, False, 0)


@dataclass(frozen=True)
class TheoremEvidence:
    lls: LLSWindow
    river: RiverPath
    runs: list[int]
    report: MatchReport


def theorem_evidence(
    form: BinaryQuadraticForm, window: int = 8, min_overlap: int = DEFAULT_MIN_OVERLAP
) -> TheoremEvidence:
    """LLS window of ``window`` terms per side, a river stretch long enough to cover it, and their alignment."""
    lls = lls_window(form, window, window)
    terms = lls.terms
    margin = max(terms) + 2
    n_back = sum(terms[:window]) + margin
    n_fwd = sum(terms[window:]) + margin
    path = river_segment(form, n_back, n_fwd)
    runs = turn_runs(path.turns)
    return TheoremEvidence(lls, path, runs, align(terms, runs, min_overlap))


def check_theorem(form: BinaryQuadraticForm, window: int = 8, min_overlap: int = DEFAULT_MIN_OVERLAP) -> MatchReport:
    return theorem_evidence(form, window, min_overlap).report
