"""Campaign orchestration for the index-vs-secant-rank experiments.

Each campaign sweeps cells (a geometry, a degree d, and either a
witness size s or a general center), runs seed-derived trials over two
primes, and aggregates per-cell statistics.  The campaigns:

  baseline        unprojected elliptic curve; expect index = d - 3
  thm12           centers with a secant-rank-s witness on an elliptic
                  curve; expect index = s - 3 for generic centers
  thm13           uniformly random centers; expect index = ceil(d/2) - 3
  thm11-scan      witness centers, ceiling check only (index <= s - 3)
  rnc-check       rational normal curve centers; index = s - 3 must hold
                  in every single trial (the end-to-end pipeline oracle)
  semicontinuity  distribution of the index over many rank-s centers;
                  the max must be s - 3 and must be attained by a majority
  veronese        cubic Veronese surface: general center -> index 1,
                  three-point center -> index 0

Two-prime protocol: every trial is computed independently at the first
two primes.  Agreement yields the reported index; disagreement pulls in
a third prime, reports the maximum (reduction mod p can only shrink the
index), and marks the trial "flagged", which is never averaged away.
Trials whose Hilbert check fails after a few fresh-seed retries are
marked "degenerate" and never counted as pass or fail.

Seed split: the generator for (campaign, d, s, trial, attempt, prime)
is PCG64 seeded with SeedSequence([seed, kind, d, s, trial, attempt,
prime]), so any single trial can be replayed from its record.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .curves import EllipticCurve, PointSamplingError
from .geometry import (
    DegenerateSampleError,
    default_sample_size,
    embed_elliptic,
    make_center,
    make_general_center,
    project,
    rnc_points,
    source_order,
    veronese_points,
)
from .gfp import DEFAULT_PRIMES, TIEBREAK_PRIME, Fp
from .gradedring import HilbertCheckError, interpolate
from .koszul import IndexReport, gl_index

_DEGENERACY_ERRORS = (HilbertCheckError, DegenerateSampleError, PointSamplingError)

# stable small codes so seeds differ across campaign kinds
_KIND_CODES = {
    "baseline": 1,
    "elliptic-witness": 2,
    "elliptic-general": 3,
    "rational-witness": 4,
    "veronese-general": 5,
    "veronese-witness": 6,
    "rational-general": 7,
}

_RETRY_ATTEMPTS = 6


class CeilingViolationError(AssertionError):
    """A computed index exceeded the secant-rank ceiling; build-stopping."""


@dataclass
class TrialRecord:
    """One pipeline run at one prime, plus the verdict of its logical trial."""

    campaign: str
    d: int | None
    s: int | None  # None = general center
    prime: int
    seed: list
    hilbert: list | None
    betti: list | None  # [(i, j, value)] strand entries that were computed
    index: int | None
    expected: int | None
    status: str  # pass | fail | degenerate | flagged
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "s": "general" if self.s is None else self.s,
            "prime": self.prime,
            "seed": list(self.seed),
            "hilbert": None if self.hilbert is None else [list(h) for h in self.hilbert],
            "betti": None if self.betti is None else [list(b) for b in self.betti],
            "index": self.index,
            "expected": self.expected,
            "status": self.status,
        }


@dataclass
class CellSummary:
    """Aggregate over the logical trials of one (d, s) cell."""

    d: int | None
    s: int | None
    expected: int | None
    criterion: str  # exact | generic | ceiling | semicontinuity
    trials: int = 0
    passes: int = 0
    fails: int = 0
    degenerates: int = 0
    flagged: int = 0
    max_index: int | None = None
    min_index: int | None = None
    agreements: int = 0
    disagreements: int = 0
    distribution: dict = field(default_factory=dict)  # final index -> count

    @property
    def evaluated(self) -> int:
        return self.passes + self.fails

    @property
    def agreement_rate(self) -> float | None:
        n = self.agreements + self.disagreements
        return None if n == 0 else self.agreements / n

    @property
    def degenerate_only(self) -> bool:
        return not self.passed and self.fails == 0 and self.flagged == 0 and (
            self.degenerates > 0
        )

    @property
    def passed(self) -> bool:
        if self.criterion == "ceiling":
            return self.evaluated > 0 or self.trials == 0
        if self.evaluated == 0:
            return False
        if self.criterion == "exact":
            return self.fails == 0 and self.flagged == 0
        if self.criterion == "generic":
            return (
                self.passes / self.evaluated >= 0.8 and self.max_index == self.expected
            )
        if self.criterion == "semicontinuity":
            nondeg = sum(self.distribution.values())
            at_max = self.distribution.get(self.expected, 0)
            return self.max_index == self.expected and at_max * 2 > nondeg
        raise ValueError(f"unknown criterion {self.criterion}")

    def label(self) -> str:
        s_label = "general" if self.s is None else str(self.s)
        if self.d is None:
            return f"s={s_label}"
        return f"d={self.d} s={s_label}"


@dataclass
class CampaignSummary:
    """All records and cell aggregates of one campaign run."""

    command: str
    config: dict
    cells: list
    records: list

    @property
    def passed(self) -> bool:
        return all(cell.passed for cell in self.cells)

    @property
    def degenerate_only(self) -> bool:
        return not self.passed and all(
            cell.passed or cell.degenerate_only for cell in self.cells
        )

    def totals(self) -> dict:
        passes = sum(c.passes for c in self.cells)
        fails = sum(c.fails for c in self.cells)
        degenerate = sum(c.degenerates for c in self.cells)
        flagged = sum(c.flagged for c in self.cells)
        max_index = None
        indices = [c.max_index for c in self.cells if c.max_index is not None]
        if indices:
            max_index = max(indices)
        agree = sum(c.agreements for c in self.cells)
        disagree = sum(c.disagreements for c in self.cells)
        agreement = None if agree + disagree == 0 else round(agree / (agree + disagree), 4)
        return {
            "passes": passes,
            "fails": fails,
            "degenerate": degenerate,
            "flagged": flagged,
            "max_index": max_index,
            "agreement": agreement,
        }


# -- single pipeline runs -----------------------------------------------------


def _rng_from(entropy) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(entropy))))


def _single_index(kind: str, d: int | None, s: int | None, prime: int, entropy,
                  n_multiplier: int, i_stop: int | None) -> IndexReport:
    """Build the geometry for one trial and compute its index report."""
    fp = Fp(prime)
    rng = _rng_from(entropy)
    if kind == "baseline":
        curve = EllipticCurve.random(fp, rng)
        n = default_sample_size("elliptic", d, n_multiplier)
        target = embed_elliptic(curve, d, n, rng)
    else:
        if kind in ("elliptic-witness", "elliptic-general"):
            curve = EllipticCurve.random(fp, rng)
            pts = embed_elliptic(
                curve, d, default_sample_size("elliptic", d, n_multiplier), rng
            )
        elif kind in ("rational-witness", "rational-general"):
            pts = rnc_points(fp, d, default_sample_size("rational", d, n_multiplier), rng)
        elif kind in ("veronese-general", "veronese-witness"):
            pts = veronese_points(fp, default_sample_size("veronese", None, n_multiplier), rng)
        else:
            raise ValueError(f"unknown campaign kind {kind!r}")
        if s is None:
            center = make_general_center(pts, rng)
        else:
            center = make_center(pts, s, rng)
        target = project(pts, center, rng)
    return gl_index(interpolate(target, margin=2), i_stop)


def _trial_at_prime(kind, d, s, prime, seed, trial, n_multiplier, i_stop):
    """Run one trial at one prime; fresh-seed retries absorb degeneracies."""
    t0 = time.perf_counter()
    entropy = None
    for attempt in range(_RETRY_ATTEMPTS):
        entropy = [seed, _KIND_CODES[kind], d or 0, 0 if s is None else s,
                   trial, attempt, prime]
        try:
            rep = _single_index(kind, d, s, prime, entropy, n_multiplier, i_stop)
            return rep, entropy, time.perf_counter() - t0
        except _DEGENERACY_ERRORS:
            continue
    return None, entropy, time.perf_counter() - t0


def _ceiling_for(kind: str, d: int | None, s: int | None) -> int:
    if s is not None:
        bound = s
    elif kind in ("elliptic-witness", "elliptic-general", "baseline"):
        bound = source_order("elliptic", d)
    elif kind in ("rational-witness", "rational-general"):
        bound = source_order("rational", d)
    else:
        bound = source_order("veronese", None)
    return bound - 3


def _run_cell(campaign, kind, d, s, expected, criterion, trials, primes, seed,
              n_multiplier, i_stop, records):
    """All logical trials of one cell; returns its CellSummary."""
    cell = CellSummary(d=d, s=s, expected=expected, criterion=criterion)
    ceiling = None if kind == "baseline" else _ceiling_for(kind, d, s)
    for trial in range(trials):
        cell.trials += 1
        runs = []  # (prime, report|None, entropy, secs)
        for prime in primes[:2]:
            rep, entropy, secs = _trial_at_prime(
                kind, d, s, prime, seed, trial, n_multiplier, i_stop
            )
            runs.append((prime, rep, entropy, secs))
            if rep is None:
                break
        degenerate = any(rep is None for _, rep, _, _ in runs)
        flagged = False
        final = None
        if not degenerate:
            indices = [rep.index for _, rep, _, _ in runs]
            if len(indices) >= 2:
                if indices[0] == indices[1]:
                    cell.agreements += 1
                    final = indices[0]
                else:
                    cell.disagreements += 1
                    flagged = True
                    third = primes[2] if len(primes) > 2 else TIEBREAK_PRIME
                    rep3, entropy3, secs3 = _trial_at_prime(
                        kind, d, s, third, seed, trial, n_multiplier, i_stop
                    )
                    runs.append((third, rep3, entropy3, secs3))
                    if rep3 is not None:
                        indices.append(rep3.index)
                    final = max(indices)
            else:
                final = indices[0]
        if degenerate:
            status = "degenerate"
            cell.degenerates += 1
        elif flagged:
            status = "flagged"
            cell.flagged += 1
        elif expected is None or final == expected:
            status = "pass"
            cell.passes += 1
        else:
            status = "fail"
            cell.fails += 1
        if final is not None:
            cell.max_index = final if cell.max_index is None else max(cell.max_index, final)
            cell.min_index = final if cell.min_index is None else min(cell.min_index, final)
            cell.distribution[final] = cell.distribution.get(final, 0) + 1
            if ceiling is not None and final > ceiling:
                raise CeilingViolationError(
                    f"index {final} exceeds rank ceiling {ceiling} at {cell.label()}"
                )
        for prime, rep, entropy, secs in runs:
            if rep is not None and ceiling is not None and rep.index > ceiling:
                raise CeilingViolationError(
                    f"index {rep.index} at prime {prime} exceeds rank ceiling "
                    f"{ceiling} at {cell.label()}"
                )
            records.append(
                TrialRecord(
                    campaign=campaign,
                    d=d,
                    s=s,
                    prime=prime,
                    seed=entropy,
                    hilbert=None if rep is None else rep.hilbert,
                    betti=None if rep is None else
                    [(i, i + 2, v) for i, v in sorted(rep.strand.items())],
                    index=None if rep is None else rep.index,
                    expected=expected,
                    status=status,
                    wall_time=secs,
                )
            )
    return cell


def _as_list(value) -> list:
    if isinstance(value, int):
        return [value]
    return list(value)


def _validate_witness(source: str, d: int | None, s: int) -> None:
    order = source_order(source, d)
    if not 3 <= s <= order:
        raise ValueError(
            f"witness size s={s} violates 3 <= s <= order({source}, d={d}) = {order}"
        )


def _config(command, seed, primes, trials, n_multiplier, i_stop, **extra) -> dict:
    cfg = {
        "command": command,
        "seed": seed,
        "primes": list(primes),
        "trials": trials,
        "n_multiplier": n_multiplier,
        "i_stop": i_stop,
    }
    cfg.update(extra)
    return cfg


# -- campaigns ---------------------------------------------------------------


def run_thm12(d, s, trials: int = 5, primes=DEFAULT_PRIMES, seed: int = 0,
              n_multiplier: int = 2, i_stop: int | None = None) -> CampaignSummary:
    """Witness centers on elliptic curves: expect index = s - 3."""
    d_values, s_values = _as_list(d), _as_list(s)
    records, cells = [], []
    for dd in d_values:
        if dd < 5:
            raise ValueError(f"elliptic embedding degree must be >= 5, got {dd}")
        for ss in s_values:
            _validate_witness("elliptic", dd, ss)
            cells.append(
                _run_cell("thm12", "elliptic-witness", dd, ss, ss - 3, "generic",
                          trials, primes, seed, n_multiplier, i_stop, records)
            )
    cfg = _config("thm12", seed, primes, trials, n_multiplier, i_stop,
                  d=d_values, s=s_values)
    return CampaignSummary("thm12", cfg, cells, records)


def run_thm13(d, trials: int = 5, primes=DEFAULT_PRIMES, seed: int = 0,
              n_multiplier: int = 2, i_stop: int | None = None) -> CampaignSummary:
    """Uniformly random centers: expect index = ceil(d/2) - 3."""
    d_values = _as_list(d)
    records, cells = [], []
    for dd in d_values:
        if dd < 5:
            raise ValueError(f"elliptic embedding degree must be >= 5, got {dd}")
        expected = -(-dd // 2) - 3
        cells.append(
            _run_cell("thm13", "elliptic-general", dd, None, expected, "generic",
                      trials, primes, seed, n_multiplier, i_stop, records)
        )
    cfg = _config("thm13", seed, primes, trials, n_multiplier, i_stop, d=d_values)
    return CampaignSummary("thm13", cfg, cells, records)


def run_baseline_unprojected(d_range=(5, 6, 7, 8, 9), trials: int = 1,
                             primes=DEFAULT_PRIMES, seed: int = 0,
                             n_multiplier: int = 2,
                             i_stop: int | None = None) -> CampaignSummary:
    """Unprojected elliptic normal curves: index = d - 3, exactly, always."""
    d_values = _as_list(d_range)
    records, cells = [], []
    for dd in d_values:
        if dd < 5:
            raise ValueError(f"elliptic embedding degree must be >= 5, got {dd}")
        cells.append(
            _run_cell("baseline", "baseline", dd, None, dd - 3, "exact",
                      trials, primes, seed, n_multiplier, i_stop, records)
        )
    cfg = _config("baseline", seed, primes, trials, n_multiplier, i_stop, d=d_values)
    return CampaignSummary("baseline", cfg, cells, records)


def admissible_witness_sizes(source: str, d: int) -> list[int]:
    return list(range(3, source_order(source, d) + 1))


def run_rnc_crosscheck(d_range, s_range=None, trials: int = 3,
                       primes=DEFAULT_PRIMES, seed: int = 0,
                       n_multiplier: int = 2,
                       i_stop: int | None = None) -> CampaignSummary:
    """Rational normal curve oracle: every trial must give index = s - 3."""
    d_values = _as_list(d_range)
    records, cells = [], []
    for dd in d_values:
        if dd < 4:
            raise ValueError(f"rational normal curve degree must be >= 4, got {dd}")
        if s_range is None:
            s_values = admissible_witness_sizes("rational", dd)
        else:
            s_values = [s for s in _as_list(s_range)
                        if 3 <= s <= source_order("rational", dd)]
        for ss in s_values:
            cells.append(
                _run_cell("rnc-check", "rational-witness", dd, ss, ss - 3, "exact",
                          trials, primes, seed, n_multiplier, i_stop, records)
            )
    if not cells:
        raise ValueError("no admissible (d, s) cells in the requested ranges")
    cfg = _config("rnc-check", seed, primes, trials, n_multiplier, i_stop, d=d_values)
    return CampaignSummary("rnc-check", cfg, cells, records)


def run_thm11_scan(d_range, s_range=None, trials: int = 3, primes=DEFAULT_PRIMES,
                   seed: int = 0, n_multiplier: int = 2,
                   i_stop: int | None = None) -> CampaignSummary:
    """Ceiling-only sweep: any index above s - 3 aborts the campaign."""
    d_values = _as_list(d_range)
    records, cells = [], []
    for dd in d_values:
        if dd < 5:
            raise ValueError(f"elliptic embedding degree must be >= 5, got {dd}")
        if s_range is None:
            s_values = admissible_witness_sizes("elliptic", dd)
        else:
            s_values = [s for s in _as_list(s_range)
                        if 3 <= s <= source_order("elliptic", dd)]
        for ss in s_values:
            cells.append(
                _run_cell("thm11-scan", "elliptic-witness", dd, ss, None, "ceiling",
                          trials, primes, seed, n_multiplier, i_stop, records)
            )
    if not cells:
        raise ValueError("no admissible (d, s) cells in the requested ranges")
    cfg = _config("thm11-scan", seed, primes, trials, n_multiplier, i_stop, d=d_values)
    return CampaignSummary("thm11-scan", cfg, cells, records)


def run_semicontinuity_probe(d: int = 9, s: int = 4, trials: int = 20,
                             primes=DEFAULT_PRIMES, seed: int = 0,
                             n_multiplier: int = 2,
                             i_stop: int | None = None) -> CampaignSummary:
    """Distribution of the index over many rank-s centers.

    The maximum must equal s - 3 and be attained by a majority of the
    non-degenerate trials; lower values witness the special loci."""
    if trials < 20:
        raise ValueError(f"the probe needs at least 20 centers, got {trials}")
    _validate_witness("elliptic", d, s)
    records = []
    cell = _run_cell("semicontinuity", "elliptic-witness", d, s, s - 3,
                     "semicontinuity", trials, primes, seed, n_multiplier,
                     i_stop, records)
    cfg = _config("semicontinuity", seed, primes, trials, n_multiplier, i_stop,
                  d=[d], s=[s])
    return CampaignSummary("semicontinuity", cfg, [cell], records)


def run_veronese_example(mode: str = "general", trials: int = 5,
                         primes=DEFAULT_PRIMES, seed: int = 0,
                         n_multiplier: int = 2,
                         i_stop: int | None = None) -> CampaignSummary:
    """Cubic Veronese surface: general center -> 1, rank-3 center -> 0."""
    if mode not in ("general", "rank3"):
        raise ValueError(f"mode must be 'general' or 'rank3', got {mode!r}")
    records = []
    if mode == "general":
        cell = _run_cell("veronese", "veronese-general", None, None, 1, "generic",
                         trials, primes, seed, n_multiplier, i_stop, records)
    else:
        cell = _run_cell("veronese", "veronese-witness", None, 3, 0, "generic",
                         trials, primes, seed, n_multiplier, i_stop, records)
    cfg = _config("veronese", seed, primes, trials, n_multiplier, i_stop, mode=mode)
    return CampaignSummary("veronese", cfg, [cell], records)


# -- single-geometry entry points (used by the betti / index commands) --------


def _kind_for(geometry: str, general: bool) -> str:
    kind = f"{geometry}-{'general' if general else 'witness'}"
    if kind not in _KIND_CODES:
        raise ValueError(f"unknown geometry {geometry!r}")
    return kind


def expected_index(geometry: str, d: int | None, s: int | None) -> int:
    """What the index should be: s - 3 with a witness, order - 3 otherwise."""
    if s is not None:
        return s - 3
    return source_order(geometry, d) - 3


def run_index_trial(geometry: str, d: int | None = None, s: int | None = None,
                    primes=DEFAULT_PRIMES, seed: int = 0, n_multiplier: int = 2,
                    i_stop: int | None = None) -> CampaignSummary:
    """One projected geometry, one center, full two-prime index report."""
    kind = _kind_for(geometry, s is None)
    if s is not None:
        _validate_witness(geometry, d, s)
    records = []
    cell = _run_cell("index", kind, d, s, expected_index(geometry, d, s), "exact",
                     1, primes, seed, n_multiplier, i_stop, records)
    cfg = _config("index", seed, primes, 1, n_multiplier, i_stop,
                  geometry=geometry, d=d, s="general" if s is None else s)
    return CampaignSummary("index", cfg, [cell], records)


def build_graded(geometry: str, d: int | None, s: int | str | None, prime: int,
                 seed: int = 0, n_multiplier: int = 2, attempts: int = _RETRY_ATTEMPTS):
    """Interpolated graded data for one geometry at one prime.

    ``s=None`` means the unprojected variety; ``s="general"`` projects
    from a random center; an int projects from a rank-s witness center.
    Retries fresh seeds on degeneracy like a campaign trial would.
    """
    fp = Fp(prime)
    last = None
    for attempt in range(attempts):
        entropy = [seed, 90, d or 0, 0 if not isinstance(s, int) else s,
                   0, attempt, prime]
        rng = _rng_from(entropy)
        try:
            if geometry == "elliptic":
                curve = EllipticCurve.random(fp, rng)
                pts = embed_elliptic(
                    curve, d, default_sample_size("elliptic", d, n_multiplier), rng
                )
            elif geometry == "rational":
                pts = rnc_points(
                    fp, d, default_sample_size("rational", d, n_multiplier), rng
                )
            elif geometry == "veronese":
                pts = veronese_points(
                    fp, default_sample_size("veronese", None, n_multiplier), rng
                )
            else:
                raise ValueError(f"unknown geometry {geometry!r}")
            if s is not None:
                if s == "general":
                    center = make_general_center(pts, rng)
                else:
                    center = make_center(pts, s, rng)
                pts = project(pts, center, rng)
            return interpolate(pts, margin=2)
        except _DEGENERACY_ERRORS as err:
            last = err
    raise last
