"""Monte Carlo estimation of decoding failure rates against the analytic bounds.

Each trial draws its own PCG64 generator from a seed sequence keyed by
(seed, insertions, deletions, trial index), so results are identical no matter
how trials are distributed over workers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.stats import beta as beta_dist

from .channel import ChannelError, transmit
from .code import CodeSpec, complement, encode
from .decoders import (
    DecodeOutcome,
    ReceivedWord,
    complementary_decode,
    heuristic_failure_bound,
    list_decode,
    lo_decode,
    strict_failure_bound,
    unique_decode,
)

__all__ = [
    "TrialRecord",
    "PointResult",
    "clopper_pearson",
    "run_trial",
    "run_point",
    "CSV_COLUMNS",
    "point_to_csv_row",
]

CSV_COLUMNS = (
    "gamma",
    "delta",
    "trials",
    "failures",
    "rate",
    "strict_bound",
    "heuristic_bound",
    "ci_low",
    "ci_high",
)

DECODERS = ("unique", "lo", "list", "complementary")


@dataclass
class TrialRecord:
    index: int
    insertion_partition: tuple[int, ...]
    deletion_partition: tuple[int, ...]
    outcome: str
    list_size: int
    wall_time: float
    success: bool
    realization: object = None


@dataclass
class PointResult:
    insertions: int
    deletions: int
    trials: int
    failures: int
    rate: float
    strict_bound: float | None
    heuristic_bound: float | None
    ci_low: float
    ci_high: float
    records: list = dc_field(default_factory=list)
    error: str | None = None


def clopper_pearson(failures: int, trials: int, confidence: float = 0.95):
    """Exact two-sided binomial confidence interval."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    alpha = 1.0 - confidence
    if failures == 0:
        low = 0.0
    else:
        low = float(beta_dist.ppf(alpha / 2, failures, trials - failures + 1))
    if failures == trials:
        high = 1.0
    else:
        high = float(beta_dist.ppf(1 - alpha / 2, failures + 1, trials - failures))
    return low, high


def trial_rng(seed: int, insertions: int, deletions: int, index: int):
    ss = np.random.SeedSequence(entropy=(seed, insertions, deletions, index))
    return np.random.Generator(np.random.PCG64(ss))


def run_trial(
    spec: CodeSpec,
    insertions: int,
    deletions: int,
    seed: int,
    index: int,
    decoder: str = "unique",
    keep_realization: bool = False,
) -> TrialRecord:
    """One encode -> channel -> decode round; success means the message came back."""
    rng = trial_rng(seed, insertions, deletions, index)
    start = time.perf_counter()
    msg = spec.random_message(rng)

    if decoder == "complementary":
        params = spec.dual_channel_params(insertions, deletions)
        sent = complement(encode(spec, msg))
        received, realization = transmit(sent, params, rng)
        outcome = complementary_decode(received, spec)
    else:
        params = spec.channel_params(insertions, deletions)
        sent = encode(spec, msg)
        received, realization = transmit(sent, params, rng)
        rw = ReceivedWord.from_subspace_tuple(spec, received)
        if decoder == "unique":
            outcome = unique_decode(rw)
        elif decoder == "lo":
            outcome = lo_decode(rw, deletions)
        elif decoder == "list":
            outcome = list_decode(rw)
        else:
            raise ValueError(f"unknown decoder {decoder!r}")

    if decoder == "list":
        success = outcome.is_list and msg in outcome.messages
        list_size = len(outcome.messages) if outcome.is_list else 0
    else:
        success = outcome.is_unique and outcome.message == msg
        list_size = len(outcome.messages)
    wall = time.perf_counter() - start
    return TrialRecord(
        index=index,
        insertion_partition=realization.insertion_partition,
        deletion_partition=realization.deletion_partition,
        outcome=outcome.tag,
        list_size=list_size,
        wall_time=wall,
        success=success,
        realization=realization if (keep_realization and not success) else None,
    )


def _run_chunk(args):
    spec_args, insertions, deletions, seed, start, stop, decoder, keep = args
    spec = CodeSpec.standard(**spec_args)
    records = [
        run_trial(spec, insertions, deletions, seed, i, decoder, keep)
        for i in range(start, stop)
    ]
    return records


def run_point(
    spec: CodeSpec,
    insertions: int,
    deletions: int,
    trials: int,
    seed: int,
    decoder: str = "unique",
    workers: int = 1,
    stop_after_failures: int | None = None,
    keep_failures: bool = False,
    spec_args: dict | None = None,
) -> PointResult:
    """Run one sweep point.  Infeasible channel parameters yield an error-marked result."""
    try:
        if decoder == "complementary":
            spec.dual_channel_params(insertions, deletions).validate()
        else:
            spec.channel_params(insertions, deletions).validate()
    except ChannelError as exc:
        return PointResult(
            insertions, deletions, 0, 0, float("nan"), None, None,
            float("nan"), float("nan"), error=str(exc),
        )

    strict = heuristic = None
    bound_gamma, bound_delta = insertions, deletions
    if decoder == "complementary":
        # roles swap inside the primary-code decoder
        bound_gamma, bound_delta = deletions, insertions
    try:
        strict = strict_failure_bound(spec, bound_gamma, bound_delta)
        heuristic = heuristic_failure_bound(spec, bound_gamma, bound_delta)
    except ValueError:
        pass

    records: list[TrialRecord] = []
    if stop_after_failures is not None:
        failures = 0
        for i in range(trials):
            rec = run_trial(spec, insertions, deletions, seed, i, decoder, keep_failures)
            records.append(rec)
            failures += not rec.success
            if failures >= stop_after_failures:
                break
    elif workers <= 1 or spec_args is None:
        records = [
            run_trial(spec, insertions, deletions, seed, i, decoder, keep_failures)
            for i in range(trials)
        ]
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, trials // (workers * 4))
        jobs = [
            (spec_args, insertions, deletions, seed, lo, min(lo + chunk, trials), decoder, keep_failures)
            for lo in range(0, trials, chunk)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_chunk, jobs):
                records.extend(part)
        records.sort(key=lambda r: r.index)

    n = len(records)
    failures = sum(not r.success for r in records)
    low, high = clopper_pearson(failures, n)
    return PointResult(
        insertions=insertions,
        deletions=deletions,
        trials=n,
        failures=failures,
        rate=failures / n,
        strict_bound=strict,
        heuristic_bound=heuristic,
        ci_low=low,
        ci_high=high,
        records=records,
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.6e}"


def point_to_csv_row(res: PointResult) -> str:
    if res.error is not None:
        return f"{res.insertions},{res.deletions},0,0,infeasible,,,,"
    return ",".join(
        [
            str(res.insertions),
            str(res.deletions),
            str(res.trials),
            str(res.failures),
            _fmt(res.rate),
            _fmt(res.strict_bound),
            _fmt(res.heuristic_bound),
            _fmt(res.ci_low),
            _fmt(res.ci_high),
        ]
    )
