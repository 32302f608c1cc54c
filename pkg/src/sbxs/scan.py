"""Envelope sweeps over photon number, totals, and intensity sweeps.

All reductions run in a fixed (ascending n / grid) order so results are
bitwise reproducible regardless of the worker count.  SBX_THREADS caps the
thread pool (0 or unset = auto); individual evaluations are pure.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dirac_oracle import xs_oracle
from .errors import (
    ChannelClosedError,
    ConvergenceError,
    DomainError,
    LinearPathUnstableError,
)
from .kinematics import LaserField
from .potential import PotentialFT
from .xsection import (
    PartialXS,
    Scenario,
    XSTerms,
    _nonrel_eval,
    partial_xs_circular,
    partial_xs_general,
    partial_xs_linear,
)

TAIL_CUT_DEFAULT = 1.0e-8
MARGIN_FACTOR_DEFAULT = 10.0


def thread_count():
    """Worker cap from SBX_THREADS (0 or unset -> auto)."""
    raw = os.environ.get("SBX_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"SBX_THREADS must be an integer, got {raw!r}")
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def _map_ordered(fn, items):
    """Order-preserving map, threaded when allowed; results deterministic."""
    items = list(items)
    workers = min(thread_count(), max(len(items), 1))
    if workers == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def partial(scenario, n):
    """Single channel under the scenario's formula selection.

    The linear closed form silently defers to the general path when its
    |v| stability floor trips; the nonrel reference is wrapped in a
    PartialXS with the whole value booked as the main term.
    """
    formula = scenario.formula
    if formula == "general":
        return partial_xs_general(scenario, n)
    if formula == "circular":
        return partial_xs_circular(scenario, n)
    if formula == "linear":
        try:
            return partial_xs_linear(scenario, n)
        except LinearPathUnstableError:
            return partial_xs_general(scenario, n)
    if formula == "oracle":
        general = partial_xs_general(scenario, n)
        value = xs_oracle(scenario, n)
        return PartialXS(
            n=n,
            value=value,
            terms=XSTerms(value, 0.0, 0.0),
            alpha1=general.alpha1,
            q2=general.q2,
        )
    # nonrel
    value, a1, q2 = _nonrel_eval(scenario, n)
    return PartialXS(
        n=n, value=value, terms=XSTerms(value, 0.0, 0.0), alpha1=a1, q2=q2
    )


@dataclass(frozen=True, eq=False)
class Envelope:
    """Partial cross sections vs photon number at fixed geometry."""

    entries: tuple
    n_peak: int
    alpha1_at_peak: float
    total: float


def _tail_done(px, vmax, tail_cut, margin_factor):
    margin = px.alpha1 + margin_factor * (px.alpha1 ** (1.0 / 3.0) + 1.0)
    return px.value < tail_cut * vmax and abs(px.n) > margin


def envelope(scenario, n_range=None, tail_cut=TAIL_CUT_DEFAULT,
             margin_factor=MARGIN_FACTOR_DEFAULT):
    """Channel envelope; auto range expands from n = 0 until the tail is
    below tail_cut * peak AND |n| clears the Bessel support margin.

    With an explicit (n_min, n_max) range, closed channels inside the range
    are skipped.  The included set is canonical: it never depends on which
    side expanded first.
    """
    if n_range is not None:
        n_min, n_max = int(n_range[0]), int(n_range[1])
        entries = []
        for n in range(n_min, n_max + 1):
            try:
                entries.append(partial(scenario, n))
            except ChannelClosedError:
                continue
        if not entries:
            raise ChannelClosedError(n_min, "no open channels in range")
        return _finish_envelope(entries)

    values = {0: partial(scenario, 0)}
    if scenario.laser.a0bar == 0.0:
        return _finish_envelope([values[0]])

    vmax = values[0].value
    for step in (1, -1):
        n = 0
        while True:
            n += step
            try:
                px = partial(scenario, n)
            except ChannelClosedError:
                break
            values[n] = px
            vmax = max(vmax, px.value)
            if _tail_done(px, vmax, tail_cut, margin_factor):
                break

    # Canonical trim against the final global peak: keep each side up to the
    # first channel (scanning outward) satisfying the stop rule.
    vmax = max(px.value for px in values.values())
    kept = [values[0]]
    for step in (1, -1):
        n = 0
        while True:
            n += step
            if n not in values:
                break
            kept.append(values[n])
            if _tail_done(values[n], vmax, tail_cut, margin_factor):
                break
    kept.sort(key=lambda px: px.n)
    return _finish_envelope(kept)


def _finish_envelope(entries):
    entries = sorted(entries, key=lambda px: px.n)
    total = 0.0
    peak = entries[0]
    for px in entries:
        total += px.value
        if px.value > peak.value:
            peak = px
    return Envelope(
        entries=tuple(entries),
        n_peak=peak.n,
        alpha1_at_peak=peak.alpha1,
        total=total,
    )


def total_xs(scenario, tail_cut=TAIL_CUT_DEFAULT,
             margin_factor=MARGIN_FACTOR_DEFAULT):
    """Sum of the auto-ranged envelope (dsigma/dOmega over all channels)."""
    return envelope(scenario, tail_cut=tail_cut, margin_factor=margin_factor).total


@dataclass(frozen=True)
class KPoint:
    """One intensity-sweep sample; `error` is None on success."""

    K: float
    total: float
    error: str = None


def k_sweep(scenario, k_grid):
    """Independent totals per intensity parameter K, input order preserved.

    Per-point failures are reported in the output records instead of
    aborting the sweep.
    """
    k_grid = [float(k) for k in k_grid]
    if any(not 0.0 < k <= 1.5 for k in k_grid):
        raise DomainError("k_grid values must lie in (0, 1.5]")
    if sorted(k_grid) != k_grid:
        raise DomainError("k_grid must be sorted ascending")

    def one(K):
        try:
            return KPoint(K=K, total=total_xs(scenario.with_K(K)))
        except (ChannelClosedError, ConvergenceError, DomainError) as exc:
            return KPoint(K=K, total=math.nan, error=f"{type(exc).__name__}: {exc}")

    return _map_ordered(one, k_grid)


def random_scenarios(seed, count, potential=None, kinetic_energy=2700.0,
                     omega=1.17):
    """Deterministic stream of randomized comparison scenarios spanning
    zeta {0, 0.5, 1}, K {0.01, 0.17, 0.8}, deflections {0.6, 6, 60} mrad and
    parallel/antiparallel/oblique electron directions."""
    pot = potential if potential is not None else PotentialFT.screened_coulomb_au(1.0, 4.0)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        zeta = float(rng.choice([0.0, 0.5, 1.0]))
        K = float(rng.choice([0.01, 0.17, 0.8]))
        defl = float(rng.choice([0.6, 6.0, 60.0])) * 1.0e-3
        kind = int(rng.integers(0, 3))
        if kind == 0:
            direction = (0.0, 0.0, 1.0)
        elif kind == 1:
            direction = (0.0, 0.0, -1.0)
        else:
            vec = rng.normal(size=3)
            direction = tuple(vec / np.linalg.norm(vec))
        azimuth = float(rng.uniform(0.0, 2.0 * math.pi))
        laser = LaserField.from_K(omega, K, zeta)
        out.append(
            Scenario(
                laser=laser,
                kinetic_energy=kinetic_energy,
                direction=direction,
                potential=pot,
                deflection=defl,
                azimuth=azimuth,
            )
        )
    return out


def oracle_deviation_sweep(seed=0, samples=200):
    """Max relative deviation |general - oracle| over randomized open channels.

    Returns (max_rel_dev, records); each record is (scenario index, n,
    general value, oracle value, relative deviation).  Channels are drawn
    across the envelope support of each scenario; draws whose value sits
    below 1e-12 of the elastic channel are redrawn, since values that deep
    in the suppressed tail are not defined to 1e-8 relative in double
    precision by any formulation (and carry no weight in any observable).
    """
    scenarios = random_scenarios(seed, samples)
    rng = np.random.default_rng(seed + 1)
    records = []

    def one(args):
        idx, scenario = args
        ds = scenario.dressed()
        ch0 = partial_xs_general(scenario, 0)
        span = int(math.ceil(ch0.alpha1)) + 3
        floor = 1.0e-12 * ch0.value
        for _ in range(12):
            n = int(rng.integers(-span, span + 1))
            try:
                general = partial_xs_general(scenario, n).value
                oracle = xs_oracle(scenario, n)
            except ChannelClosedError:
                continue
            scale = max(abs(general), abs(oracle))
            if scale <= floor:
                continue
            rel = abs(general - oracle) / scale
            return (idx, n, general, oracle, rel)
        return None

    # channel choice consumes the rng sequentially: keep it single-threaded
    for item in map(one, enumerate(scenarios)):
        if item is not None:
            records.append(item)
    max_dev = float(max((r[4] for r in records), default=0.0))
    return max_dev, records
