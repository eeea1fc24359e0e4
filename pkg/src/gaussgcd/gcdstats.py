"""Exact gcd-norm distributions over ordered pairs of ideals of norm <= x.

Two routes produce the same counts.  The brute-force oracle walks every
ordered pair of canonical Gaussian integers and histograms the gcd norms;
it is quadratic and guarded to small x.  The fast path inverts divisibility
counts instead: writing D(y) for the number of ideals of norm <= y and M(m)
for the Moebius sums by norm,

    E(k) = (r2(k)/4) * sum_{m >= 1, k*m <= x} M(m) * D(floor(x/(k*m)))^2

counts the ordered pairs with gcd norm exactly k.  Since floor(x/(k*m))
only depends on y = floor(x/k), the inner sums collapse to one value T(y)
per distinct quotient, of which there are about 2*sqrt(x).

All counts are exact integers.  The numpy inner products run in int64 under
a runtime envelope check; moment numerators switch to Python integers,
which never overflow.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OverflowGuardError, ScaleError, TableRangeError
from .gaussian import ideals_up_to
from .sieve import SieveTables

BRUTE_FORCE_XMAX = 2000  # quadratic oracle guard
_INT64_HEADROOM = 2**61


@dataclass(frozen=True)
class GcdDistribution:
    """Exact histogram of gcd norms over all ordered ideal pairs of norm <= x."""

    x: int
    counts: dict[int, int]  # k -> number of ordered pairs with gcd norm k
    total: int  # D(x)^2

    def __post_init__(self) -> None:
        if self.total != sum(self.counts.values()):
            raise AssertionError("distribution counts do not sum to the pair total")


@dataclass(frozen=True)
class MomentSeries:
    """Empirical moment values sampled along increasing cutoffs."""

    n: int
    samples: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        xs = [x for x, _ in self.samples]
        if xs != sorted(set(xs)):
            raise DomainError("samples must be sorted with distinct x")
        if any(v < 0 for _, v in self.samples):
            raise DomainError("moment values cannot be negative")


@dataclass(frozen=True)
class FitResult:
    """Least-squares polynomial coefficients, highest degree first."""

    degree: int
    coefficients: tuple[float, ...]
    residual: float  # root-mean-square residual

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.degree + 1:
            raise DomainError("coefficient count must equal degree + 1")
        if self.residual < 0:
            raise DomainError("residual cannot be negative")

    def leading(self) -> float:
        return self.coefficients[0]


def distribution_bruteforce(x: int) -> GcdDistribution:
    """Oracle path: pairwise Euclidean gcd over every ordered pair.

    Quadratic in the ideal count, so guarded to x <= 2000; use the fast path
    beyond that.
    """
    if x < 1:
        raise DomainError("cutoff must be >= 1")
    if x > BRUTE_FORCE_XMAX:
        raise ScaleError(
            f"x={x} exceeds the brute-force guard {BRUTE_FORCE_XMAX}; "
            "use distribution_fast"
        )
    gens = [(c.gen.re, c.gen.im) for c in ideals_up_to(x)]
    counts: dict[int, int] = {}
    for i, (a, b) in enumerate(gens):
        counts[a * a + b * b] = counts.get(a * a + b * b, 0) + 1  # (z, z) pair
        for c, d in gens[i + 1 :]:
            # one gcd covers both orderings of a distinct pair
            e, f = a, b
            g, h = c, d
            while g != 0 or h != 0:
                nb = g * g + h * h
                qr = (2 * (e * g + f * h) + nb) // (2 * nb)
                qi = (2 * (f * g - e * h) + nb) // (2 * nb)
                e, f, g, h = g, h, e - qr * g + qi * h, f - qr * h - qi * g
            ng = e * e + f * f
            counts[ng] = counts.get(ng, 0) + 2
    return GcdDistribution(x=x, counts=dict(sorted(counts.items())), total=len(gens) ** 2)


def _check_envelope(x: int, tables: SieveTables) -> None:
    """Certify that every int64 inner product below stays exact.

    The largest possible accumulation is sum_m |M(m)| D(x/m)^2, evaluated
    here in float64 (its relative error is far below the factor-4 headroom).
    """
    moebius = tables.moebius_by_norm
    prefix = tables.ideal_count_prefix
    m = np.arange(1, x + 1, dtype=np.int64)
    dv = prefix[x // m].astype(np.float64)
    worst = float(np.dot(np.abs(moebius[1 : x + 1]).astype(np.float64), dv * dv))
    if 4.0 * worst >= _INT64_HEADROOM:
        raise OverflowGuardError(
            f"x={x} leaves the certified int64 envelope for exact accumulation"
        )


def distribution_fast(x: int, tables: SieveTables, threads: int = 1) -> GcdDistribution:
    """Moebius-inversion path; identical to the oracle wherever both run.

    The distinct-quotient groups partition the k range; with threads > 1 they
    are evaluated by a thread pool and merged in index order, so the result
    is bit-identical to the sequential one.
    """
    if x < 1:
        raise DomainError("cutoff must be >= 1")
    if x > tables.xmax:
        raise TableRangeError(f"x={x} exceeds table bound {tables.xmax}")
    _check_envelope(x, tables)

    moebius = tables.moebius_by_norm
    prefix = tables.ideal_count_prefix.astype(np.int64, copy=False)
    ks = np.arange(1, x + 1, dtype=np.int64)
    quotients = x // ks
    uniq, inverse = np.unique(quotients, return_inverse=True)

    def t_of(y: int) -> int:
        m = np.arange(1, y + 1, dtype=np.int64)
        dv = prefix[y // m]
        return int(np.dot(moebius[1 : y + 1].astype(np.int64), dv * dv))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tvals = np.fromiter(
                pool.map(t_of, uniq.tolist()), dtype=np.int64, count=len(uniq)
            )
    else:
        tvals = np.fromiter(
            (t_of(y) for y in uniq.tolist()), dtype=np.int64, count=len(uniq)
        )

    r2q = (tables.r2[1 : x + 1] // 4).astype(np.int64)
    evals = r2q * tvals[inverse]
    mask = r2q > 0
    if mask.any() and int(evals[mask].min()) < 1:
        raise OverflowGuardError("exact accumulation produced an impossible count")
    counts = dict(zip(ks[mask].tolist(), evals[mask].tolist()))
    total = int(prefix[x]) ** 2
    return GcdDistribution(x=x, counts=counts, total=total)


def coprime_probability(dist: GcdDistribution) -> float:
    """Fraction of ordered pairs with gcd norm 1."""
    return dist.counts.get(1, 0) / dist.total


def moment(dist: GcdDistribution, n: int) -> float:
    """n-th moment of the gcd norm; the numerator stays an exact integer."""
    if n < 0:
        raise DomainError("moment order must be >= 0")
    if n == 0:
        return 1.0
    numerator = sum(count * k**n for k, count in dist.counts.items())
    return numerator / dist.total


def expected_norm(dist: GcdDistribution) -> float:
    """Mean gcd norm: the first moment."""
    return moment(dist, 1)


def fit_polynomial(samples: list[tuple[float, float]], degree: int) -> FitResult:
    """Ordinary least squares on the monomial basis.

    Columns are norm-scaled before the SVD solve (numpy.polyfit), which keeps
    the high-degree Vandermonde systems of the moment fits well conditioned.
    """
    if degree < 0:
        raise DomainError("degree must be >= 0")
    if len(samples) < degree + 1:
        raise DomainError(
            f"{len(samples)} samples cannot determine a degree-{degree} fit"
        )
    xs = np.array([float(x) for x, _ in samples])
    ys = np.array([float(y) for _, y in samples])
    if len(np.unique(xs)) != len(xs):
        raise DomainError("sample x values must be distinct")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", np.exceptions.RankWarning)
        coeffs, _, rank, _, _ = np.polyfit(xs, ys, degree, full=True)
    if rank < degree + 1:
        raise DomainError("design matrix is rank deficient after scaling")
    rms = float(np.sqrt(np.mean((np.polyval(coeffs, xs) - ys) ** 2)))
    return FitResult(degree=degree, coefficients=tuple(coeffs.tolist()), residual=rms)


def fit_log_linear(samples: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares fit of a*log(x) + b; returns (a, b, rms residual)."""
    if len(samples) < 2:
        raise DomainError("need at least two samples for a log fit")
    xs = np.log(np.array([float(x) for x, _ in samples]))
    ys = np.array([float(y) for _, y in samples])
    design = np.vstack([xs, np.ones_like(xs)]).T
    (a, b), *_ = np.linalg.lstsq(design, ys, rcond=None)
    rms = float(np.sqrt(np.mean((a * xs + b - ys) ** 2)))
    return float(a), float(b), rms


def sample_grid(xmax: int, points: int, start: int = 100) -> list[int]:
    """Evenly spaced integer cutoffs from start to xmax inclusive, deduplicated."""
    if xmax < 1 or points < 1:
        raise DomainError("grid needs xmax >= 1 and points >= 1")
    lo = min(start, xmax)
    grid = np.unique(np.round(np.linspace(lo, xmax, points)).astype(np.int64))
    return [int(v) for v in grid]


def moment_series_multi(
    orders: list[int],
    grid: list[int],
    tables: SieveTables,
    threads: int = 1,
) -> dict[int, MomentSeries]:
    """Moment curves for several orders over one grid, computing each
    distribution once."""
    values: dict[int, list[tuple[int, float]]] = {n: [] for n in orders}
    for x in grid:
        dist = distribution_fast(x, tables, threads=threads)
        for n in orders:
            values[n].append((x, moment(dist, n)))
    return {
        n: MomentSeries(n=n, samples=tuple(vals)) for n, vals in values.items()
    }


def moment_series(
    n: int, grid: list[int], tables: SieveTables, threads: int = 1
) -> MomentSeries:
    return moment_series_multi([n], grid, tables, threads=threads)[n]


def leading_coefficient_experiment(
    n: int,
    xmax: int,
    grid_points: int,
    tables: SieveTables,
    threads: int = 1,
) -> FitResult:
    """Fit the degree-(n-1) polynomial to the order-n moment curve and return
    the fit; its leading coefficient estimates the moment growth constant."""
    if not 2 <= n <= 5:
        raise DomainError("moment order must be in 2..5")
    if grid_points < n + 1:
        raise DomainError("grid must provide at least degree + 2 points")
    series = moment_series(n, sample_grid(xmax, grid_points), tables, threads=threads)
    return fit_polynomial([(float(x), v) for x, v in series.samples], n - 1)
