"""First-success laws for Bernoulli trial chains with decaying success odds.

A trial chain runs experiments k = 1, 2, ... with success probability
p_k = p / k^gamma and stops at the first success.  gamma = 0 recovers the
geometric law, gamma = 1 the discrete heavy-tailed law with tail exponent p
(infinite mean), and gamma > 1 leaves positive probability of never
succeeding.  A growing variant with p_k = 1 - q / k^gamma is also provided.

All probability accumulation happens in log space (compensated summation of
log1p terms), so tables remain exact even where the linear-space values
underflow; see `PmfTable` for the exchange format.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import specfun
from .tables import PmfTable

__all__ = [
    "Censored",
    "ConstantEstimate",
    "Finite",
    "GrowingChainParams",
    "Regime",
    "TrialChainParams",
    "asym_pmf_shape",
    "classify_regime",
    "conditional_pmf",
    "estimate_constant",
    "evaluate_pgf",
    "growing_pmf",
    "growing_pmf_table",
    "growing_tail",
    "improper_mass",
    "log_asym_pmf_shape",
    "log_pmf",
    "log_tail",
    "pmf",
    "pmf_table",
    "sample",
    "sample_many",
    "sibuya_tail_closed",
    "tail",
    "tail_table",
]

_INTEGER_TOL = 1e-9
_BOUNDARY_WARN_TOL = 1e-6
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class TrialChainParams:
    """Chain with success probability p / k^gamma at trial k."""

    p: float
    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must be in (0, 1), got {self.p!r}")
        if not self.gamma >= 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")


@dataclass(frozen=True)
class GrowingChainParams:
    """Chain with success probability 1 - q / k^gamma at trial k."""

    q: float
    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must be in (0, 1), got {self.q!r}")
        if not self.gamma >= 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")


@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class Censored:
    cap: int


class Regime(enum.Enum):
    GEOMETRIC = "geometric"
    FRACTIONAL_NON_INTEGER = "fractional_non_integer"
    FRACTIONAL_INTEGER = "fractional_integer"
    SIBUYA = "sibuya"
    IMPROPER = "improper"


def classify_regime(gamma: float, tol: float = _INTEGER_TOL) -> Regime:
    """Asymptotic regime of the chain, keyed on gamma.

    Fractional gamma splits on whether 1/gamma is an integer (detected within
    `tol`), because an integer 1/gamma shifts one exponential correction term
    into the polynomial prefactor of the large-n shape.
    """
    if not gamma >= 0.0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    if abs(gamma) <= tol:
        return Regime.GEOMETRIC
    if abs(gamma - 1.0) <= tol:
        return Regime.SIBUYA
    if gamma > 1.0:
        return Regime.IMPROPER
    inv = 1.0 / gamma
    if abs(inv - round(inv)) <= tol:
        return Regime.FRACTIONAL_INTEGER
    return Regime.FRACTIONAL_NON_INTEGER


def _log_one_minus_pk(params: TrialChainParams, k: np.ndarray) -> np.ndarray:
    if params.gamma == 0.0:
        return np.full(k.shape, math.log1p(-params.p))
    return np.log1p(-params.p * k**-params.gamma)


@lru_cache(maxsize=32)
def _log_survival_prefix(p: float, gamma: float, n_max: int) -> np.ndarray:
    """S[j] = sum_{k<=j} ln(1 - p/k^gamma), j = 0..n_max, compensated.

    Neumaier running compensation keeps each prefix accurate to one ulp of
    its own magnitude independent of length, which is what makes the
    telescoping identities below hold at the 1e-12 level for long tables.
    Cached per parameter triple; callers must not mutate the result.
    """
    params = TrialChainParams(p, gamma)
    terms = _log_one_minus_pk(params, np.arange(1, n_max + 1, dtype=np.float64))
    out = np.empty(n_max + 1)
    out[0] = 0.0
    s = 0.0
    c = 0.0
    for i in range(n_max):
        x = float(terms[i])
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i + 1] = s + c
    return out


def log_pmf(params: TrialChainParams, n: int) -> float:
    """ln P{X = n} = ln p_n + sum_{k<n} ln(1 - p_k)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    prefix = _log_survival_prefix(params.p, params.gamma, n - 1) if n > 1 else None
    s = float(prefix[n - 1]) if n > 1 else 0.0
    return math.log(params.p) - params.gamma * math.log(n) + s


def pmf(params: TrialChainParams, n: int) -> float:
    if params.gamma == 0.0:
        # the chain is exactly geometric; the direct power form keeps the
        # classical identity pmf = p (1-p)^(n-1) bit-exact
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n!r}")
        return params.p * (1.0 - params.p) ** (n - 1)
    return math.exp(log_pmf(params, n))


def log_tail(params: TrialChainParams, m: int) -> float:
    """ln P{X >= m} = sum_{k<m} ln(1 - p_k); includes the never-success mass."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    if m == 1:
        return 0.0
    return float(_log_survival_prefix(params.p, params.gamma, m - 1)[m - 1])


def tail(params: TrialChainParams, m: int) -> float:
    if params.gamma == 0.0:
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m!r}")
        return (1.0 - params.p) ** (m - 1)
    return math.exp(log_tail(params, m))


def tail_table(params: TrialChainParams, m_max: int) -> np.ndarray:
    """ln P{X >= m} for m = 1..m_max in one pass over the survival prefix."""
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max!r}")
    return _log_survival_prefix(params.p, params.gamma, m_max - 1)[:m_max].copy()


def pmf_table(params: TrialChainParams, n_max: int) -> PmfTable:
    """Table of ln P{X = n} for n = 1..n_max with log tail P{X > n_max}."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max!r}")
    prefix = _log_survival_prefix(params.p, params.gamma, n_max)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    log_probs = math.log(params.p) - params.gamma * np.log(n) + prefix[:-1]
    return PmfTable(start=1, log_probs=log_probs, log_tail=float(prefix[-1]))


def sibuya_tail_closed(p: float, m: int) -> float:
    """Closed-form tail at gamma = 1: P{X >= m} = Gamma(m-p)/(Gamma(m)Gamma(1-p))."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p!r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    if m == 1:
        return 1.0
    return math.exp(
        specfun.log_gamma_ratio(float(m), p) - specfun.log_gamma(1.0 - p)
    )


def improper_mass(params: TrialChainParams) -> float:
    """P{X = infinity} = prod_k (1 - p/k^gamma); zero in proper regimes.

    Expanding the log of the product termwise gives
    -ln prod = sum_{j>=1} (p^j / j) zeta(gamma j), a fast-converging series
    since every zeta argument exceeds 1 when gamma > 1.  Terms are added
    until the geometric remainder bound drops below 1e-15.
    """
    if params.gamma <= 1.0:
        return 0.0
    total = 0.0
    j = 1
    while True:
        term = params.p**j / j * specfun.riemann_zeta(params.gamma * j)
        total += term
        # remaining terms are below sum_{i>j} p^i zeta(gamma(j+1)) geometrically
        bound = params.p ** (j + 1) / (1.0 - params.p) * specfun.riemann_zeta(
            params.gamma * (j + 1)
        )
        if bound < 1e-15:
            break
        j += 1
        if j > 10_000:  # pragma: no cover - p < 1 always terminates long before
            raise RuntimeError("improper_mass series failed to converge")
    return math.exp(-total)


def conditional_pmf(params: TrialChainParams, n: int) -> float:
    """P{X = n | X < infinity} for improper chains (gamma > 1)."""
    if params.gamma <= 1.0:
        raise ValueError("conditional_pmf requires gamma > 1")
    mass = improper_mass(params)
    return math.exp(log_pmf(params, n) - math.log1p(-mass))


def _fractional_exponent_sum(p: float, gamma: float, n: float, j_max: int) -> float:
    """sum_{j=1}^{j_max} (p^j / j) n^(1 - gamma j) / (1 - gamma j)."""
    total = 0.0
    for j in range(1, j_max + 1):
        total += p**j / j * n ** (1.0 - gamma * j) / (1.0 - gamma * j)
    return total


def log_asym_pmf_shape(
    params: TrialChainParams, n: int, corrected: bool = True
) -> float:
    """Log of the large-n shape of the pmf (constant left out), by regime.

    Fractional        (p / n^gamma)
      non-integer:      * exp{-sum_{j<=[1/gamma]} (p^j/j) n^(1-gamma j)/(1-gamma j)}
    Fractional        (p / n^(gamma + p^J / J)), J = 1/gamma
      integer:          * exp{-sum_{j<=J-1} (p^j/j) n^(1-gamma j)/(1-gamma j)}
    Heavy tail (g=1): p / (n^(p+1) Gamma(1-p))
    Improper (g>1):   p / n^gamma                          (conditional shape)

    gamma = 0 is rejected: that chain is exactly geometric and needs no
    asymptote.  The exponent sign is the convergent one; `corrected=False`
    flips it to the divergent variant, kept only so diagnostics can
    demonstrate that the flipped sign fails to stabilize.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n!r}")
    p, gamma = params.p, params.gamma
    regime = classify_regime(gamma)
    nf = float(n)
    if regime is Regime.GEOMETRIC:
        raise ValueError("gamma = 0 is exactly geometric; no asymptotic shape")
    if regime is Regime.SIBUYA:
        return math.log(p) - (p + 1.0) * math.log(nf) - specfun.log_gamma(1.0 - p)
    if regime is Regime.IMPROPER:
        return math.log(p) - gamma * math.log(nf)
    sign = -1.0 if corrected else 1.0
    inv = 1.0 / gamma
    if regime is Regime.FRACTIONAL_INTEGER:
        j_int = round(inv)
        power = gamma + p**j_int / j_int
        ex = _fractional_exponent_sum(p, gamma, nf, j_int - 1)
        return math.log(p) - power * math.log(nf) + sign * ex
    j_floor = math.floor(inv + _INTEGER_TOL)
    ex = _fractional_exponent_sum(p, gamma, nf, j_floor)
    return math.log(p) - gamma * math.log(nf) + sign * ex


def asym_pmf_shape(params: TrialChainParams, n: int, corrected: bool = True) -> float:
    return math.exp(log_asym_pmf_shape(params, n, corrected))


@dataclass(frozen=True)
class ConstantEstimate:
    """Result of fitting pmf(n) ~ C * shape(n) over a grid."""

    constant: float
    spread: float
    grid: tuple[int, ...]
    log_ratios: tuple[float, ...]
    regime: Regime


def _log_ratios_for_branch(
    params: TrialChainParams, grid: tuple[int, ...], integer_branch: bool | None
) -> tuple[float, ...]:
    p, gamma = params.p, params.gamma
    improper = gamma > 1.0 + _INTEGER_TOL
    shift = math.log1p(-improper_mass(params)) if improper else 0.0
    out = []
    for n in grid:
        lp = log_pmf(params, n) - shift
        if integer_branch is None:
            ls = log_asym_pmf_shape(params, n)
        else:
            # explicit branch override, used near the 1/gamma integer boundary
            inv = 1.0 / gamma
            if integer_branch:
                j_int = round(inv)
                power = gamma + p**j_int / j_int
                ex = _fractional_exponent_sum(p, gamma, float(n), j_int - 1)
            else:
                power = gamma
                ex = _fractional_exponent_sum(p, gamma, float(n), math.floor(inv))
            ls = math.log(p) - power * math.log(n) - ex
        out.append(lp - ls)
    return tuple(out)


def _spread(log_ratios: tuple[float, ...]) -> float:
    top = log_ratios[len(log_ratios) // 2 :]
    return math.expm1(max(top) - min(top))


def estimate_constant(
    params: TrialChainParams, grid: tuple[int, ...] = (1000, 3000, 10000)
) -> ConstantEstimate:
    """Estimate the shape constant C = pmf/shape at the top of the grid.

    Ratios are formed in log space so deep-tail points cannot underflow.
    The spread (max/min - 1 of the ratio over the upper half of the grid)
    certifies stabilization.  For gamma > 1 the ratio uses the conditional
    pmf, which is the quantity with a finite limiting constant.  Near the
    integer boundary of 1/gamma both fractional branches are evaluated and
    the better-stabilizing one is reported, with a warning.
    """
    if len(grid) < 3 or sorted(grid) != list(grid):
        raise ValueError("grid must be at least three increasing points")
    if grid[-1] < 1000:
        raise ValueError("largest grid point must be >= 1000 to certify a limit")
    regime = classify_regime(params.gamma)
    log_ratios = _log_ratios_for_branch(params, tuple(grid), None)
    if regime in (Regime.FRACTIONAL_INTEGER, Regime.FRACTIONAL_NON_INTEGER):
        inv = 1.0 / params.gamma
        dist = abs(inv - round(inv))
        if _INTEGER_TOL < dist <= _BOUNDARY_WARN_TOL:
            alt = _log_ratios_for_branch(
                params, tuple(grid), regime is Regime.FRACTIONAL_NON_INTEGER
            )
            # the non-integer expansion carries a term ~ n^(1 - gamma J) / (1
            # - gamma J) that is nearly flat over any finite grid, so spreads
            # alone cannot separate the branches this close to the boundary;
            # prefer the integer branch unless it stabilizes clearly worse,
            # since its constant stays bounded as the boundary is approached
            if _spread(alt) < 2.0 * _spread(log_ratios):
                log_ratios = alt
            warnings.warn(
                f"1/gamma = {inv!r} sits near an integer; reporting the "
                "better-stabilizing asymptotic branch",
                UserWarning,
                stacklevel=2,
            )
    return ConstantEstimate(
        constant=math.exp(log_ratios[-1]) if log_ratios[-1] < 709.0 else math.inf,
        spread=_spread(log_ratios),
        grid=tuple(grid),
        log_ratios=log_ratios,
        regime=regime,
    )


def sample(params: TrialChainParams, rng: np.random.Generator, cap: int = DEFAULT_CAP):
    """One draw: run Bernoulli(p/k^gamma) trials until the first success.

    Returns Finite(k) for the first successful trial index, or Censored(cap)
    if no success occurred in the first `cap` trials (guaranteed to happen
    eventually with positive probability when gamma > 1).
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap!r}")
    p, gamma = params.p, params.gamma
    for k in range(1, cap + 1):
        threshold = p if gamma == 0.0 else p / k**gamma
        if rng.random() < threshold:
            return Finite(k)
    return Censored(cap)


def sample_many(
    params: TrialChainParams,
    rng: np.random.Generator,
    n: int,
    cap: int = DEFAULT_CAP,
    _block_budget: int = 4_000_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized version of `sample`: n independent chains, one uniform per
    executed trial (identical semantics, batched by trial index).

    Returns (values, censored): values[i] is the first-success index, valid
    where ~censored[i]; censored chains ran `cap` trials without success.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n!r}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap!r}")
    values = np.zeros(n, dtype=np.int64)
    alive = np.arange(n, dtype=np.int64)
    k = 1
    while k <= cap and alive.size:
        block = max(1, min(_block_budget // alive.size, cap - k + 1))
        ks = np.arange(k, k + block, dtype=np.float64)
        thresholds = np.full(block, params.p) if params.gamma == 0.0 else params.p / ks**params.gamma
        hits = rng.random((alive.size, block)) < thresholds[None, :]
        hit_any = hits.any(axis=1)
        if hit_any.any():
            values[alive[hit_any]] = k + np.argmax(hits[hit_any], axis=1)
        alive = alive[~hit_any]
        k += block
    censored = np.zeros(n, dtype=bool)
    censored[alive] = True
    return values, censored


def evaluate_pgf(
    params: TrialChainParams, z: float, order: int = 512
) -> tuple[float, float]:
    """(sum_{n<=order} z^n pmf(n), truncation bound z^order * tail(order+1))."""
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z must be in [0, 1], got {z!r}")
    table = pmf_table(params, order)
    if z == 0.0:
        return 0.0, 0.0
    n = np.arange(1, order + 1, dtype=np.float64)
    value = float(math.fsum(np.exp(table.log_probs + n * math.log(z))))
    bound = math.exp(order * math.log(z) + table.log_tail)
    return value, bound


# -- growing chains: success probability 1 - q/k^gamma ----------------------


def _growing_log_tail(params: GrowingChainParams, m: int) -> float:
    # P{X >= m} = prod_{k<m} q/k^gamma = q^(m-1) / ((m-1)!)^gamma
    return (m - 1) * math.log(params.q) - params.gamma * specfun.log_gamma(float(m))


def growing_tail(params: GrowingChainParams, m: int) -> float:
    """P{X >= m} = q^(m-1) / ((m-1)!)^gamma; superexponentially small tails.

    While the tail is comfortably above the underflow floor it is formed as
    a product of two factors (cheap and one rounding sharper than exp of the
    full log, which matters for the exactness of small-m hand values); the
    log path takes over once either factor could underflow on its own.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m!r}")
    log_t = _growing_log_tail(params, m)
    if log_t > -700.0:
        return params.q ** (m - 1) * math.exp(
            -params.gamma * specfun.log_gamma(float(m))
        )
    return math.exp(log_t)


def growing_pmf(params: GrowingChainParams, n: int) -> float:
    """P{X = n} = q^(n-1)/((n-1)!)^gamma - q^n/(n!)^gamma.

    Evaluated as the tail difference so partial sums telescope exactly.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return growing_tail(params, n) - growing_tail(params, n + 1)


def growing_pmf_table(params: GrowingChainParams, n_max: int) -> PmfTable:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max!r}")
    log_tails = np.array([_growing_log_tail(params, m) for m in range(1, n_max + 2)])
    probs = np.exp(log_tails[:-1]) - np.exp(log_tails[1:])
    log_probs = np.log(probs, out=np.full(n_max, -np.inf), where=probs > 0.0)
    return PmfTable(start=1, log_probs=log_probs, log_tail=float(log_tails[-1]))
