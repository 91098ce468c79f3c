"""Random generators, law-checking campaigns and scripted scenarios.

Every randomized trial draws from its own generator, derived from the
campaign's master seed and the trial index, so a campaign gives the same
report however its trials are spread over worker processes, and any single
trial can be replayed with :func:`run_theorem_trial`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from . import spectral
from .core import Partition, SeaContract, SeaError
from .entropy import (
    AtomWeights,
    DensityMatrix,
    EntropyOptions,
    PointWeights,
    State,
    cond_entropy,
    entropy,
    eval_state,
    theorem_residuals,
)
from .instances import (
    BooleanSEA,
    FuzzyElement,
    FuzzySEA,
    QuantumEffect,
    QuantumSEA,
    instance_for,
)

__all__ = [
    "RetriesExhausted",
    "MeetUnavailable",
    "trial_rng",
    "gen_random_density",
    "gen_random_state",
    "gen_random_unitary",
    "gen_random_projection",
    "gen_random_element",
    "gen_random_effect_partition",
    "gen_random_boolean_partition",
    "gen_random_fuzzy_partition",
    "gen_random_partition",
    "LawTally",
    "CampaignConfig",
    "CampaignReport",
    "TrialOutcome",
    "run_theorem_trial",
    "run_theorem_campaign",
    "AXIOM_TOLERANCES",
    "check_sea_axioms",
    "check_log_sum",
    "run_log_sum_fuzz",
    "check_bayes",
    "orthomodular_gap",
    "ScenarioRecord",
    "example_2_3_matrices",
    "scenario_example_2_3",
    "scenario_nondistributivity",
]

KINDS = ("boolean", "fuzzy", "quantum")
MAX_REDRAWS = 100
COND_LIMIT = 1e12


class RetriesExhausted(SeaError):
    pass


class MeetUnavailable(SeaError):
    pass


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for trial ``index`` of a campaign seeded by ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


# --------------------------------------------------------------------------
# generators


def _ginibre(d: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)


def gen_random_density(d: int, rng: np.random.Generator) -> DensityMatrix:
    """``G G^dagger / tr(G G^dagger)`` for a complex Ginibre matrix ``G``."""
    g = _ginibre(d, rng)
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix._wrap((rho + rho.conj().T) / 2)


def gen_random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary via QR of a Ginibre matrix with phase correction."""
    q, r = np.linalg.qr(_ginibre(d, rng))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def gen_random_projection(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    u = gen_random_unitary(d, rng)[:, :rank]
    return spectral.hermitize(u @ u.conj().T)


def gen_random_state(sea: SeaContract, rng: np.random.Generator) -> State:
    if isinstance(sea, QuantumSEA):
        return gen_random_density(sea.d, rng)
    w = rng.dirichlet(np.ones(sea.n))
    w = w / w.sum()
    return AtomWeights._wrap(w) if isinstance(sea, BooleanSEA) else PointWeights._wrap(w)


def gen_random_element(sea: SeaContract, rng: np.random.Generator):
    """Uniform subset, uniform memberships, or ``U diag(x) U^dagger`` with x ~ U[0,1]."""
    if isinstance(sea, BooleanSEA):
        return sea.element(i for i in range(sea.n) if rng.random() < 0.5)
    if isinstance(sea, FuzzySEA):
        return FuzzyElement._wrap(rng.random(sea.n))
    u = gen_random_unitary(sea.d, rng)
    return QuantumEffect._wrap(spectral.hermitize((u * rng.random(sea.d)) @ u.conj().T))


def _draw_effect_partition(d: int, k: int, rng: np.random.Generator) -> tuple:
    sea = QuantumSEA(d)
    if k < 1:
        raise ValueError("partition size must be positive")
    if k == 1:
        return sea.validate_partition([sea.one]), 0
    for redraws in range(MAX_REDRAWS + 1):
        gs = []
        for _ in range(k):
            m = _ginibre(d, rng)
            gs.append(m @ m.conj().T)
        s = sum(gs)
        w, v = np.linalg.eigh(spectral.hermitize(s))
        if w[0] <= 0 or w[-1] / w[0] > COND_LIMIT:
            continue
        inv_root = (v / np.sqrt(w)) @ v.conj().T
        effects = [inv_root @ g @ inv_root for g in gs]
        # second pass removes the rounding left by the first normalization
        w2, v2 = np.linalg.eigh(spectral.hermitize(sum(effects)))
        fix = (v2 / np.sqrt(w2)) @ v2.conj().T
        effects = [spectral.clip_spectrum(fix @ e @ fix) for e in effects]
        try:
            part = sea.validate_partition([QuantumEffect._wrap(e) for e in effects])
        except SeaError:
            continue
        return part, redraws
    raise RetriesExhausted(f"no well-conditioned partition after {MAX_REDRAWS} redraws")


def gen_random_effect_partition(d: int, k: int, rng: np.random.Generator) -> Partition:
    """Random ``k``-outcome POVM on ``C^d``.

    Draws Wishart matrices ``G_i`` and normalizes them by ``S^{-1/2}`` with
    ``S = sum G_i``.  Ill-conditioned ``S`` (condition number above 1e12) is
    redrawn, at most 100 times.
    """
    return _draw_effect_partition(d, k, rng)[0]


def gen_random_boolean_partition(n: int, k: int, rng: np.random.Generator) -> Partition:
    """Random surjective assignment of the ``n`` atoms to ``k`` blocks."""
    if not 1 <= k <= n:
        raise ValueError(f"cannot split {n} atoms into {k} nonempty blocks")
    labels = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
    rng.shuffle(labels)
    sea = BooleanSEA(n)
    return sea.validate_partition(
        [sea.element(np.flatnonzero(labels == j).tolist()) for j in range(k)]
    )


def gen_random_fuzzy_partition(n: int, k: int, rng: np.random.Generator) -> Partition:
    """Each ground point gets an independent uniform probability vector over ``k`` parts."""
    if k < 1:
        raise ValueError("partition size must be positive")
    table = rng.dirichlet(np.ones(k), size=n)
    table = table / table.sum(axis=1, keepdims=True)
    sea = FuzzySEA(n)
    return sea.validate_partition([FuzzyElement._wrap(table[:, j].copy()) for j in range(k)])


def gen_random_partition(sea: SeaContract, k: int, rng: np.random.Generator) -> Partition:
    if isinstance(sea, BooleanSEA):
        return gen_random_boolean_partition(sea.n, k, rng)
    if isinstance(sea, FuzzySEA):
        return gen_random_fuzzy_partition(sea.n, k, rng)
    return gen_random_effect_partition(sea.d, k, rng)


# --------------------------------------------------------------------------
# campaign bookkeeping


@dataclass
class LawTally:
    """Pass/fail counts and the worst observed value for one law.

    ``worst`` is the largest deviation for equalities and the most negative
    residual for inequalities; ``worst_trial`` is the trial index it came
    from.
    """

    passed: int = 0
    failed: int = 0
    worst: Optional[float] = None
    worst_trial: Optional[int] = None

    def record(self, index: int, value: float, ok: bool, badness: float) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        if self.worst is None or badness > self._badness:
            self.worst = value
            self.worst_trial = index
            self._badness = badness

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed,
            "worst": self.worst,
            "worst_trial": self.worst_trial,
        }


@dataclass(frozen=True)
class CampaignConfig:
    """Settings for a randomized Theorem-law campaign.

    ``sizes`` are the sizes of ``A``, ``B`` and ``C``.  When ``size_pool`` is
    given, every trial instead draws each size uniformly from it.
    """

    instance: str
    dim: int
    trials: int
    seed: int
    sizes: tuple = (2, 3, 2)
    size_pool: Optional[tuple] = None
    tol: float = 1e-9
    log_base: float = 2.0

    def __post_init__(self):
        if self.instance not in KINDS:
            raise ValueError(f"instance must be one of {KINDS}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if len(self.sizes) != 3:
            raise ValueError("sizes must give |A|, |B|, |C|")
        pool = tuple(self.sizes) + tuple(self.size_pool or ())
        if min(pool) < 1:
            raise ValueError("partition sizes must be positive")
        if self.instance == "boolean" and max(pool) > self.dim:
            raise ValueError("Boolean partitions cannot have more blocks than atoms")
        instance_for(self.instance, self.dim)
        EntropyOptions(self.log_base)
        object.__setattr__(self, "sizes", tuple(int(k) for k in self.sizes))
        if self.size_pool is not None:
            object.__setattr__(self, "size_pool", tuple(int(k) for k in self.size_pool))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sizes"] = list(self.sizes)
        d["size_pool"] = None if self.size_pool is None else list(self.size_pool)
        return d


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    residuals: Optional[tuple] = None
    sizes: Optional[tuple] = None
    redraws: int = 0
    error: Optional[str] = None


def run_theorem_trial(config: CampaignConfig, index: int) -> TrialOutcome:
    """Generate ``(s, A, B, C)`` for one trial and evaluate the six residuals."""
    rng = trial_rng(config.seed, index)
    sea = instance_for(config.instance, config.dim)
    if config.size_pool is not None:
        sizes = tuple(int(k) for k in rng.choice(config.size_pool, size=3))
    else:
        sizes = config.sizes
    redraws = 0
    try:
        s = gen_random_state(sea, rng)
        parts = []
        for k in sizes:
            if isinstance(sea, QuantumSEA):
                part, r = _draw_effect_partition(sea.d, k, rng)
                redraws += r
            else:
                part = gen_random_partition(sea, k, rng)
            parts.append(part)
        res = theorem_residuals(s, *parts, EntropyOptions(config.log_base))
    except (SeaError, spectral.SpectralError) as exc:
        return TrialOutcome(index, sizes=sizes, redraws=redraws, error=f"{type(exc).__name__}: {exc}")
    return TrialOutcome(index, res.as_tuple(), sizes, redraws)


def _run_chunk(config: CampaignConfig, indices: Sequence[int]) -> list:
    return [run_theorem_trial(config, i) for i in indices]


LAW_NAMES = ("r1", "r2", "r3", "r4", "r5", "r6")


@dataclass
class CampaignReport:
    """Aggregated outcome of a campaign.

    ``runtime_s`` is kept out of :meth:`to_dict` unless asked for, so that
    identical configurations serialize identically.
    """

    config: CampaignConfig
    laws: dict
    trials_passed: int
    trials_failed: int
    generator_errors: int
    redraws: int
    failing_trials: list
    runtime_s: float = 0.0
    errors: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return self.trials_failed == 0 and self.generator_errors == 0

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "config": self.config.to_dict(),
            "all_passed": self.all_passed,
            "trials_passed": self.trials_passed,
            "trials_failed": self.trials_failed,
            "generator_errors": self.generator_errors,
            "redraws": self.redraws,
            "laws": {k: v.to_dict() for k, v in self.laws.items()},
            "failing_trials": [
                {"trial": i, "seed": self.config.seed} for i in self.failing_trials
            ],
            "errors": list(self.errors),
        }
        if include_timing:
            d["runtime_s"] = self.runtime_s
        return d


def _tally(config: CampaignConfig, outcomes: Sequence[TrialOutcome]) -> CampaignReport:
    laws = {name: LawTally() for name in LAW_NAMES}
    passed = failed = gen_errors = redraws = 0
    failing, errors = [], []
    tol = config.tol
    for out in sorted(outcomes, key=lambda o: o.index):
        redraws += out.redraws
        if out.error is not None:
            gen_errors += 1
            failing.append(out.index)
            errors.append({"trial": out.index, "error": out.error})
            continue
        r1, *rest = out.residuals
        laws["r1"].record(out.index, r1, abs(r1) <= tol, abs(r1))
        for name, r in zip(LAW_NAMES[1:], rest):
            laws[name].record(out.index, r, r >= -tol, -r)
        if abs(r1) <= tol and min(rest) >= -tol:
            passed += 1
        else:
            failed += 1
            failing.append(out.index)
    return CampaignReport(config, laws, passed, failed, gen_errors, redraws, failing, errors=errors)


def run_theorem_campaign(config: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Run ``config.trials`` independent trials and aggregate by trial index.

    ``workers > 1`` spreads contiguous chunks of trials over processes; the
    report does not depend on it.
    """
    if workers < 1:
        raise ValueError("workers must be positive")
    start = time.perf_counter()
    indices = list(range(config.trials))
    if workers == 1:
        outcomes = _run_chunk(config, indices)
    else:
        chunks = [indices[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(partial(_run_chunk, config), chunks) for o in part]
    report = _tally(config, outcomes)
    report.runtime_s = time.perf_counter() - start
    return report


# --------------------------------------------------------------------------
# sequential effect algebra axioms

AXIOM_TOLERANCES = {
    "boolean": {"SEA1": 0.0, "SEA2": 0.0, "SEA3": 0.0, "SEA4": 0.0, "SEA5": 0.0},
    "fuzzy": {"SEA1": 1e-12, "SEA2": 0.0, "SEA3": 0.0, "SEA4": 1e-12, "SEA5": 1e-12},
    "quantum": {"SEA1": 1e-10, "SEA2": 1e-12, "SEA3": 1e-9, "SEA4": 1e-9, "SEA5": 1e-9},
}


@dataclass
class AxiomReport:
    instance: str
    dim: int
    trials: int
    laws: dict
    tolerances: dict

    @property
    def all_passed(self) -> bool:
        return all(t.failed == 0 for t in self.laws.values())

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "dim": self.dim,
            "trials": self.trials,
            "all_passed": self.all_passed,
            "tolerances": dict(self.tolerances),
            "laws": {k: v.to_dict() for k, v in self.laws.items()},
        }


def _commuting_triple(sea: SeaContract, rng: np.random.Generator, polynomial: bool):
    """Three pairwise commuting elements ``a, b, c`` with ``a + b <= one``."""
    if not isinstance(sea, QuantumSEA):
        a, b, c = (gen_random_element(sea, rng) for _ in range(3))
        b_small = sea.seq(sea.complement(a), b)  # b o a' is orthogonal to a in both classical instances
        return a, b_small, c
    d = sea.d
    if polynomial:
        # polynomials with nonnegative coefficients summing to <= 1 map [0,1] into [0,1]
        h = _ginibre(d, rng)
        h = spectral.hermitize(h)
        w = np.linalg.eigvalsh(h)
        span = max(w[-1] - w[0], 1e-12)
        t = spectral.hermitize((h - w[0] * np.eye(d)) / span)
        powers = [np.eye(d, dtype=complex)]
        for _ in range(3):
            powers.append(powers[-1] @ t)

        def poly(scale):
            coef = rng.dirichlet(np.ones(4)) * scale
            return QuantumEffect._wrap(spectral.clip_spectrum(sum(c * p for c, p in zip(coef, powers))))

        return poly(0.5), poly(0.5), poly(1.0)
    u = gen_random_unitary(d, rng)
    split = rng.dirichlet(np.ones(3), size=d)

    def diag(x):
        return QuantumEffect._wrap(spectral.hermitize((u * x) @ u.conj().T))

    return diag(split[:, 0]), diag(split[:, 1]), diag(rng.random(d))


def _annihilating_pair(sea: SeaContract, rng: np.random.Generator):
    """``a, b`` with ``a o b = 0`` by construction."""
    if isinstance(sea, BooleanSEA):
        a = gen_random_element(sea, rng)
        b = sea.seq(sea.complement(a), gen_random_element(sea, rng))
        return a, b
    if isinstance(sea, FuzzySEA):
        support = rng.random(sea.n) < 0.5
        a = FuzzyElement._wrap(np.where(support, rng.random(sea.n), 0.0))
        b = FuzzyElement._wrap(np.where(support, 0.0, rng.random(sea.n)))
        return a, b
    d = sea.d
    rank = int(rng.integers(0, d + 1))
    p = gen_random_projection(d, rank, rng) if rank else np.zeros((d, d), dtype=complex)
    q = np.eye(d) - p
    if rng.random() < 0.5:
        b = q
    else:
        # compressing any effect onto range(I - P) keeps it an effect
        b = q @ gen_random_element(sea, rng).matrix @ q
    return QuantumEffect._wrap(p), QuantumEffect._wrap(spectral.hermitize(b))


def check_sea_axioms(instance: str, d: int, trials: int, rng: np.random.Generator) -> AxiomReport:
    """Randomized checks of SEA1-SEA5 on one instance.

    SEA4 and SEA5 only constrain commuting inputs, so those checks build
    commuting families on purpose: diagonal in a shared random basis, or
    polynomials in one random Hermitian matrix.  Deviations are measured with
    the instance's distance.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sea = instance_for(instance, d)
    tols = AXIOM_TOLERANCES[instance]
    laws = {name: LawTally() for name in tols}

    def record(name, i, dev):
        laws[name].record(i, dev, dev <= tols[name], dev)

    for i in range(trials):
        # SEA1: b -> a o b is additive on defined sums
        a = gen_random_element(sea, rng)
        k = min(3, sea.n) if isinstance(sea, BooleanSEA) else 3
        part = gen_random_partition(sea, k, rng)
        b, c = part[0], (part[1] if len(part) > 1 else sea.zero)
        bc = sea.try_oplus(b, c)
        rhs = sea.try_oplus(sea.seq(a, b), sea.seq(a, c))
        record("SEA1", i, math.inf if rhs is None else sea.distance(sea.seq(a, bc), rhs))

        # SEA2: I o a = a
        record("SEA2", i, sea.distance(sea.seq(sea.one, a), a))

        # SEA3: a o b = 0 implies b o a = a o b
        a, b = _annihilating_pair(sea, rng)
        ab, ba = sea.seq(a, b), sea.seq(b, a)
        record("SEA3", i, max(sea.distance(ab, sea.zero), sea.distance(ab, ba)))

        # SEA4: a|b gives a|b' and a o (b o c) = (a o b) o c for every c
        a, b, _ = _commuting_triple(sea, rng, polynomial=bool(i % 2))
        c = gen_random_element(sea, rng)
        nb = sea.complement(b)
        dev = max(
            sea.distance(sea.seq(a, nb), sea.seq(nb, a)),
            sea.distance(sea.seq(a, sea.seq(b, c)), sea.seq(sea.seq(a, b), c)),
        )
        record("SEA4", i, dev)

        # SEA5: c|a and c|b give c|(a o b) and c|(a (+) b)
        a, b, c = _commuting_triple(sea, rng, polynomial=bool(i % 2))
        ab = sea.seq(a, b)
        a_plus_b = sea.try_oplus(a, b)
        if a_plus_b is None:
            dev = math.inf
        else:
            dev = max(
                sea.distance(sea.seq(c, ab), sea.seq(ab, c)),
                sea.distance(sea.seq(c, a_plus_b), sea.seq(a_plus_b, c)),
            )
        record("SEA5", i, dev)

    return AxiomReport(instance, d, trials, laws, tols)


# --------------------------------------------------------------------------
# log sum inequality


def _xlog_ratio(x: float, y: float) -> float:
    if x == 0:
        return 0.0
    if y == 0:
        return math.inf
    # log x - log y survives ratios that under- or overflow
    return x * (math.log(x) - math.log(y))


def check_log_sum(a: Sequence[float], b: Sequence[float], base: float = 2.0) -> float:
    """``sum a_i log(a_i/b_i) - (sum a) log(sum a / sum b)``.

    Uses ``0 log(0/y) = 0`` and ``x log(x/0) = inf`` for ``x > 0``; an infinite
    left-hand side yields ``inf``.
    """
    if len(a) != len(b):
        raise ValueError("a and b must have equal lengths")
    if any(x < 0 for x in a) or any(y < 0 for y in b):
        raise ValueError("entries must be nonnegative")
    lhs = sum(_xlog_ratio(float(x), float(y)) for x, y in zip(a, b))
    if math.isinf(lhs):
        return math.inf
    rhs = _xlog_ratio(float(sum(a)), float(sum(b)))
    return (lhs - rhs) / math.log(base)


@dataclass
class LogSumReport:
    trials: int
    min_residual: float
    argmin_trial: int
    infinite: int
    equality_max: float

    def passed(self, tol: float = 1e-12) -> bool:
        return self.min_residual >= -tol and self.equality_max <= tol

    def to_dict(self) -> dict:
        return asdict(self)


def run_log_sum_fuzz(trials: int, rng: np.random.Generator, max_len: int = 10, high: float = 10.0) -> LogSumReport:
    """Residuals on random pairs (lengths 1..max_len, entries U[0, high]).

    Each trial also evaluates the equality case ``b = a``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    lo, arg, inf, eq = math.inf, -1, 0, 0.0
    for i in range(trials):
        n = int(rng.integers(1, max_len + 1))
        a = rng.uniform(0, high, n)
        b = rng.uniform(0, high, n)
        r = check_log_sum(a, b)
        if math.isinf(r):
            inf += 1
        elif r < lo:
            lo, arg = r, i
        eq = max(eq, abs(check_log_sum(a, a)))
    return LogSumReport(trials, lo, arg, inf, eq)


# --------------------------------------------------------------------------
# quantum logic: Bayes property, orthomodularity, distributivity


def _meet(sea: SeaContract, a, b):
    if isinstance(sea, QuantumSEA):
        if not (sea.is_sharp(a) and sea.is_sharp(b)):
            raise MeetUnavailable("meets in E(H) are only computed between projections")
    return sea.meet(a, b)


def check_bayes(s: State, A: Partition, probes: Sequence) -> list:
    """``s(b) - sum_i s(a_i meet b)`` for each probe ``b``."""
    sea = A.sea
    return [
        eval_state(s, b) - sum(eval_state(s, _meet(sea, a, b)) for a in A)
        for b in probes
    ]


def orthomodular_gap(p, r) -> float:
    """``||R - (P join (R meet P'))||_F`` for projections ``P <= R``."""
    p = spectral.hermitize(p)
    eye = np.eye(p.shape[0])
    return spectral.frobenius(
        r - spectral.join_projections(p, spectral.meet_projections(r, eye - p))
    )


@dataclass
class ScenarioRecord:
    """Named scenario: computed values plus verdicts derived from them."""

    id: str
    values: dict
    verdicts: dict

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def example_2_3_matrices() -> dict:
    """Projections onto the coordinate axes and onto the two diagonals of C^2."""
    return {
        "P1": np.array([[0, 0], [0, 1]], dtype=complex),
        "P2": np.array([[1, 0], [0, 0]], dtype=complex),
        "Q1": 0.5 * np.array([[1, 1], [1, 1]], dtype=complex),
        "Q2": 0.5 * np.array([[1, -1], [-1, 1]], dtype=complex),
    }


def scenario_example_2_3() -> ScenarioRecord:
    """Meet-based refinement collapses, the sequential one does not.

    With ``A = {Q1, Q2}``, ``B = {P1, P2}`` and ``rho = I/2``: all meets
    ``P_i ^ Q_j`` vanish, so the Bayes identity would force
    ``s(Q1) + s(Q2) = 0``; the sequential refinement
    ``{1/2 Q1, 1/2 Q1, 1/2 Q2, 1/2 Q2}`` sums to ``I`` and the entropies obey
    the chain rule ``2 = 1 + 1``.
    """
    m = example_2_3_matrices()
    sea = QuantumSEA(2)
    P1, P2, Q1, Q2 = (sea.element(m[k]) for k in ("P1", "P2", "Q1", "Q2"))
    A = sea.validate_partition([Q1, Q2])
    B = sea.validate_partition([P1, P2])
    s = DensityMatrix(np.eye(2) / 2)

    meets = {
        f"P{i}^Q{j}": spectral.frobenius(spectral.meet_projections(m[f"P{i}"], m[f"Q{j}"]))
        for i in (1, 2)
        for j in (1, 2)
    }
    sum_q = eval_state(s, Q1) + eval_state(s, Q2)
    sum_meets = sum(
        eval_state(s, sea.meet(p, q)) for q in (Q1, Q2) for p in (P1, P2)
    )
    bayes = check_bayes(s, B, [Q1, Q2])

    AB = sea.refine(A, B)
    expected = [0.5 * Q1.matrix, 0.5 * Q1.matrix, 0.5 * Q2.matrix, 0.5 * Q2.matrix]
    refine_dev = max(spectral.frobenius(e.matrix - x) for e, x in zip(AB, expected))
    unit_dev = spectral.frobenius(sum(e.matrix for e in AB) - np.eye(2))

    h_A = entropy(s, A)
    h_B_A = cond_entropy(s, B, A)
    h_AB = entropy(s, AB)

    values = {
        "matrices": m,
        "meet_norms": meets,
        "sum_s_Q": sum_q,
        "sum_s_meets": sum_meets,
        "bayes_residuals": bayes,
        "refinement": [e.matrix for e in AB],
        "refinement_deviation": refine_dev,
        "refinement_unit_deviation": unit_dev,
        "H_A": h_A,
        "H_B_given_A": h_B_A,
        "H_AB": h_AB,
    }
    verdicts = {
        "meets_vanish": max(meets.values()) <= 1e-10,
        "bayes_contradiction": abs(sum_q - 1.0) <= 1e-12
        and abs(sum_meets) <= 1e-10
        and all(abs(r - 0.5) <= 1e-10 for r in bayes),
        "refinement_sums_to_unit": refine_dev <= 1e-10 and unit_dev <= 1e-10,
        "entropy_chain_rule": abs(h_A - 1) <= 1e-12
        and abs(h_B_A - 1) <= 1e-12
        and abs(h_AB - 2) <= 1e-12,
    }
    return ScenarioRecord("example-2-3", values, verdicts)


def scenario_nondistributivity() -> ScenarioRecord:
    """Distributivity fails on P(C^2) while orthomodularity holds.

    ``P1 ^ (Q1 v Q2) = P1`` but ``(P1 ^ Q1) v (P1 ^ Q2) = 0``.  The
    orthomodular law is then checked on every nested pair drawn from
    ``{0, P1, P2, Q1, Q2, I}``.
    """
    m = example_2_3_matrices()
    lhs = spectral.meet_projections(m["P1"], spectral.join_projections(m["Q1"], m["Q2"]))
    rhs = spectral.join_projections(
        spectral.meet_projections(m["P1"], m["Q1"]), spectral.meet_projections(m["P1"], m["Q2"])
    )
    gap = spectral.frobenius(lhs - rhs)

    family = {"0": np.zeros((2, 2), dtype=complex), **m, "I": np.eye(2, dtype=complex)}
    sea = QuantumSEA(2)
    om = {}
    for pn, p in family.items():
        for rn, r in family.items():
            if sea.leq(QuantumEffect._wrap(p), QuantumEffect._wrap(r)):
                om[f"{pn}<={rn}"] = orthomodular_gap(p, r)

    values = {"lhs": lhs, "rhs": rhs, "distributivity_gap": gap, "orthomodular_gaps": om}
    verdicts = {
        "distributive_law_fails": abs(gap - 1.0) <= 1e-10,
        "lhs_is_P1": spectral.frobenius(lhs - m["P1"]) <= 1e-10,
        "orthomodular_law_holds": max(om.values()) <= 1e-8,
    }
    return ScenarioRecord("nondistributivity", values, verdicts)


SCENARIOS: dict[str, Callable[[], ScenarioRecord]] = {
    "example-2-3": scenario_example_2_3,
    "nondistributivity": scenario_nondistributivity,
}
