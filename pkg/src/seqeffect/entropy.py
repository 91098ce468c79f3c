"""States, conditional states and partition entropies.

A state is an additive map ``s`` from elements to ``[0, 1]`` with
``s(one) = 1``.  Each instance has its own concrete representation:

* :class:`AtomWeights` -- probability vector over the atoms of a Boolean algebra,
* :class:`PointWeights` -- probability vector over the points of a fuzzy ground set,
* :class:`DensityMatrix` -- a density operator, ``s(A) = tr(rho A)``.

Entropies follow the usual convention ``0 log 0 = 0`` and conditioning on a
zero-probability element gives conditional probability 0.  The default log
base is 2.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import spectral
from .core import InstanceMismatch, Partition, SeaContract
from .instances import BooleanSEA, FuzzySEA, QuantumSEA

__all__ = [
    "State",
    "AtomWeights",
    "PointWeights",
    "DensityMatrix",
    "EntropyOptions",
    "TheoremResiduals",
    "eval_state",
    "cond_prob",
    "state_after",
    "xlogx",
    "entropy",
    "cond_entropy",
    "refinement_entropy",
    "theorem_residuals",
]

PROB_SLACK = 1e-12
WEIGHT_TOL = 1e-12


def _clamp(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def _probability_vector(weights, n: Optional[int], what: str) -> np.ndarray:
    w = np.array(weights, dtype=float).reshape(-1)
    if n is not None and w.size != n:
        raise ValueError(f"{what} needs {n} weights, got {w.size}")
    if w.size < 1 or not np.all(np.isfinite(w)):
        raise ValueError(f"{what} weights must be finite and nonempty")
    if w.min() < -WEIGHT_TOL:
        raise ValueError(f"{what} weights must be nonnegative")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise ValueError(f"{what} weights sum to {w.sum()!r}, not 1")
    w = np.clip(w, 0.0, None)
    w.setflags(write=False)
    return w


class State(ABC):
    """Normalized additive functional on one instance."""

    __slots__ = ()

    @property
    @abstractmethod
    def sea(self) -> SeaContract: ...

    @abstractmethod
    def _evaluate(self, a) -> float: ...

    @abstractmethod
    def _after(self, A: Partition) -> "State": ...

    def __call__(self, a) -> float:
        return eval_state(self, a)


class AtomWeights(State):
    __slots__ = ("weights",)

    def __init__(self, weights, n: Optional[int] = None):
        object.__setattr__(self, "weights", _probability_vector(weights, n, "atom"))

    @classmethod
    def _wrap(cls, w: np.ndarray) -> "AtomWeights":
        obj = cls.__new__(cls)
        w.setflags(write=False)
        object.__setattr__(obj, "weights", w)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("states are immutable")

    @property
    def sea(self) -> BooleanSEA:
        return BooleanSEA(self.weights.size)

    def _evaluate(self, a) -> float:
        return float(sum(self.weights[i] for i in range(a.n) if a.mask >> i & 1))

    def _after(self, A):
        w = np.zeros_like(self.weights)
        for a in A:
            w = w + self.weights * a.indicator()
        return AtomWeights._wrap(w)

    def __repr__(self) -> str:
        return f"AtomWeights({self.weights.tolist()})"


class PointWeights(State):
    """``s(mu) = sum_x w(x) mu(x)``."""

    __slots__ = ("weights",)

    def __init__(self, weights, n: Optional[int] = None):
        object.__setattr__(self, "weights", _probability_vector(weights, n, "point"))

    @classmethod
    def _wrap(cls, w: np.ndarray) -> "PointWeights":
        obj = cls.__new__(cls)
        w.setflags(write=False)
        object.__setattr__(obj, "weights", w)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("states are immutable")

    @property
    def sea(self) -> FuzzySEA:
        return FuzzySEA(self.weights.size)

    def _evaluate(self, a) -> float:
        return float(self.weights @ a.values)

    def _after(self, A):
        total = np.zeros_like(self.weights)
        for a in A:
            total = total + a.values
        return PointWeights._wrap(self.weights * total)

    def __repr__(self) -> str:
        return f"PointWeights({self.weights.tolist()})"


class DensityMatrix(State):
    """``s(A) = tr(rho A)`` for a density operator ``rho``."""

    __slots__ = ("rho",)

    def __init__(self, rho, tol: float = 1e-9):
        arr = spectral.as_matrix(rho)
        if not spectral.is_density(arr, tol):
            raise ValueError("not a density matrix (needs Hermitian, PSD, trace 1)")
        object.__setattr__(self, "rho", spectral.hermitize(arr))
        self.rho.setflags(write=False)

    @classmethod
    def _wrap(cls, rho: np.ndarray) -> "DensityMatrix":
        obj = cls.__new__(cls)
        rho.setflags(write=False)
        object.__setattr__(obj, "rho", rho)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("states are immutable")

    @property
    def sea(self) -> QuantumSEA:
        return QuantumSEA(self.rho.shape[0])

    def _evaluate(self, a) -> float:
        # tr(rho A) without forming the product
        return float(np.sum(self.rho * a.matrix.T).real)

    def _after(self, A):
        out = np.zeros_like(self.rho)
        for a in A:
            out = out + a.sqrt @ self.rho @ a.sqrt
        return DensityMatrix._wrap((out + out.conj().T) / 2)

    def __repr__(self) -> str:
        return f"DensityMatrix({np.round(self.rho, 6).tolist()})"


@dataclass(frozen=True)
class EntropyOptions:
    log_base: float = 2.0

    def __post_init__(self):
        if not self.log_base > 1:
            raise ValueError("log base must exceed 1")

    @property
    def ln_base(self) -> float:
        return math.log(self.log_base)


_DEFAULT = EntropyOptions()


@dataclass(frozen=True)
class TheoremResiduals:
    """Signed gaps for the six entropy laws.

    ``r1`` is the chain-rule gap and should vanish; ``r2`` .. ``r6`` are
    "right side minus left side" of the five inequalities and should be
    nonnegative.
    """

    r1: float
    r2: float
    r3: float
    r4: float
    r5: float
    r6: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def passes(self, tol: float) -> bool:
        return abs(self.r1) <= tol and min(self.as_tuple()[1:]) >= -tol


def _check_state(s: State, sea: SeaContract) -> None:
    if s.sea != sea:
        raise InstanceMismatch(f"state on {s.sea!r} used with {sea!r}")


def eval_state(s: State, a) -> float:
    """``s(a)``, clamped into ``[0, 1]``."""
    _check_state(s, a.sea)
    return _clamp(s._evaluate(a))


def cond_prob(s: State, b, a) -> float:
    """``s(b | a) = s(a o b) / s(a)``, or 0 when ``s(a) = 0``."""
    pa = eval_state(s, a)
    if pa == 0.0:
        return 0.0
    return _clamp(eval_state(s, a.sea.seq(a, b)) / pa)


def state_after(s: State, A: Partition) -> State:
    """State after measuring ``A`` without recording the outcome.

    Satisfies ``s_A(b) = sum_i s(a_i o b)`` for every ``b``.
    """
    _check_state(s, A.sea)
    return s._after(A)


def xlogx(x: float, base: float = 2.0) -> float:
    """``x log_base(x)`` with ``0 log 0 = 0``."""
    if not -PROB_SLACK <= x <= 1 + PROB_SLACK:
        raise ValueError(f"probability {x!r} outside [0, 1]")
    x = _clamp(x)
    if x == 0.0:
        return 0.0
    return x * math.log(x) / math.log(base)


def entropy(s: State, A: Partition, opts: Optional[EntropyOptions] = None) -> float:
    """``H_s(A) = -sum_i s(a_i) log s(a_i)``."""
    opts = opts or _DEFAULT
    _check_state(s, A.sea)
    return 0.0 - sum(xlogx(eval_state(s, a), opts.log_base) for a in A)


def cond_entropy(
    s: State, B: Partition, A: Partition, opts: Optional[EntropyOptions] = None
) -> float:
    """``H_s(B|A) = -sum_ij s(a_i o b_j) log s(b_j | a_i)``.

    ``B`` may itself be a refinement, which is how conditional entropies of
    compound partitions are formed.
    """
    opts = opts or _DEFAULT
    sea = A.sea
    if B.sea != sea:
        raise InstanceMismatch("partitions belong to different instances")
    _check_state(s, sea)
    ln_base = opts.ln_base
    total = 0.0
    for a in A:
        pa = eval_state(s, a)
        if pa == 0.0:
            continue
        for b in B:
            joint = eval_state(s, sea.seq(a, b))
            cond = _clamp(joint / pa)
            if joint == 0.0 or cond == 0.0:
                continue
            total -= joint * math.log(cond) / ln_base
    return total


def refinement_entropy(
    s: State, A: Partition, B: Partition, opts: Optional[EntropyOptions] = None
) -> float:
    """``H_s(A o B)``, the entropy of the refinement ``[a_i o b_j]``."""
    return entropy(s, A.sea.refine(A, B), opts)


def theorem_residuals(
    s: State,
    A: Partition,
    B: Partition,
    C: Partition,
    opts: Optional[EntropyOptions] = None,
) -> TheoremResiduals:
    """Evaluate the six entropy laws on one ``(s, A, B, C)``.

    ======  ======================================================
    r1      H(A o B) - H(B|A) - H(A)
    r2      H(A o B|C) - H(A|C)
    r3      H_{s_A}(B) - H(B|A)
    r4      H(A) + H_{s_A}(B) - H(A o B)
    r5      H(A o B) - max(H_{s_A}(B), H(A))
    r6      H_{s_C}(A|B) + H(B|C) - H(B o A|C)
    ======  ======================================================
    """
    sea = A.sea
    AB = sea.refine(A, B)
    BA = sea.refine(B, A)
    s_A = state_after(s, A)
    s_C = state_after(s, C)

    h_A = entropy(s, A, opts)
    h_AB = entropy(s, AB, opts)
    h_B_A = cond_entropy(s, B, A, opts)
    h_sA_B = entropy(s_A, B, opts)
    h_A_C = cond_entropy(s, A, C, opts)
    h_AB_C = cond_entropy(s, AB, C, opts)
    h_sC_A_B = cond_entropy(s_C, A, B, opts)
    h_B_C = cond_entropy(s, B, C, opts)
    h_BA_C = cond_entropy(s, BA, C, opts)

    return TheoremResiduals(
        r1=h_AB - h_B_A - h_A,
        r2=h_AB_C - h_A_C,
        r3=h_sA_B - h_B_A,
        r4=h_A + h_sA_B - h_AB,
        r5=h_AB - max(h_sA_B, h_A),
        r6=h_sC_A_B + h_B_C - h_BA_C,
    )
