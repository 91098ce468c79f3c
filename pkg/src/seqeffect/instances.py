"""Boolean, fuzzy and quantum sequential effect algebras.

Ground sets are the index sets ``0..n-1``.

========  =========================  ===================  ===============
instance  a (+) b defined iff        a o b                a'
========  =========================  ===================  ===============
boolean   a & b empty                a & b                X minus a
fuzzy     mu_a + mu_b <= 1           mu_a * mu_b          1 - mu_a
quantum   A + B <= I                 A^1/2 B A^1/2        I - A
========  =========================  ===================  ===============
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import spectral
from .core import Element, SeaContract

__all__ = [
    "BooleanElement",
    "FuzzyElement",
    "QuantumEffect",
    "BooleanSEA",
    "FuzzySEA",
    "QuantumSEA",
    "boolean_instance",
    "fuzzy_instance",
    "quantum_instance",
    "instance_for",
    "FUZZY_TOL",
    "QUANTUM_TOL",
]

FUZZY_TOL = 1e-12
QUANTUM_TOL = 1e-9
SHARP_TOL = 1e-8


# --------------------------------------------------------------------------
# Boolean algebra of subsets


@dataclass(frozen=True)
class BooleanElement(Element):
    """Subset of ``{0, ..., n-1}`` stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground size must be positive")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside ground size {self.n}")

    @property
    def sea(self) -> "BooleanSEA":
        return BooleanSEA(self.n)

    @property
    def members(self) -> frozenset:
        return frozenset(i for i in range(self.n) if self.mask >> i & 1)

    def indicator(self) -> np.ndarray:
        return np.array([(self.mask >> i) & 1 for i in range(self.n)], dtype=float)

    def to_fuzzy(self) -> "FuzzyElement":
        """Indicator function as a crisp fuzzy set."""
        return FuzzyElement(self.indicator())

    def __repr__(self) -> str:
        return f"BooleanElement(n={self.n}, members={sorted(self.members)})"


@dataclass(frozen=True)
class BooleanSEA(SeaContract):
    n: int
    kind = "boolean"
    tol = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground size must be positive")

    def element(self, members: Iterable[int]) -> BooleanElement:
        mask = 0
        for i in members:
            if not 0 <= i < self.n:
                raise ValueError(f"member {i} outside 0..{self.n - 1}")
            mask |= 1 << i
        return BooleanElement(self.n, mask)

    def atom(self, i: int) -> BooleanElement:
        return self.element([i])

    @property
    def zero(self) -> BooleanElement:
        return BooleanElement(self.n, 0)

    @property
    def one(self) -> BooleanElement:
        return BooleanElement(self.n, (1 << self.n) - 1)

    def _oplus(self, a, b):
        if a.mask & b.mask:
            return None
        return BooleanElement(self.n, a.mask | b.mask)

    def _seq(self, a, b):
        return BooleanElement(self.n, a.mask & b.mask)

    def _complement(self, a):
        return BooleanElement(self.n, ~a.mask & ((1 << self.n) - 1))

    def _leq(self, a, b):
        return a.mask & ~b.mask == 0

    def _is_sharp(self, a):
        return True

    def distance(self, a, b):
        return float(bin(a.mask ^ b.mask).count("1"))

    def meet(self, a, b) -> BooleanElement:
        self.check(a, b)
        return self._seq(a, b)

    def join(self, a, b) -> BooleanElement:
        self.check(a, b)
        return BooleanElement(self.n, a.mask | b.mask)


# --------------------------------------------------------------------------
# Fuzzy sets


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FuzzyElement(Element):
    """Membership vector with entries in ``[0, 1]``."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float).reshape(-1)
        if arr.size < 1:
            raise ValueError("fuzzy set on an empty ground set")
        if not np.all(np.isfinite(arr)):
            raise ValueError("memberships must be finite")
        if arr.min() < -FUZZY_TOL or arr.max() > 1 + FUZZY_TOL:
            raise ValueError("memberships must lie in [0, 1]")
        object.__setattr__(self, "values", _frozen(np.clip(arr, 0.0, 1.0)))

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "FuzzyElement":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "values", _frozen(arr))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyElement is immutable")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def sea(self) -> "FuzzySEA":
        return FuzzySEA(self.n)

    def __eq__(self, other):
        if not isinstance(other, FuzzyElement):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    def __repr__(self) -> str:
        return f"FuzzyElement({self.values.tolist()})"


@dataclass(frozen=True)
class FuzzySEA(SeaContract):
    n: int
    kind = "fuzzy"
    tol = FUZZY_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground size must be positive")

    def element(self, values) -> FuzzyElement:
        el = FuzzyElement(values)
        if el.n != self.n:
            raise ValueError(f"expected {self.n} memberships, got {el.n}")
        return el

    @property
    def zero(self) -> FuzzyElement:
        return FuzzyElement._wrap(np.zeros(self.n))

    @property
    def one(self) -> FuzzyElement:
        return FuzzyElement._wrap(np.ones(self.n))

    def _oplus(self, a, b):
        total = a.values + b.values
        if total.max() > 1 + FUZZY_TOL:
            return None
        return FuzzyElement._wrap(np.minimum(total, 1.0))

    def _seq(self, a, b):
        return FuzzyElement._wrap(a.values * b.values)

    def _complement(self, a):
        return FuzzyElement._wrap(1.0 - a.values)

    def _leq(self, a, b):
        return bool(np.all(a.values <= b.values + FUZZY_TOL))

    def _is_sharp(self, a):
        v = a.values
        return bool(np.all((v <= FUZZY_TOL) | (v >= 1 - FUZZY_TOL)))

    def distance(self, a, b):
        return float(np.max(np.abs(a.values - b.values)))

    def meet(self, a, b) -> FuzzyElement:
        """Pointwise minimum, the infimum for the pointwise order."""
        self.check(a, b)
        return FuzzyElement._wrap(np.minimum(a.values, b.values))


# --------------------------------------------------------------------------
# Quantum effects


class QuantumEffect(Element):
    """Hermitian matrix ``A`` with ``0 <= A <= I``.

    The square root needed by the sequential product is computed once and
    cached; effects produced by ``seq`` reuse the eigensystem found while
    clipping, so chained products cost one eigendecomposition each.
    """

    __slots__ = ("matrix", "_eig", "_sqrt")

    def __init__(self, matrix, tol: float = QUANTUM_TOL):
        arr = spectral.as_matrix(matrix)
        if not spectral.is_effect(arr, tol):
            raise ValueError("matrix is not an effect (needs Hermitian, 0 <= A <= I)")
        self._init(spectral.hermitize(arr), None)

    def _init(self, matrix, eig):
        object.__setattr__(self, "matrix", _frozen(matrix))
        object.__setattr__(self, "_eig", eig)
        object.__setattr__(self, "_sqrt", None)

    @classmethod
    def _wrap(cls, matrix: np.ndarray, eig=None) -> "QuantumEffect":
        obj = cls.__new__(cls)
        obj._init(matrix, eig)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuantumEffect is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def sea(self) -> "QuantumSEA":
        return QuantumSEA(self.dim)

    @property
    def sqrt(self) -> np.ndarray:
        if self._sqrt is None:
            if self._eig is None:
                root = spectral.sqrt_psd(self.matrix)
            else:
                w, v = self._eig
                root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
                root = (root + root.conj().T) / 2
            object.__setattr__(self, "_sqrt", _frozen(root))
        return self._sqrt

    def __eq__(self, other):
        if not isinstance(other, QuantumEffect):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self) -> str:
        return f"QuantumEffect(dim={self.dim}, matrix={np.round(self.matrix, 6).tolist()})"


@dataclass(frozen=True)
class QuantumSEA(SeaContract):
    d: int
    kind = "quantum"
    tol = QUANTUM_TOL

    def __post_init__(self):
        if not 1 <= self.d <= spectral.MAX_DIM:
            raise ValueError(f"dimension must be in 1..{spectral.MAX_DIM}")

    @property
    def n(self) -> int:
        return self.d

    def element(self, matrix) -> QuantumEffect:
        el = QuantumEffect(matrix)
        if el.dim != self.d:
            raise ValueError(f"expected a {self.d}x{self.d} matrix, got dim {el.dim}")
        return el

    @property
    def zero(self) -> QuantumEffect:
        return QuantumEffect._wrap(np.zeros((self.d, self.d), dtype=complex))

    @property
    def one(self) -> QuantumEffect:
        eye = np.eye(self.d, dtype=complex)
        return QuantumEffect._wrap(eye, (np.ones(self.d), np.eye(self.d, dtype=complex)))

    def _oplus(self, a, b):
        total = a.matrix + b.matrix
        if np.linalg.eigvalsh(total)[-1] > 1 + QUANTUM_TOL:
            return None
        return QuantumEffect._wrap(total)

    def _seq(self, a, b):
        root = a.sqrt
        m, w, v = spectral.clipped_eig(root @ b.matrix @ root)
        return QuantumEffect._wrap(m, (w, v))

    def _complement(self, a):
        return QuantumEffect._wrap(np.eye(self.d) - a.matrix)

    def _leq(self, a, b):
        return bool(np.linalg.eigvalsh(b.matrix - a.matrix)[0] >= -QUANTUM_TOL)

    def _is_sharp(self, a):
        m = a.matrix
        return spectral.frobenius(m @ m - m) <= SHARP_TOL

    def distance(self, a, b):
        return spectral.frobenius(a.matrix - b.matrix)

    def meet(self, a, b) -> QuantumEffect:
        """Lattice meet of two projections; other effects raise NotProjection."""
        self.check(a, b)
        return QuantumEffect._wrap(spectral.meet_projections(a.matrix, b.matrix))

    def join(self, a, b) -> QuantumEffect:
        self.check(a, b)
        return QuantumEffect._wrap(spectral.join_projections(a.matrix, b.matrix))


def boolean_instance(n: int) -> BooleanSEA:
    return BooleanSEA(n)


def fuzzy_instance(n: int) -> FuzzySEA:
    return FuzzySEA(n)


def quantum_instance(d: int) -> QuantumSEA:
    return QuantumSEA(d)


def instance_for(kind: str, size: int) -> SeaContract:
    """Look up an instance by its kind name (``boolean``, ``fuzzy``, ``quantum``)."""
    try:
        factory = {"boolean": BooleanSEA, "fuzzy": FuzzySEA, "quantum": QuantumSEA}[kind]
    except KeyError:
        raise ValueError(f"unknown instance kind {kind!r}") from None
    return factory(size)
