"""Sequential effect algebra contract, partitions and refinements.

An instance (see :mod:`seqeffect.instances`) supplies the partial sum
``oplus``, the sequential product ``seq`` and the complement; everything
else here (order, partitions, refinement) is derived from those three.
Partial sums that are not defined return ``None``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

__all__ = [
    "SeaError",
    "InstanceMismatch",
    "UndefinedSum",
    "NotUnit",
    "InconsistentRefinement",
    "Element",
    "SeaContract",
    "Partition",
    "try_oplus",
    "orthosum",
    "seq",
    "complement",
    "leq",
    "is_sharp",
    "seq_commutes",
    "validate_partition",
    "refine",
]


class SeaError(Exception):
    """Base class for algebra-level errors."""


class InstanceMismatch(SeaError, TypeError):
    """Operands belong to different instances."""


class UndefinedSum(SeaError):
    """An orthosum step was undefined (the running sum would exceed one)."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class NotUnit(SeaError):
    """The orthosum is defined but is not the unit."""


class InconsistentRefinement(SeaError):
    """A refinement failed validation; in floating point this means drift."""


class Element(ABC):
    """An element of some instance; ``sea`` returns the owning instance."""

    __slots__ = ()

    @property
    @abstractmethod
    def sea(self) -> "SeaContract": ...


class SeaContract(ABC):
    """Operations every sequential effect algebra instance provides.

    Subclasses implement the underscored primitives and assume operands
    were already checked to belong to ``self``.
    """

    kind: str = "abstract"
    #: tolerance used by :meth:`equal` and partition validation
    tol: float = 0.0

    @property
    @abstractmethod
    def zero(self) -> Element: ...

    @property
    @abstractmethod
    def one(self) -> Element: ...

    @abstractmethod
    def _oplus(self, a, b): ...

    @abstractmethod
    def _seq(self, a, b): ...

    @abstractmethod
    def _complement(self, a): ...

    @abstractmethod
    def _leq(self, a, b) -> bool: ...

    @abstractmethod
    def _is_sharp(self, a) -> bool: ...

    @abstractmethod
    def distance(self, a, b) -> float:
        """Norm of ``a - b`` (0/1 count, max-abs or Frobenius per instance)."""

    def check(self, *xs) -> None:
        for x in xs:
            if not isinstance(x, Element) or x.sea != self:
                raise InstanceMismatch(f"{x!r} is not an element of {self!r}")

    def equal(self, a, b, tol: Optional[float] = None) -> bool:
        self.check(a, b)
        return self.distance(a, b) <= (self.tol if tol is None else tol)

    def try_oplus(self, a, b):
        self.check(a, b)
        return self._oplus(a, b)

    def seq(self, a, b):
        self.check(a, b)
        return self._seq(a, b)

    def complement(self, a):
        self.check(a)
        return self._complement(a)

    def leq(self, a, b) -> bool:
        self.check(a, b)
        return self._leq(a, b)

    def is_sharp(self, a) -> bool:
        self.check(a)
        return self._is_sharp(a)

    def seq_commutes(self, a, b, tol: Optional[float] = None) -> bool:
        self.check(a, b)
        return self.equal(self._seq(a, b), self._seq(b, a), tol)

    def orthosum(self, xs: Sequence):
        """Left fold of ``try_oplus``; ``None`` as soon as a step is undefined."""
        if len(xs) == 0:
            raise ValueError("orthosum of an empty list")
        self.check(*xs)
        acc = xs[0]
        for x in xs[1:]:
            acc = self._oplus(acc, x)
            if acc is None:
                return None
        return acc

    def validate_partition(self, xs: Sequence) -> "Partition":
        if len(xs) == 0:
            raise ValueError("a partition needs at least one element")
        self.check(*xs)
        acc = xs[0]
        for i, x in enumerate(xs[1:], start=1):
            acc = self._oplus(acc, x)
            if acc is None:
                raise UndefinedSum(f"partial sum undefined at index {i}", index=i)
        if not self.equal(acc, self.one):
            raise NotUnit(
                f"elements sum to something other than the unit "
                f"(distance {self.distance(acc, self.one):.3e})"
            )
        return Partition(tuple(xs), self)

    def refine(self, A: "Partition", B: "Partition") -> "Partition":
        """The partition ``[a_i o b_j]``, i outer and j inner."""
        if A.sea != self or B.sea != self:
            raise InstanceMismatch("partitions belong to a different instance")
        xs = [self._seq(a, b) for a in A for b in B]
        try:
            return self.validate_partition(xs)
        except (UndefinedSum, NotUnit) as exc:
            raise InconsistentRefinement(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class Partition:
    """Ordered elements whose orthosum is the unit.

    Build through :meth:`SeaContract.validate_partition`; order matters and
    duplicates are allowed.
    """

    elements: tuple
    sea: SeaContract

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


def _owner(x) -> SeaContract:
    if not isinstance(x, Element):
        raise InstanceMismatch(f"{x!r} is not an algebra element")
    return x.sea


def try_oplus(a, b):
    return _owner(a).try_oplus(a, b)


def orthosum(xs: Sequence):
    if len(xs) == 0:
        raise ValueError("orthosum of an empty list")
    return _owner(xs[0]).orthosum(xs)


def seq(a, b):
    return _owner(a).seq(a, b)


def complement(a):
    return _owner(a).complement(a)


def leq(a, b) -> bool:
    return _owner(a).leq(a, b)


def is_sharp(a) -> bool:
    return _owner(a).is_sharp(a)


def seq_commutes(a, b, tol: Optional[float] = None) -> bool:
    return _owner(a).seq_commutes(a, b, tol)


def validate_partition(xs: Sequence) -> Partition:
    if len(xs) == 0:
        raise ValueError("a partition needs at least one element")
    return _owner(xs[0]).validate_partition(xs)


def refine(A: Partition, B: Partition) -> Partition:
    return A.sea.refine(A, B)

