"""Sequential effect algebras, partitions and their entropies.

Three instances are provided -- subsets of a finite set, fuzzy sets on a
finite set, and quantum effects on ``C^d`` -- together with states,
sequential refinements of partitions, partition entropies and a randomized
harness that checks the entropy laws numerically.

>>> from seqeffect import boolean_instance, AtomWeights, entropy
>>> X = boolean_instance(4)
>>> A = X.validate_partition([X.element([0, 1]), X.element([2, 3])])
>>> entropy(AtomWeights([0.25] * 4), A)
1.0
"""

__version__ = "0.1.0"

from .core import (
    InconsistentRefinement,
    InstanceMismatch,
    NotUnit,
    Partition,
    SeaContract,
    SeaError,
    UndefinedSum,
    complement,
    is_sharp,
    leq,
    orthosum,
    refine,
    seq,
    seq_commutes,
    try_oplus,
    validate_partition,
)
from .entropy import (
    AtomWeights,
    DensityMatrix,
    EntropyOptions,
    PointWeights,
    State,
    TheoremResiduals,
    cond_entropy,
    cond_prob,
    entropy,
    eval_state,
    refinement_entropy,
    state_after,
    theorem_residuals,
    xlogx,
)
from .instances import (
    BooleanElement,
    BooleanSEA,
    FuzzyElement,
    FuzzySEA,
    QuantumEffect,
    QuantumSEA,
    boolean_instance,
    fuzzy_instance,
    quantum_instance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
