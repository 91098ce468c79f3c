"""Boolean and fuzzy instances against plain Shannon entropy.

On subsets of a finite set the sequential product is intersection, so every
entropy here is the Shannon entropy of an ordinary joint distribution.
Fuzzy sets give a product-measure joint instead.
"""

import numpy as np

from seqeffect import (
    AtomWeights,
    PointWeights,
    boolean_instance,
    cond_entropy,
    entropy,
    fuzzy_instance,
    refinement_entropy,
)


def shannon(p):
    p = np.asarray(p, float).ravel()
    p = p[p > 0]
    return -(p * np.log2(p)).sum()


X = boolean_instance(6)
w = np.array([0.3, 0.1, 0.2, 0.15, 0.05, 0.2])
s = AtomWeights(w)

A = X.validate_partition([X.element([0, 1, 2]), X.element([3, 4, 5])])
B = X.validate_partition([X.element([0, 3]), X.element([1, 4]), X.element([2, 5])])

joint = np.array([[w[list(a.members & b.members)].sum() for b in B] for a in A])
print("joint distribution:\n", joint)
print("H(A)   ", entropy(s, A), shannon(joint.sum(1)))
print("H(B|A) ", cond_entropy(s, B, A), shannon(joint) - shannon(joint.sum(1)))
print("H(AoB) ", refinement_entropy(s, A, B), shannon(joint))

# fuzzy grades: a membership of 0.3 is "30% in the set" at that point
F = fuzzy_instance(3)
t = PointWeights([0.5, 0.3, 0.2])
low = F.element([0.9, 0.4, 0.1])
levels = F.validate_partition([low, F.complement(low)])
print("fuzzy H(levels) =", entropy(t, levels))
print("fuzzy H(levels o levels) =", refinement_entropy(t, levels, levels))
# unlike the Boolean case, a o a != a, so refining by itself adds entropy
