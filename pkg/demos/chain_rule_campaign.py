"""Random POVMs and the entropy laws.

Draws random states and three random partitions A, B, C, then prints the six
residuals.  r1 (chain rule) should be zero, the rest nonnegative.
"""

import numpy as np

from seqeffect import quantum_instance, theorem_residuals
from seqeffect.verify import (
    CampaignConfig,
    gen_random_partition,
    gen_random_state,
    run_theorem_campaign,
    run_theorem_trial,
)

rng = np.random.default_rng(1)
Q = quantum_instance(3)

s = gen_random_state(Q, rng)
A, B, C = (gen_random_partition(Q, k, rng) for k in (2, 3, 2))
print("rho eigenvalues:", np.round(np.linalg.eigvalsh(s.rho), 4))
print("A[0] eigenvalues:", np.round(np.linalg.eigvalsh(A[0].matrix), 4))

r = theorem_residuals(s, A, B, C)
for name, value in zip(("r1", "r2", "r3", "r4", "r5", "r6"), r.as_tuple()):
    print(f"{name} = {value: .3e}")

# the same thing many times over, for each dimension
for d in (2, 3, 4, 5):
    cfg = CampaignConfig("quantum", d, trials=200, seed=d, size_pool=(2, 3, 4))
    rep = run_theorem_campaign(cfg)
    worst_r1 = abs(rep.laws["r1"].worst)
    lowest = min(rep.laws[k].worst for k in ("r2", "r3", "r4", "r5", "r6"))
    print(f"d={d}: {rep.trials_passed}/200 pass, max|r1|={worst_r1:.1e}, min r2..r6={lowest:.1e}")

# any trial can be replayed from (seed, index) alone
cfg = CampaignConfig("quantum", 3, trials=200, seed=3, size_pool=(2, 3, 4))
print("trial 17 of the d=3 run, replayed:", run_theorem_trial(cfg, 17).residuals)
