import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from seqeffect.core import InstanceMismatch
from seqeffect.entropy import (
    AtomWeights,
    DensityMatrix,
    EntropyOptions,
    PointWeights,
    cond_entropy,
    cond_prob,
    entropy,
    eval_state,
    refinement_entropy,
    state_after,
    theorem_residuals,
    xlogx,
)
from seqeffect.instances import boolean_instance, fuzzy_instance, quantum_instance
from seqeffect.verify import gen_random_element, gen_random_partition, gen_random_state

from conftest import SEAS, seeds

B4 = boolean_instance(4)
HALF = DensityMatrix(np.eye(2) / 2)
UNIFORM4 = AtomWeights([0.25] * 4)


def shannon(p):
    p = np.asarray(p, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


@pytest.fixture
def ab23(ex23):
    Q, e = ex23
    return Q.validate_partition([e["Q1"], e["Q2"]]), Q.validate_partition([e["P1"], e["P2"]])


class TestStates:
    def test_atom_weights(self):
        assert eval_state(UNIFORM4, B4.element([0, 1])) == 0.5
        assert UNIFORM4(B4.one) == 1.0

    def test_density(self, ex23):
        _, e = ex23
        assert eval_state(HALF, e["Q1"]) == pytest.approx(0.5, abs=1e-15)

    def test_point_weights(self):
        F = fuzzy_instance(2)
        s = PointWeights([0.25, 0.75])
        assert s(F.element([1.0, 0.2])) == pytest.approx(0.25 + 0.15)

    @pytest.mark.parametrize(
        "make",
        [
            lambda: AtomWeights([0.5, 0.4]),
            lambda: AtomWeights([1.2, -0.2]),
            lambda: PointWeights([0.5, 0.5], n=3),
            lambda: DensityMatrix(np.eye(2)),
            lambda: DensityMatrix(np.diag([1.1, -0.1])),
        ],
    )
    def test_invalid(self, make):
        with pytest.raises(ValueError):
            make()

    def test_wrong_instance(self):
        with pytest.raises(InstanceMismatch):
            eval_state(UNIFORM4, boolean_instance(3).one)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            UNIFORM4.weights = None


class TestConditional:
    def test_zero_probability_condition(self):
        s = AtomWeights([1.0, 0, 0, 0])
        assert cond_prob(s, B4.atom(0), B4.atom(2)) == 0.0

    def test_example_diagonal_then_axis(self, ex23):
        _, e = ex23
        assert cond_prob(HALF, e["P1"], e["Q1"]) == pytest.approx(0.5, abs=1e-15)

    def test_boolean(self):
        assert cond_prob(UNIFORM4, B4.atom(0), B4.element([0, 1])) == 0.5


class TestStateAfter:
    def test_example_keeps_maximally_mixed(self, ab23):
        A, _ = ab23
        np.testing.assert_allclose(state_after(HALF, A).rho, np.eye(2) / 2, atol=1e-15)

    def test_trivial_partition(self, sea):
        rng = np.random.default_rng(1)
        s = gen_random_state(sea, rng)
        t = state_after(s, sea.validate_partition([sea.one]))
        for _ in range(5):
            b = gen_random_element(sea, rng)
            assert abs(t(b) - s(b)) <= 1e-12

    def test_atomic_keeps_weights(self):
        A = B4.validate_partition([B4.atom(i) for i in range(4)])
        np.testing.assert_array_equal(state_after(UNIFORM4, A).weights, UNIFORM4.weights)

    @given(st.data())
    def test_defining_property(self, data):
        for sea in SEAS:
            rng = np.random.default_rng(data.draw(seeds))
            s = gen_random_state(sea, rng)
            A = gen_random_partition(sea, int(rng.integers(1, 4)), rng)
            t = state_after(s, A)
            for _ in range(4):
                b = gen_random_element(sea, rng)
                direct = sum(s(sea.seq(a, b)) for a in A)
                assert abs(t(b) - direct) <= 1e-9

    @given(seeds)
    def test_quantum_result_is_density(self, seed):
        rng = np.random.default_rng(seed)
        Q = quantum_instance(3)
        t = state_after(gen_random_state(Q, rng), gen_random_partition(Q, 3, rng))
        assert abs(np.trace(t.rho) - 1) <= 1e-12
        assert np.linalg.eigvalsh(t.rho)[0] >= -1e-12


class TestXlogx:
    def test_values(self):
        assert xlogx(0.0) == 0.0
        assert xlogx(0.5) == -0.5
        assert xlogx(1.0) == 0.0
        assert xlogx(-1e-13) == 0.0

    @pytest.mark.parametrize("x", [-1e-6, 1.001, 2.0])
    def test_domain(self, x):
        with pytest.raises(ValueError):
            xlogx(x)

    def test_base(self):
        assert xlogx(0.25, base=4) == pytest.approx(-0.25)

    def test_options_reject_bad_base(self):
        with pytest.raises(ValueError):
            EntropyOptions(1.0)


class TestEntropyExamples:
    def test_example_triple(self, ab23):
        A, B = ab23
        assert entropy(HALF, A) == pytest.approx(1.0, abs=1e-12)
        assert cond_entropy(HALF, B, A) == pytest.approx(1.0, abs=1e-12)
        assert refinement_entropy(HALF, A, B) == pytest.approx(2.0, abs=1e-12)

    def test_certain_outcome(self):
        s = AtomWeights([1.0, 0, 0, 0])
        A = B4.validate_partition([B4.atom(0), B4.element([1, 2, 3])])
        assert entropy(s, A) == 0.0

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_uniform_atoms_give_k_bits(self, k):
        sea = boolean_instance(2**k)
        s = AtomWeights(np.full(2**k, 2.0**-k))
        A = sea.validate_partition([sea.atom(i) for i in range(2**k)])
        assert entropy(s, A) == pytest.approx(k, abs=1e-12)

    def test_trivial_condition_target(self, ab23):
        A, _ = ab23
        one = A.sea.validate_partition([A.sea.one])
        assert cond_entropy(HALF, one, A) == pytest.approx(0.0, abs=1e-12)
        assert refinement_entropy(HALF, A, one) == pytest.approx(entropy(HALF, A), abs=1e-12)

    def test_atomic_self_condition(self):
        A = B4.validate_partition([B4.atom(i) for i in range(4)])
        assert cond_entropy(UNIFORM4, A, A) == 0.0

    def test_blocks(self):
        A = B4.validate_partition([B4.element([0, 1]), B4.element([2, 3])])
        B = B4.validate_partition([B4.element([0, 2]), B4.element([1, 3])])
        assert refinement_entropy(UNIFORM4, A, B) == pytest.approx(2.0, abs=1e-12)

    def test_trivial_partition_has_no_entropy(self, sea):
        s = gen_random_state(sea, np.random.default_rng(0))
        h = entropy(s, sea.validate_partition([sea.one]))
        assert 0.0 <= h <= 1e-12 and math.copysign(1, h) == 1


class TestResiduals:
    def test_example_chain_rule(self, ab23):
        A, B = ab23
        C = A.sea.validate_partition([A.sea.one])
        r = theorem_residuals(HALF, A, B, C)
        assert abs(r.r1) <= 1e-12
        assert r.passes(1e-9)

    def test_all_trivial(self, sea):
        one = sea.validate_partition([sea.one])
        s = gen_random_state(sea, np.random.default_rng(3))
        assert theorem_residuals(s, one, one, one).as_tuple() == (0.0,) * 6

    @given(st.data())
    def test_laws_on_random_cases(self, data):
        for sea in SEAS:
            rng = np.random.default_rng(data.draw(seeds))
            s = gen_random_state(sea, rng)
            A, B, C = (gen_random_partition(sea, int(rng.integers(1, 4)), rng) for _ in range(3))
            assert theorem_residuals(s, A, B, C).passes(1e-9)

    @given(st.data())
    def test_base_change(self, data):
        for sea in SEAS:
            rng = np.random.default_rng(data.draw(seeds))
            s = gen_random_state(sea, rng)
            A, B = (gen_random_partition(sea, 3, rng) for _ in range(2))
            for base in (math.e, 3.0, 10.0):
                opts = EntropyOptions(base)
                k = math.log2(base)
                assert abs(entropy(s, A, opts) - entropy(s, A) / k) <= 1e-12
                assert abs(cond_entropy(s, B, A, opts) - cond_entropy(s, B, A) / k) <= 1e-12
                assert abs(refinement_entropy(s, A, B, opts) - refinement_entropy(s, A, B) / k) <= 1e-12

    @given(st.data())
    def test_order_invariance(self, data):
        for sea in SEAS:
            rng = np.random.default_rng(data.draw(seeds))
            s = gen_random_state(sea, rng)
            A, B = (gen_random_partition(sea, 3, rng) for _ in range(2))
            pa = sea.validate_partition([A[i] for i in rng.permutation(len(A))])
            pb = sea.validate_partition([B[i] for i in rng.permutation(len(B))])
            assert abs(entropy(s, pa) - entropy(s, A)) <= 1e-12
            assert abs(cond_entropy(s, pb, pa) - cond_entropy(s, B, A)) <= 1e-12
            assert abs(refinement_entropy(s, pa, pb) - refinement_entropy(s, A, B)) <= 1e-12


class TestShannonOracle:
    @given(seeds)
    def test_boolean_matches_joint_distribution(self, seed):
        rng = np.random.default_rng(seed)
        sea = boolean_instance(6)
        s = gen_random_state(sea, rng)
        A, B = (gen_random_partition(sea, int(rng.integers(1, 5)), rng) for _ in range(2))
        w = s.weights
        joint = np.array([[w[list(a.members & b.members)].sum() for b in B] for a in A])
        pa = joint.sum(axis=1)
        assert abs(entropy(s, A) - shannon(pa)) <= 1e-12
        assert abs(refinement_entropy(s, A, B) - shannon(joint)) <= 1e-12
        assert abs(cond_entropy(s, B, A) - (shannon(joint) - shannon(pa))) <= 1e-12

    @given(seeds)
    def test_fuzzy_product_distribution(self, seed):
        # p(i, j) = sum_x w(x) a_i(x) b_j(x)
        rng = np.random.default_rng(seed)
        sea = fuzzy_instance(5)
        s = gen_random_state(sea, rng)
        A, B = (gen_random_partition(sea, 3, rng) for _ in range(2))
        joint = np.array([[s.weights @ (a.values * b.values) for b in B] for a in A])
        assert abs(refinement_entropy(s, A, B) - shannon(joint)) <= 1e-12
        assert abs(cond_entropy(s, B, A) - (shannon(joint) - shannon(joint.sum(axis=1)))) <= 1e-12
