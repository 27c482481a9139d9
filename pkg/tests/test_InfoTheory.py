import pytest
import numpy as np
from src.core.info.InfoTheory import (
    entropy, entropy_bits, conditional_entropy_bits, mutual_information, binary_entropy,
    hamming_rate_distortion
)
from src.core.problem.SourcePmf import SourcePmf, check_pmf, check_stochastic_rows
from src.core.errors.Errors import ValidationError


class TestEntropy:
    """测试熵"""

    def test_entropy_examples(self):
        """测试熵的数值示例"""
        assert entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
        assert entropy([0.25, 0.75]) == pytest.approx(0.811278, abs=1e-6)
        assert entropy([1.0, 0.0]) == 0.0

    def test_entropy_accepts_source_pmf(self):
        """测试直接传入信源分布"""
        assert entropy(SourcePmf.uniform(4)) == pytest.approx(2.0)

    def test_entropy_rejects_bad_pmf(self):
        """测试非法分布"""
        with pytest.raises(ValidationError):
            entropy([0.5, 0.6])
        with pytest.raises(ValidationError):
            entropy([-0.1, 1.1])

    def test_no_renormalization(self):
        """测试 1e-12 之外的偏差不做归一化修正"""
        check_pmf([0.5, 0.5 + 5e-13])
        with pytest.raises(ValidationError):
            check_pmf([0.5, 0.5 + 1e-9])

    def test_binary_entropy(self):
        """测试二元熵"""
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.25) == pytest.approx(entropy([0.25, 0.75]))

    def test_conditional_entropy(self):
        """测试条件熵 H(Y|X)"""
        joint = np.array([[0.25, 0.25], [0.5, 0.0]])
        # H(Y|X) = 0.5·1 + 0.5·0
        assert conditional_entropy_bits(joint, given_axes=[0]) == pytest.approx(0.5)
        assert conditional_entropy_bits(joint, given_axes=[0, 1]) == pytest.approx(0.0)


class TestMutualInformation:
    """测试互信息"""

    def test_independent(self):
        """测试独立变量互信息为零"""
        assert mutual_information(np.outer([0.3, 0.7], [0.6, 0.4])) == pytest.approx(0.0, abs=1e-12)

    def test_identity_channel(self):
        """测试恒等信道的互信息等于熵"""
        assert mutual_information(np.diag([0.25, 0.75])) == pytest.approx(entropy([0.25, 0.75]))

    def test_bounded_by_marginal_entropies(self):
        """测试随机联合分布上 0 ≤ I(X;Y) ≤ min(H(X), H(Y))"""
        rng = np.random.default_rng(5)
        for _ in range(100):
            a, b = rng.integers(2, 6, size=2)
            joint = rng.dirichlet(np.ones(a * b) * 0.5).reshape(a, b)
            info = mutual_information(joint)
            bound = min(entropy(joint.sum(axis=1)), entropy(joint.sum(axis=0)))
            assert -1e-12 <= info <= bound + 1e-12

    def test_rejects_non_matrix(self):
        """测试非矩阵输入"""
        with pytest.raises(ValidationError):
            mutual_information(np.full((2, 2, 2), 0.125))

    def test_hamming_rate_distortion(self):
        """测试 1 − h(D)"""
        assert hamming_rate_distortion(0.0) == pytest.approx(1.0)
        assert hamming_rate_distortion(0.25) == pytest.approx(1.0 - 0.811278, abs=1e-6)
        assert hamming_rate_distortion(0.6) == 0.0


class TestStochasticRows:
    """测试条件概率表校验"""

    def test_rows_must_sum_to_one(self):
        """测试行和"""
        check_stochastic_rows(np.eye(3), "kernel")
        with pytest.raises(ValidationError):
            check_stochastic_rows(np.array([[0.5, 0.4], [0.0, 1.0]]), "kernel")

    def test_rejects_vector(self):
        """测试一维输入"""
        with pytest.raises(ValidationError):
            check_stochastic_rows(np.array([0.5, 0.5]), "kernel")
