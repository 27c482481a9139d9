import pytest
import numpy as np
from src.core.analysis.LambdaFunctional import (
    lambda_value, lambda_raw, lambda_gradient, effective_distortion, memory_span
)
from src.core.problem.DistortionTensor import DistortionTensor
from src.core.problem.Kernels import MemorylessKernel, MarkovKernel
from src.core.problem.Presets import fig2_tensor, gamma_hamming_tensor, hamming_tensor, constant_tensor
from src.core.problem.SourcePmf import SourcePmf
from src.core.errors.Errors import ValidationError


class TestLambdaValue:
    """测试 Λ 泛函"""

    @pytest.fixture
    def source(self):
        """均匀二元信源"""
        return SourcePmf.uniform(2)

    def test_fig2_identity(self, source):
        """测试 fig2 c=1 恒等信道"""
        assert lambda_value(MemorylessKernel.identity(2), source, fig2_tensor(1.0)) == pytest.approx(0.25)

    @pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0, 2.0])
    def test_gamma_hamming_identity(self, source, gamma):
        """测试 γ 汉明示例恒等信道为 γ/2"""
        assert lambda_value(MemorylessKernel.identity(2), source, gamma_hamming_tensor(gamma)) == pytest.approx(gamma / 2)

    def test_constant_tensor(self, source):
        """测试常数张量"""
        kernel = MemorylessKernel.from_parameters(0.3, 0.8)
        assert lambda_value(kernel, source, constant_tensor(1.7)) == pytest.approx(1.7)

    def test_memoryless_tensor_is_linear(self, source):
        """测试无记忆失真时 Λ 就是普通期望失真"""
        kernel = MemorylessKernel.from_parameters(0.9, 0.2)
        expected = 0.5 * (0.1 + 0.2)
        assert lambda_value(kernel, source, hamming_tensor(2)) == pytest.approx(expected)

    def test_dimension_mismatch(self, source):
        """测试维度不匹配"""
        with pytest.raises(ValidationError):
            lambda_value(MemorylessKernel.identity(3), source, fig2_tensor(1.0))

    def test_kernel_rows_validated(self):
        """测试信道行和校验"""
        with pytest.raises(ValidationError):
            MemorylessKernel(np.array([[0.5, 0.6], [0.5, 0.5]]))

    def test_invariant_under_relabeling(self):
        """测试同时置换 x 与 y/ŷ 的标号时 Λ 不变"""
        rng = np.random.default_rng(31)
        for _ in range(20):
            probs = rng.dirichlet(np.ones(3))
            values = rng.uniform(0.0, 2.0, size=(3, 4, 4))
            rows = rng.dirichlet(np.ones(4), size=3)
            sx, sy = rng.permutation(3), rng.permutation(4)
            base = lambda_value(MemorylessKernel(rows), SourcePmf(probs), DistortionTensor(values))
            relabeled = lambda_value(
                MemorylessKernel(rows[np.ix_(sx, sy)]),
                SourcePmf(probs[sx]),
                DistortionTensor(values[np.ix_(sx, sy, sy)]),
            )
            assert relabeled == pytest.approx(base, abs=1e-12)


class TestLambdaGradient:
    """测试 Λ 梯度"""

    def test_matches_finite_differences(self):
        """测试梯度与有限差分一致"""
        rng = np.random.default_rng(3)
        probs = np.array([0.2, 0.5, 0.3])
        values = rng.uniform(0, 2, size=(3, 4, 4))
        rows = rng.dirichlet(np.ones(4), size=3)
        grad = lambda_gradient(rows, probs, values)
        h = 1e-6
        for x in range(3):
            for y in range(4):
                bump = np.zeros_like(rows)
                bump[x, y] = h
                numeric = (lambda_raw(rows + bump, probs, values) - lambda_raw(rows - bump, probs, values)) / (2 * h)
                assert grad[x, y] == pytest.approx(numeric, abs=1e-6)

    def test_effective_distortion_memoryless(self):
        """测试无记忆失真时等效失真是 d 加常数"""
        probs = np.array([0.5, 0.5])
        rows = np.array([[0.7, 0.3], [0.4, 0.6]])
        values = hamming_tensor(2).values
        eff = effective_distortion(rows, probs, values)
        # 前向项是 d(x,y)，后向项只依赖 y
        assert np.allclose(eff[0] - eff[1], [-1.0, 1.0])


class TestMemorySpan:
    """测试记忆跨度 𝚍"""

    @pytest.mark.parametrize("c", [0.0, 0.25, 1.0])
    def test_fig2(self, c):
        """测试 fig2 的 𝚍 = c"""
        assert memory_span(fig2_tensor(c)) == pytest.approx(c)

    def test_gamma_hamming(self):
        """测试 γ 汉明示例的 𝚍 = γ"""
        assert memory_span(gamma_hamming_tensor(0.5)) == pytest.approx(0.5)

    def test_memoryless_and_constant(self):
        """测试无记忆张量跨度为零"""
        assert memory_span(hamming_tensor(3)) == 0.0
        assert memory_span(constant_tensor(2.0)) == 0.0


class TestProblemTypes:
    """测试问题类型"""

    def test_tensor_shape_checks(self):
        """测试张量形状校验"""
        with pytest.raises(ValidationError):
            DistortionTensor(np.zeros((2, 2)))
        with pytest.raises(ValidationError):
            DistortionTensor(np.zeros((2, 2, 3)))
        with pytest.raises(ValidationError):
            DistortionTensor(np.full((2, 2, 2), np.inf))

    def test_tensor_equality(self):
        """测试张量按值比较"""
        assert fig2_tensor(1.0) == fig2_tensor(1.0)
        assert fig2_tensor(1.0) != fig2_tensor(0.5)

    def test_markov_kernel_helpers(self):
        """测试一阶记忆信道的构造"""
        kernel = MarkovKernel.from_memoryless(MemorylessKernel.identity(2))
        assert kernel.is_memoryless
        assert not MarkovKernel.frozen(2, 2).is_memoryless
        with pytest.raises(ValidationError):
            MarkovKernel(np.full((2, 2, 3), 1.0 / 3))
