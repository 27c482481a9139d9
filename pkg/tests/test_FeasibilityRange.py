import pytest
import numpy as np
from src.inner.FeasibilityRange import feasibility_range, restart_rng
from src.inner.SimplexDescent import simplex_projection_rowwise, projected_gradient
from src.config.Configs import SolverConfig
from src.core.analysis.LambdaFunctional import lambda_value
from src.core.problem.DistortionTensor import DistortionTensor
from src.core.problem.Kernels import MemorylessKernel
from src.core.problem.Presets import fig2_tensor, gamma_hamming_tensor, constant_tensor
from src.core.problem.SourcePmf import SourcePmf


class TestFeasibilityRange:
    """测试可行失真区间"""

    @pytest.fixture
    def cfg(self):
        """小规模求解器配置"""
        return SolverConfig(restarts=2)

    @pytest.fixture
    def source(self):
        """均匀二元信源"""
        return SourcePmf.uniform(2)

    def test_fig2(self, cfg, source):
        """测试 fig2 c=1 的 (0.25, 0.5)"""
        feas = feasibility_range(source, fig2_tensor(1.0), cfg)
        assert feas.d_min == pytest.approx(0.25, abs=1e-9)
        assert feas.d_max == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("gamma", [0.25, 0.5, 1.0])
    def test_gamma_hamming(self, cfg, source, gamma):
        """测试 γ 汉明示例的 (γ/2, (γ+1)/2)"""
        feas = feasibility_range(source, gamma_hamming_tensor(gamma), cfg)
        assert feas.d_min == pytest.approx(gamma / 2, abs=1e-9)
        assert feas.d_max == pytest.approx((gamma + 1) / 2, abs=1e-9)

    def test_constant_tensor(self, cfg, source):
        """测试常数张量 d_min = d_max"""
        feas = feasibility_range(source, constant_tensor(0.7), cfg)
        assert feas.d_min == pytest.approx(0.7)
        assert feas.d_max == pytest.approx(0.7)

    def test_witnesses_achieve_values(self, cfg):
        """测试见证核复算出区间端点"""
        rng = np.random.default_rng(0)
        source = SourcePmf(np.array([0.2, 0.3, 0.5]))
        tensor = DistortionTensor(rng.uniform(0, 1, size=(3, 3, 3)))
        feas = feasibility_range(source, tensor, cfg)
        assert lambda_value(feas.witness_min, source, tensor) == pytest.approx(feas.d_min, abs=1e-12)
        r = feas.witness_max
        expected = np.einsum('x,y,z,xyz->', source.probs, r, r, tensor.values)
        assert expected == pytest.approx(feas.d_max, abs=1e-12)
        assert feas.d_min <= feas.d_max + 1e-12

    def test_d_min_not_above_random_kernels(self, cfg):
        """测试 d_min 不高于随机信道的 Λ"""
        rng = np.random.default_rng(4)
        source = SourcePmf.uniform(3)
        tensor = DistortionTensor(rng.uniform(0, 2, size=(3, 2, 2)))
        feas = feasibility_range(source, tensor, cfg)
        for _ in range(200):
            W = MemorylessKernel(rng.dirichlet(np.ones(2), size=3))
            assert lambda_value(W, source, tensor) >= feas.d_min - 1e-9

    def test_deterministic(self, cfg, source):
        """测试相同种子结果相同"""
        a = feasibility_range(source, fig2_tensor(0.5), cfg)
        b = feasibility_range(source, fig2_tensor(0.5), cfg)
        assert a.d_min == b.d_min
        assert np.array_equal(a.witness_min.rows, b.witness_min.rows)


class TestSimplexDescent:
    """测试单纯形投影与投影梯度"""

    def test_projection(self):
        """测试投影结果在单纯形上"""
        rng = np.random.default_rng(1)
        C = rng.normal(size=(50, 4)) * 3
        P = simplex_projection_rowwise(C)
        assert np.all(P >= 0)
        assert np.allclose(P.sum(axis=1), 1.0)

    def test_projection_fixed_point(self):
        """测试单纯形内的点不变"""
        x = np.array([[0.2, 0.3, 0.5]])
        assert np.allclose(simplex_projection_rowwise(x), x)

    def test_projected_gradient_quadratic(self):
        """测试二次函数在单纯形上的最小值"""
        target = np.array([[0.7, 0.6, -0.3]])
        result = projected_gradient(lambda x: float(np.sum((x - target) ** 2)),
                                    lambda x: 2 * (x - target), np.full((1, 3), 1 / 3))
        assert np.allclose(result.x, [[0.55, 0.45, 0.0]], atol=1e-6)

    def test_restart_rng_streams(self):
        """测试不同流给出不同随机数，相同参数可复现"""
        a = restart_rng(0, 1, 2, stream=3).random(3)
        b = restart_rng(0, 1, 2, stream=3).random(3)
        c = restart_rng(0, 1, 2, stream=4).random(3)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)
