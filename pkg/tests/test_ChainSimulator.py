import pytest
import numpy as np
from src.markov.ChainSimulator import simulate_chain, recurrent_classes
from src.markov.StationaryAnalysis import stationary_distortion
from src.core.problem.Kernels import MarkovKernel, MemorylessKernel
from src.core.problem.Presets import fig2_tensor
from src.core.problem.SourcePmf import SourcePmf
from src.core.errors.Errors import ValidationError


class TestChainSimulator:
    """测试蒙特卡洛仿真"""

    @pytest.fixture
    def source(self):
        """均匀二元信源"""
        return SourcePmf.uniform(2)

    @pytest.fixture
    def tensor(self):
        """fig2 c=1"""
        return fig2_tensor(1.0)

    def test_identity_kernel(self, source, tensor):
        """测试恒等信道的经验失真接近 0.25"""
        K = MarkovKernel.from_memoryless(MemorylessKernel.identity(2))
        result = simulate_chain(K, source, tensor, n=200000, seed=1)
        assert result.empirical_distortion == pytest.approx(0.25, abs=0.01)
        assert result.ergodic

    def test_matches_stationary_distortion(self, source, tensor):
        """测试随机记忆信道的经验失真与平稳失真一致"""
        rng = np.random.default_rng(9)
        K = MarkovKernel(rng.dirichlet(np.ones(2) * 2, size=(2, 2)))
        result = simulate_chain(K, source, tensor, n=200000, seed=3)
        expected = stationary_distortion(K, source, tensor)
        assert abs(result.empirical_distortion - expected) < max(0.01, 5 * result.std_error)

    @pytest.mark.slow
    def test_random_ergodic_kernels(self, source, tensor):
        """测试 20 个严格正的随机记忆信道，n=10⁶ 时经验失真落在平稳失真的 3 倍标准误差内"""
        rng = np.random.default_rng(23)
        for k in range(20):
            K = MarkovKernel(rng.dirichlet(np.ones(2) * 2, size=(2, 2)))
            result = simulate_chain(K, source, tensor, n=1_000_000, seed=100 + k)
            assert result.ergodic
            expected = stationary_distortion(K, source, tensor)
            assert abs(result.empirical_distortion - expected) <= 3 * result.std_error

    def test_deterministic(self, source, tensor):
        """测试相同 seed 输出相同"""
        K = MarkovKernel(np.full((2, 2, 2), 0.5))
        a = simulate_chain(K, source, tensor, n=5000, seed=42)
        b = simulate_chain(K, source, tensor, n=5000, seed=42)
        assert a.empirical_distortion == b.empirical_distortion
        assert a.std_error == b.std_error

    def test_frozen_kernel_is_not_ergodic(self, source, tensor):
        """测试保持信道有两个常返类"""
        result = simulate_chain(MarkovKernel.frozen(2, 2), source, tensor, n=1000, seed=0, y0=1)
        assert not result.ergodic
        assert result.recurrent_classes == [[0], [1]]
        # y 一直为 1：d(x, 1, 1) 的均值
        assert result.empirical_distortion == pytest.approx(0.5, abs=0.06)

    def test_invalid_arguments(self, source, tensor):
        """测试非法参数"""
        K = MarkovKernel.frozen(2, 2)
        with pytest.raises(ValidationError):
            simulate_chain(K, source, tensor, n=0, seed=0)
        with pytest.raises(ValidationError):
            simulate_chain(K, source, tensor, n=10, seed=0, y0=2)


class TestRecurrentClasses:
    """测试常返类识别"""

    def test_transient_state(self):
        """测试暂态不计入"""
        assert recurrent_classes(np.array([[0.5, 0.5], [0.0, 1.0]])) == [[1]]

    def test_irreducible(self):
        """测试不可约链"""
        assert recurrent_classes(np.array([[0.0, 1.0], [1.0, 0.0]])) == [[0, 1]]
