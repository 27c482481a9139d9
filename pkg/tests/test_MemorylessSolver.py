import pytest
import numpy as np
from src.inner.MemorylessSolver import MemorylessSolver, rate_inner_memoryless, kernel_rate
from src.inner.InnerCurves import memoryless_curve
from src.core.analysis.ConvexityReport import convexity_report
from src.config.Configs import SolverConfig
from src.core.analysis.LambdaFunctional import lambda_value
from src.core.info.InfoTheory import hamming_rate_distortion, binary_entropy
from src.core.problem.DistortionTensor import DistortionTensor
from src.core.problem.Kernels import MemorylessKernel
from src.core.problem.Presets import fig2_tensor, gamma_hamming_tensor, hamming_tensor
from src.core.problem.SourcePmf import SourcePmf


@pytest.fixture
def cfg():
    """小规模求解器配置"""
    return SolverConfig(restarts=2, slope_count=24, max_iters=2000)


@pytest.fixture
def source():
    """均匀二元信源"""
    return SourcePmf.uniform(2)


class TestMemorylessSolver:
    """测试 R_I2 单点求解"""

    @pytest.mark.parametrize("D", [0.1, 0.25, 0.4])
    def test_hamming_matches_classical(self, cfg, source, D):
        """测试无记忆汉明失真下等于 1 − h(D)"""
        point = MemorylessSolver(source, hamming_tensor(2), cfg).solve(D)
        assert point.feasible
        assert point.rate == pytest.approx(hamming_rate_distortion(D), abs=2e-3)

    def test_gamma_hamming_example(self, cfg, source):
        """测试 γ=0.5, D=0.61 时约为 1 − h(0.36)"""
        point = rate_inner_memoryless(source, gamma_hamming_tensor(0.5), 0.61, cfg)
        assert point.rate == pytest.approx(1.0 - binary_entropy(0.36), abs=2e-3)

    def test_below_d_min_is_infeasible(self, cfg, source):
        """测试低于 d_min 返回不可行点并附见证"""
        point = MemorylessSolver(source, fig2_tensor(1.0), cfg).solve(0.2)
        assert not point.feasible
        assert point.rate is None
        assert point.witness is not None
        assert point.meta['best_distortion'] == pytest.approx(0.25, abs=1e-9)

    def test_zero_rate_at_d_max(self, cfg, source):
        """测试 D ≥ d_max 时速率为零"""
        solver = MemorylessSolver(source, fig2_tensor(1.0), cfg)
        for D in (0.5, 0.6):
            point = solver.solve(D)
            assert point.rate == pytest.approx(0.0, abs=1e-12)

    def test_witness_is_certified(self, cfg, source):
        """测试见证核复算的失真不超过 D，速率一致"""
        tensor = fig2_tensor(1.0)
        solver = MemorylessSolver(source, tensor, cfg)
        for D in (0.26, 0.3, 0.4, 0.45):
            point = solver.solve(D)
            assert point.feasible
            assert lambda_value(point.witness, source, tensor) <= D + 1e-9
            assert kernel_rate(point.witness.rows, source.probs) == pytest.approx(point.rate, abs=1e-12)

    def test_rates_in_range(self, cfg, source):
        """测试速率在 [0, H(X)] 内"""
        solver = MemorylessSolver(source, fig2_tensor(0.5), cfg)
        for D in np.linspace(0.2, 0.6, 9):
            point = solver.solve(float(D))
            if point.feasible:
                assert -1e-12 <= point.rate <= 1.0 + 1e-9

    def test_deterministic(self, cfg, source):
        """测试相同种子结果完全相同"""
        rng = np.random.default_rng(8)
        tensor = DistortionTensor(rng.uniform(0, 1, size=(2, 3, 3)))
        a = MemorylessSolver(source, tensor, cfg)
        b = MemorylessSolver(source, tensor, cfg)
        D = 0.5 * (a.feasibility.d_min + a.feasibility.d_max)
        assert a.solve(D).rate == b.solve(D).rate

    def test_frontier_is_cached(self, cfg, source):
        """测试斜率扫描只做一次"""
        solver = MemorylessSolver(source, fig2_tensor(1.0), cfg)
        first = solver.frontier()
        assert solver.frontier() is first
        assert len(first) == cfg.restarts
        assert len(first[0]) == cfg.slope_count

    def test_fixed_point_lagrangian_not_above_start(self, cfg, source):
        """测试不动点迭代不增加 I + β·Λ"""
        tensor = fig2_tensor(1.0)
        solver = MemorylessSolver(source, tensor, cfg)
        rows = np.array([[0.6, 0.4], [0.3, 0.7]])
        start = kernel_rate(rows, source.probs) + 2.0 * lambda_value(MemorylessKernel(rows), source, tensor)
        sample = solver.fixed_point(2.0, rows)
        assert sample.rate + 2.0 * sample.distortion <= start + 1e-3


def convex_binary_tensor(rng: np.random.Generator) -> DistortionTensor:
    """e1 = e2 ≥ 0 的随机二元张量，Λ 在均匀信源下为凸"""
    values = rng.uniform(0.0, 2.0, size=(2, 2, 2))
    e1 = values[0, 0, 0] + values[0, 1, 1] - values[0, 1, 0] - values[0, 0, 1]
    if e1 < 0:
        # 交换 x=0 切片的两列使 e1 变号
        values[0] = values[0][:, ::-1]
        e1 = -e1
    values[1, 1, 1] = e1 - values[1, 0, 0] + values[1, 1, 0] + values[1, 0, 1]
    values[1] -= min(0.0, values[1].min())
    return DistortionTensor(values)


class TestConvexLambda:
    """测试 Λ 凸时 R_I2 曲线为凸"""

    @pytest.mark.slow
    def test_random_convex_tensors(self, source):
        """测试 20 个 Λ 凸的随机张量上 R_I2 采样满足离散凸性"""
        cfg = SolverConfig(restarts=2, slope_count=32, max_iters=2000)
        rng = np.random.default_rng(41)
        for _ in range(20):
            tensor = convex_binary_tensor(rng)
            assert convexity_report(tensor, source).is_convex
            solver = MemorylessSolver(source, tensor, cfg)
            feas = solver.feasibility
            if feas.d_max - feas.d_min < 1e-6:
                continue
            grid = np.linspace(feas.d_min, feas.d_max, 9)
            curve = memoryless_curve(source, tensor, grid, cfg, memoryless=solver)
            assert curve.is_convex(tol=5e-3)
