import pytest
import numpy as np
from src.inner.InnerCurves import (
    memoryless_curve, markov_curve, inner_curve, envelope_curve, replay_witness, witness_digest,
    propagate_witnesses
)
from src.inner.MemorylessSolver import MemorylessSolver
from src.config.Configs import SolverConfig
from src.core.curves.BoundCurve import BoundId, RDPoint
from src.core.info.InfoTheory import hamming_rate_distortion
from src.core.problem.Kernels import MemorylessKernel
from src.core.problem.Presets import fig2_tensor, hamming_tensor
from src.core.problem.SourcePmf import SourcePmf
from src.core.errors.Errors import ValidationError
from src.execution.TaskEngine import TaskEngine


@pytest.fixture
def cfg():
    """小规模求解器配置"""
    return SolverConfig(restarts=1, slope_count=24, max_iters=2000, search_iters=120,
                        penalty_schedule=(100.0, 10000.0))


@pytest.fixture
def source():
    """均匀二元信源"""
    return SourcePmf.uniform(2)


class TestMemorylessCurve:
    """测试 R_I2 曲线"""

    def test_reuses_given_solver(self, cfg, source):
        """测试传入的无记忆求解器被复用，前沿只扫描一次"""
        tensor = fig2_tensor(1.0)
        solver = MemorylessSolver(source, tensor, cfg)
        first = memoryless_curve(source, tensor, [0.3, 0.4], cfg, memoryless=solver)
        frontier = solver.frontier()
        second = memoryless_curve(source, tensor, [0.3, 0.4], cfg, memoryless=solver)
        assert solver.frontier() is frontier
        assert first.rates.tolist() == second.rates.tolist()

    def test_hamming_curve(self, cfg, source):
        """测试无记忆汉明失真下的整条曲线"""
        grid = np.linspace(0.05, 0.6, 12)
        curve = memoryless_curve(source, hamming_tensor(2), grid, cfg)
        assert curve.bound_id == BoundId.R_I2
        for point in curve.points:
            assert point.rate == pytest.approx(hamming_rate_distortion(point.distortion), abs=3e-3)
        assert curve.is_non_increasing(tol=0.0)
        assert len(curve.metadata['witness_digests']) == len(grid)

    def test_infeasible_prefix(self, cfg, source):
        """测试 d_min 以下的网格点不可行"""
        curve = memoryless_curve(source, fig2_tensor(1.0), np.linspace(0.0, 0.6, 7), cfg)
        assert list(curve.feasible_mask) == [False, False, False, True, True, True, True]
        assert curve.metadata['d_min'] == pytest.approx(0.25, abs=1e-9)

    def test_every_witness_replays(self, cfg, source):
        """测试每个可行点的见证复算一致"""
        tensor = fig2_tensor(1.0)
        curve = memoryless_curve(source, tensor, np.linspace(0.25, 0.55, 7), cfg)
        for point in curve.finite_points():
            rate, distortion = replay_witness(point, source, tensor)
            assert rate == pytest.approx(point.rate, abs=1e-9)
            assert distortion <= point.distortion + 1e-9

    def test_worker_count_does_not_change_output(self, cfg, source):
        """测试并行与串行结果相同"""
        grid = np.linspace(0.25, 0.5, 6)
        tensor = fig2_tensor(0.5)
        serial = memoryless_curve(source, tensor, grid, cfg, TaskEngine(worker_count=1))
        parallel = memoryless_curve(source, tensor, grid, cfg, TaskEngine(worker_count=3))
        assert np.array_equal(serial.rates, parallel.rates)
        assert serial.metadata['witness_digests'] == parallel.metadata['witness_digests']

    def test_grid_must_increase(self, cfg, source):
        """测试网格必须严格递增"""
        with pytest.raises(ValidationError):
            memoryless_curve(source, fig2_tensor(1.0), [0.3, 0.2], cfg)


class TestMarkovCurves:
    """测试 R_I1 / R2 曲线"""

    def test_r_i1_not_above_r_i2(self, cfg, source):
        """测试逐点 R_I1 ≤ R_I2"""
        tensor = fig2_tensor(1.0)
        grid = np.linspace(0.25, 0.55, 4)
        solver = MemorylessSolver(source, tensor, cfg)
        r2 = memoryless_curve(source, tensor, grid, cfg, memoryless=solver)
        r1 = markov_curve(source, tensor, grid, cfg, memoryless=solver)
        assert r1.bound_id == BoundId.R_I1
        for a, b in zip(r1.points, r2.points):
            assert a.feasible
            assert a.rate <= b.rate + 1e-9

    def test_inner_curve_id(self, cfg, source):
        """测试 R2 标识"""
        curve = inner_curve(source, fig2_tensor(1.0), [0.4, 0.5], cfg)
        assert curve.bound_id == BoundId.R2
        assert curve.points[1].rate == pytest.approx(0.0, abs=1e-12)

    def test_envelope_curve(self, cfg, source):
        """测试 ENV_I2 以 d_max 为零速率顶点"""
        tensor = fig2_tensor(1.0)
        solver = MemorylessSolver(source, tensor, cfg)
        curve = memoryless_curve(source, tensor, np.linspace(0.25, 0.6, 8), cfg, memoryless=solver)
        env = envelope_curve(curve, solver.feasibility.d_max)
        assert env.bound_id == BoundId.ENV_I2
        assert env.is_convex(tol=1e-9)
        assert np.all(env.rates <= curve.rates + 1e-12)


class TestWitnessHelpers:
    """测试见证辅助函数"""

    def test_digest(self):
        """测试摘要确定且区分不同核"""
        a = witness_digest(MemorylessKernel.identity(2))
        assert a == witness_digest(MemorylessKernel.identity(2))
        assert a != witness_digest(MemorylessKernel.constant(2, [0.5, 0.5]))
        assert witness_digest(None) is None

    def test_replay_without_witness(self, source):
        """测试没有见证时返回 None"""
        assert replay_witness(RDPoint(0.3, 0.5), source, fig2_tensor(1.0)) is None

    def test_propagation_keeps_curve_non_increasing(self):
        """测试较小 D 的见证向右传递"""
        points = [RDPoint(0.1, 0.5, witness='a'), RDPoint(0.2, 0.6, witness='b'), RDPoint.infeasible(0.3)]
        out = propagate_witnesses(points)
        assert [p.rate for p in out] == [0.5, 0.5, 0.5]
        assert out[1].witness == 'a'
        assert out[2].meta['propagated_from'] == 0.1
        assert out[2].distortion == 0.3
