import pytest
import numpy as np
from src.inner.ConvexEnvelope import lower_hull, lower_convex_envelope
from src.core.curves.BoundCurve import BoundCurve, BoundId, RDPoint
from src.core.errors.Errors import ValidationError


def make_curve(ds, rs, bound_id=BoundId.R_I2):
    points = []
    for D, R in zip(ds, rs):
        points.append(RDPoint.infeasible(D) if R is None else RDPoint(D, R, witness=f"w{D}"))
    return BoundCurve(bound_id, points, {'bound': bound_id.value})


class TestLowerHull:
    """测试下凸包"""

    def test_removes_points_above_chords(self):
        """测试去掉弦上方的点"""
        hull = lower_hull([(0, 1), (1, 0.9), (2, 0)])
        assert hull == [(0, 1), (2, 0)]

    def test_keeps_convex_points(self):
        """测试凸点全部保留"""
        pts = [(0, 1.0), (1, 0.4), (2, 0.1), (3, 0.0)]
        assert lower_hull(pts) == pts

    def test_collinear_points_dropped(self):
        """测试共线点不作为顶点"""
        assert lower_hull([(0, 2), (1, 1), (2, 0)]) == [(0, 2), (2, 0)]


class TestLowerConvexEnvelope:
    """测试曲线的下凸包络"""

    def test_envelope_below_and_convex(self):
        """测试包络不高于原曲线、凸且不增"""
        rng = np.random.default_rng(0)
        ds = np.linspace(0.1, 1.0, 20)
        rs = np.maximum(0.0, 1.0 - ds) + rng.uniform(0, 0.05, size=ds.size)
        curve = make_curve(ds, rs)
        env = lower_convex_envelope(curve)
        assert env.bound_id == BoundId.ENV_I2
        assert np.all(env.rates <= curve.rates + 1e-15)
        assert env.is_convex(tol=1e-9)
        assert env.is_non_increasing(tol=0.0)

    def test_infeasible_points_preserved(self):
        """测试不可行点原样保留"""
        curve = make_curve([0.1, 0.2, 0.3, 0.4], [None, 0.8, 0.5, 0.1])
        env = lower_convex_envelope(curve)
        assert not env.points[0].feasible
        assert env.points[0] is curve.points[0]

    def test_fewer_than_two_points_unchanged(self):
        """测试可行点少于两个时原样返回"""
        curve = make_curve([0.1, 0.2], [None, 0.5])
        assert lower_convex_envelope(curve) is curve

    def test_zero_from_vertex(self):
        """测试 d_max 处 R = 0 作为凸包顶点"""
        curve = make_curve([0.0, 0.25, 0.5, 0.75], [1.0, 0.8, 0.6, 0.0])
        env = lower_convex_envelope(curve, zero_from=0.5)
        assert env.points[2].rate == pytest.approx(0.0)
        assert env.points[1].rate == pytest.approx(0.5)
        assert env.points[3].rate == pytest.approx(0.0)

    def test_time_sharing_points_lose_witness(self):
        """测试凸包内部点丢弃见证并记录时分端点"""
        curve = make_curve([0.0, 1.0, 2.0], [1.0, 0.9, 0.0], bound_id=BoundId.R_I1)
        env = lower_convex_envelope(curve)
        assert env.bound_id == BoundId.ENV_I1
        middle = env.points[1]
        assert middle.rate == pytest.approx(0.5)
        assert middle.witness is None
        assert middle.meta['time_sharing'] == [0.0, 2.0]
        assert env.points[0].witness == "w0.0"

    def test_r2_maps_to_env_i1(self):
        """测试 R2 的包络标识"""
        curve = make_curve([0.0, 1.0], [1.0, 0.0], bound_id=BoundId.R2)
        assert lower_convex_envelope(curve).bound_id == BoundId.ENV_I1

    def test_metadata(self):
        """测试元数据记录顶点"""
        env = lower_convex_envelope(make_curve([0.0, 1.0, 2.0], [1.0, 0.9, 0.0]))
        assert env.metadata['envelope_of'] == 'R_I2'
        assert env.metadata['hull_vertices'] == [[0.0, 1.0], [2.0, 0.0]]


class TestBoundCurve:
    """测试曲线容器"""

    def test_strictly_increasing(self):
        """测试失真必须严格递增"""
        with pytest.raises(ValidationError):
            make_curve([0.1, 0.1], [0.5, 0.4])

    def test_value_at(self):
        """测试插值与左端之外"""
        curve = make_curve([0.1, 0.2, 0.3], [None, 1.0, 0.0])
        assert curve.value_at(0.25) == pytest.approx(0.5)
        assert curve.value_at(0.15) is None
        assert curve.value_at(0.9) == pytest.approx(0.0)

    def test_parse_bound_id(self):
        """测试界名解析"""
        assert BoundId.parse("r_i2") == BoundId.R_I2
        with pytest.raises(ValidationError):
            BoundId.parse("R9")
