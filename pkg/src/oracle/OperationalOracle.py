import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.Configs import OracleConfig
from ..core.errors.Errors import SizeGuardError, ValidationError
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.SourcePmf import SourcePmf
from ..execution.TaskEngine import TaskEngine

MAX_CODEBOOKS = 10 ** 7
MAX_SOURCE_SEQUENCES = 10 ** 5
MAX_COST_ENTRIES = 5 * 10 ** 7
CHUNK_ENTRIES = 2 * 10 ** 6

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    """有限码长最优失真"""
    d_star: float
    codebook: List[Tuple[int, ...]]
    n: int
    num_messages: int
    y0: int
    codebooks_evaluated: int

    @property
    def rate(self) -> float:
        return math.log2(self.num_messages) / self.n

    def to_dict(self) -> dict:
        return {
            'd_star': self.d_star,
            'codebook': [list(c) for c in self.codebook],
            'n': self.n,
            'num_messages': self.num_messages,
            'rate': self.rate,
            'y0': self.y0,
            'codebooks_evaluated': self.codebooks_evaluated,
        }


def _sequences(alphabet: int, n: int) -> np.ndarray:
    """字典序的全部长度 n 序列"""
    return np.array(list(itertools.product(range(alphabet), repeat=n)), dtype=np.int64).reshape(-1, n)


def sequence_costs(p: SourcePmf, d: DistortionTensor, n: int, y0: int):
    """
    C[i, j] = (1/n) Σ_t d(x_t, y_t, y_{t−1})，y_0 固定；同时返回 xⁿ 的概率权重。
    """
    xs = _sequences(d.x_size, n)
    ys = _sequences(d.y_size, n)
    weights = np.prod(p.probs[xs], axis=1)
    previous = np.concatenate((np.full((ys.shape[0], 1), y0), ys[:, :-1]), axis=1)
    costs = np.zeros((xs.shape[0], ys.shape[0]))
    for t in range(n):
        costs += d.values[xs[:, t][:, None], ys[:, t][None, :], previous[:, t][None, :]]
    return costs / n, weights, ys


def _check_guards(d: DistortionTensor, cfg: OracleConfig) -> None:
    sources = d.x_size ** cfg.n
    outputs = d.y_size ** cfg.n
    if not 0 <= cfg.y0 < d.y_size:
        raise ValidationError(f"y0={cfg.y0} outside the reproduction alphabet of size {d.y_size}")
    if cfg.num_messages > outputs:
        raise ValidationError(f"num_messages={cfg.num_messages} exceeds |Y|^n = {outputs}")
    if sources > MAX_SOURCE_SEQUENCES:
        raise SizeGuardError(f"|X|^n = {sources} exceeds {MAX_SOURCE_SEQUENCES}; use a smaller n")
    codebooks = math.comb(outputs, cfg.num_messages)
    if codebooks > MAX_CODEBOOKS:
        raise SizeGuardError(
            f"{codebooks} codebooks exceed the limit of {MAX_CODEBOOKS}; use a smaller n or num_messages"
        )
    if sources * outputs > MAX_COST_ENTRIES:
        raise SizeGuardError(f"cost table of {sources * outputs} entries is too large; use a smaller n")


def _search_prefix(costs: np.ndarray, weights: np.ndarray, first: int, M: int) -> Tuple[float, Tuple[int, ...], int]:
    """枚举以 first 为最小码字的全部码本"""
    total = costs.shape[1]
    batch = max(1, CHUNK_ENTRIES // (costs.shape[0] * M))
    rest = itertools.combinations(range(first + 1, total), M - 1)
    best_value, best_book, evaluated = np.inf, None, 0
    while True:
        block = list(itertools.islice(rest, batch))
        if not block:
            break
        books = np.array([(first,) + b for b in block], dtype=np.int64)
        # 每个信源序列选失真最小的码字
        values = weights @ costs[:, books].min(axis=2)
        evaluated += len(books)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value, best_book = float(values[i]), tuple(int(v) for v in books[i])
    return best_value, best_book, evaluated


def operational_distortion(p: SourcePmf, d: DistortionTensor, cfg: OracleConfig,
                           engine: Optional[TaskEngine] = None) -> OracleResult:
    """
    全部码本（无序组合）上的 E[min_m d̄(Xⁿ, yⁿ(m))] 的精确最小值。
    对固定码本最优编码器就是逐序列取最小失真码字，因此穷举码本是精确的。
    """
    d.check_source(p)
    _check_guards(d, cfg)
    costs, weights, ys = sequence_costs(p, d, cfg.n, cfg.y0)
    M = cfg.num_messages
    firsts = list(range(ys.shape[0] - M + 1))
    engine = engine or TaskEngine()
    parts = engine.map_sync(lambda f: _search_prefix(costs, weights, f, M), firsts, label="codebook")

    best_value, best_book = min(((v, b) for v, b, _ in parts if b is not None), key=lambda t: (t[0], t[1]))
    # 补偿求和给出与枚举顺序无关的最终值
    d_star = math.fsum(float(w) * float(c) for w, c in zip(weights, costs[:, list(best_book)].min(axis=1)))
    evaluated = sum(e for _, _, e in parts)
    logger.info(f"oracle n={cfg.n} M={M} y0={cfg.y0}: D*={d_star:.12g} over {evaluated} codebooks")
    return OracleResult(
        d_star=d_star,
        codebook=[tuple(int(s) for s in ys[j]) for j in best_book],
        n=cfg.n,
        num_messages=M,
        y0=cfg.y0,
        codebooks_evaluated=evaluated,
    )


def viterbi_min_distortion(p: SourcePmf, d: DistortionTensor, n: int, y0: int = 0) -> float:
    """完整码本下的值：对每个 xⁿ 用动态规划求最小平均失真再按概率加权"""
    d.check_source(p)
    if n < 1:
        raise ValidationError(f"blocklength must be at least 1, got {n}")
    if d.x_size ** n > MAX_SOURCE_SEQUENCES:
        raise SizeGuardError(f"|X|^n = {d.x_size ** n} exceeds {MAX_SOURCE_SEQUENCES}")
    xs = _sequences(d.x_size, n)
    weights = np.prod(p.probs[xs], axis=1)
    # state[i, y]：前 t 步以 y 结尾的最小累计失真
    state = d.values[xs[:, 0], :, y0]
    for t in range(1, n):
        # step[i, y, y'] = d(x_t, y, y')
        step = d.values[xs[:, t]]
        state = (step + state[:, None, :]).min(axis=2)
    return math.fsum(float(w) * float(v) for w, v in zip(weights, state.min(axis=1) / n))


@dataclass
class OracleTrend:
    rate: float
    points: List[Tuple[int, int, float]]  # (n, M, D*)
    non_increasing: bool

    def to_dict(self) -> dict:
        return {
            'rate': self.rate,
            'points': [{'n': n, 'num_messages': m, 'd_star': v} for n, m, v in self.points],
            'non_increasing': self.non_increasing,
        }


def oracle_trend(p: SourcePmf, d: DistortionTensor, ns: Sequence[int], rate: float, y0: int = 0,
                 engine: Optional[TaskEngine] = None) -> OracleTrend:
    """固定速率 R 下 M = 2^⌊nR⌋ 的 D*(n)"""
    points = []
    for n in ns:
        M = min(2 ** int(math.floor(n * rate + 1e-12)), d.y_size ** n)
        result = operational_distortion(p, d, OracleConfig(n=n, num_messages=max(1, M), y0=y0), engine)
        points.append((n, result.num_messages, result.d_star))
    values = [v for _, _, v in points]
    non_increasing = all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    if not non_increasing:
        logger.warning(f"operational distortion is not monotone in n at rate {rate}: {values}")
    return OracleTrend(rate, points, non_increasing)
